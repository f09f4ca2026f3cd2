#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sixlasso/link.hpp"
#include "sixlasso/metrics.hpp"
#include "sixlasso/model.hpp"
#include "sixlasso/solver.hpp"

namespace sixlasso {

enum class Estimator { VanillaLasso, PVLinear };

std::string_view to_string(Estimator e) noexcept;
/// "lasso" or "pv".
std::optional<Estimator> parse_estimator(std::string_view tag) noexcept;

enum class RadiusKind { SqrtS, TwoSqrtSOverLambda, RawS, Explicit };

struct RadiusRule {
  RadiusKind kind = RadiusKind::SqrtS;
  double value = 0.0;  // used by Explicit only

  double resolve(std::size_t s, double lambda) const;
};

std::string_view to_string(RadiusKind kind) noexcept;
/// "sqrt_s", "two_sqrt_s_over_lambda", "raw_s".
std::optional<RadiusKind> parse_radius_kind(std::string_view tag) noexcept;

struct SweepSpec {
  std::size_t p = 1200;
  std::size_t s = 10;
  std::vector<std::size_t> n_grid{200, 600, 1000, 1400, 1800, 2200, 2600, 3000};
  LinkKind link = LinkKind::Logistic;
  RadiusRule radius_rule{};
  std::size_t reps = 10;
  Seed base_seed = 0;
  SignalMode signal_mode = SignalMode::RandomMagnitude;
  /// Draw a fresh beta* for every trial instead of one per sweep.
  bool regenerate_signal = false;
  std::vector<Estimator> estimators{Estimator::VanillaLasso};
  std::size_t test_n = 10'000;
  SolverConfig solver{};

  /// Throws InvalidArgument on a malformed grid or reps == 0; InvalidSparsity unless 1 <= s <= p.
  void validate() const;

  std::size_t trial_count() const noexcept {
    return n_grid.size() * reps * estimators.size();
  }
};

struct TrialRecord {
  std::size_t trial_id = 0;
  Seed seed = 0;
  std::size_t n = 0;
  std::size_t p = 0;
  std::size_t s = 0;
  LinkKind link = LinkKind::Logistic;
  Estimator estimator = Estimator::VanillaLasso;
  double radius = 0.0;
  TrialMetrics metrics{};
  std::size_t iterations = 0;
  bool converged = false;
  double runtime_ms = 0.0;
};

/// Position of a trial inside the sweep grid.
struct TrialCell {
  std::size_t n_index = 0;
  std::size_t rep = 0;
  std::size_t estimator_index = 0;
};

/// trial_id enumerates (n_index, rep, estimator) in row-major order.
std::size_t trial_id_of(const SweepSpec& spec, const TrialCell& cell) noexcept;
TrialCell cell_of(const SweepSpec& spec, std::size_t trial_id) noexcept;

/// The beta* shared by every trial of the sweep when regenerate_signal is off.
TrueSignal sweep_signal(const SweepSpec& spec);

/// Runs generate -> fit -> measure for one cell. Solver or model failures are
/// folded into the record (direction_error = 2, converged = false) rather
/// than thrown.
TrialRecord run_trial(const SweepSpec& spec, const TrialCell& cell);

/// Every trial of the sweep, sorted by trial_id. `threads` == 0 runs serially;
/// the output does not depend on the thread count.
std::vector<TrialRecord> run_sweep(const SweepSpec& spec, std::size_t threads = 0);

/// Thread count from SIXLASSO_THREADS, falling back to the hardware count.
std::size_t threads_from_environment();

struct SummaryRow {
  Estimator estimator = Estimator::VanillaLasso;
  std::size_t n = 0;
  std::string metric;
  double q25 = 0.0;
  double median = 0.0;
  double q75 = 0.0;
};

/// Names of the summarized metrics, in output order.
const std::vector<std::string>& summary_metric_names();

/// Lower-interpolation quantile: sorted[floor(q * (m - 1))].
double lower_quantile(std::vector<double> values, double q);

/// Quartiles of every metric per (estimator, n), ordered by estimator then n.
/// Throws EmptyRecords.
std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records);

}  // namespace sixlasso
