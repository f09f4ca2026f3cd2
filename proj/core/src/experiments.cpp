#include "sixlasso/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <thread>
#include <utility>

#include "sixlasso/error.hpp"

namespace sixlasso {

namespace {

// Stream tags for derive_seed. Trial ids are small, so the signal tag cannot
// collide with one.
constexpr std::uint64_t kSignalStream = 0x5349474e414c0000ULL;
constexpr std::uint64_t kTrainStream = 1;
constexpr std::uint64_t kTestStream = 2;
constexpr std::uint64_t kTrialSignalStream = 3;

double metric_value(const TrialRecord& r, std::size_t index) {
  switch (index) {
    case 0: return r.metrics.direction_error;
    case 1: return r.metrics.raw_l2_error;
    case 2: return r.metrics.norm_beta_hat;
    case 3: return r.metrics.norm_gap;
    case 4: return r.metrics.support_precision;
    case 5: return r.metrics.support_recall;
    case 6: return r.metrics.test_accuracy;
    case 7: return static_cast<double>(r.iterations);
    case 8: return r.converged ? 1.0 : 0.0;
    default: return r.runtime_ms;
  }
}

}  // namespace

std::string_view to_string(Estimator e) noexcept {
  return e == Estimator::VanillaLasso ? "lasso" : "pv";
}

std::optional<Estimator> parse_estimator(std::string_view tag) noexcept {
  if (tag == "lasso") return Estimator::VanillaLasso;
  if (tag == "pv") return Estimator::PVLinear;
  return std::nullopt;
}

std::string_view to_string(RadiusKind kind) noexcept {
  switch (kind) {
    case RadiusKind::SqrtS: return "sqrt_s";
    case RadiusKind::TwoSqrtSOverLambda: return "two_sqrt_s_over_lambda";
    case RadiusKind::RawS: return "raw_s";
    case RadiusKind::Explicit: return "explicit";
  }
  return "unknown";
}

std::optional<RadiusKind> parse_radius_kind(std::string_view tag) noexcept {
  if (tag == "sqrt_s") return RadiusKind::SqrtS;
  if (tag == "two_sqrt_s_over_lambda") return RadiusKind::TwoSqrtSOverLambda;
  if (tag == "raw_s") return RadiusKind::RawS;
  return std::nullopt;
}

double RadiusRule::resolve(std::size_t s, double lambda) const {
  const double root_s = std::sqrt(static_cast<double>(s));
  switch (kind) {
    case RadiusKind::SqrtS: return root_s;
    case RadiusKind::TwoSqrtSOverLambda: return 2.0 * root_s / lambda;
    case RadiusKind::RawS: return static_cast<double>(s);
    case RadiusKind::Explicit: return value;
  }
  return root_s;
}

void SweepSpec::validate() const {
  if (n_grid.empty()) throw Error(ErrorCode::InvalidArgument, "n_grid must not be empty");
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] == 0) throw Error(ErrorCode::InvalidArgument, "n_grid entries must be >= 1");
    if (i > 0 && n_grid[i] <= n_grid[i - 1]) {
      throw Error(ErrorCode::InvalidArgument, "n_grid must be strictly ascending");
    }
  }
  if (reps == 0) throw Error(ErrorCode::InvalidArgument, "reps must be >= 1");
  if (s == 0 || s > p) {
    throw Error(ErrorCode::InvalidSparsity, "sparsity must satisfy 1 <= s <= p");
  }
  if (estimators.empty()) throw Error(ErrorCode::InvalidArgument, "no estimators selected");
  for (std::size_t i = 0; i < estimators.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (estimators[i] == estimators[j]) {
        throw Error(ErrorCode::InvalidArgument, "estimators must not repeat");
      }
    }
  }
  if (test_n == 0) throw Error(ErrorCode::InvalidArgument, "test_n must be >= 1");
  if (link == LinkKind::Tabulated) {
    throw Error(ErrorCode::InvalidArgument, "sweeps support the built-in links only");
  }
  if (radius_rule.kind == RadiusKind::Explicit && !(radius_rule.value > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "explicit radius must be positive");
  }
  solver.validate();
}

std::size_t trial_id_of(const SweepSpec& spec, const TrialCell& cell) noexcept {
  return (cell.n_index * spec.reps + cell.rep) * spec.estimators.size() + cell.estimator_index;
}

TrialCell cell_of(const SweepSpec& spec, std::size_t trial_id) noexcept {
  const std::size_t e = spec.estimators.size();
  TrialCell cell;
  cell.estimator_index = trial_id % e;
  cell.rep = (trial_id / e) % spec.reps;
  cell.n_index = trial_id / (e * spec.reps);
  return cell;
}

TrueSignal sweep_signal(const SweepSpec& spec) {
  return make_signal(spec.p, spec.s, spec.signal_mode, derive_seed(spec.base_seed, kSignalStream));
}

TrialRecord run_trial(const SweepSpec& spec, const TrialCell& cell) {
  const auto started = std::chrono::steady_clock::now();

  TrialRecord rec;
  rec.trial_id = trial_id_of(spec, cell);
  rec.seed = derive_seed(spec.base_seed, rec.trial_id);
  rec.n = spec.n_grid.at(cell.n_index);
  rec.p = spec.p;
  rec.s = spec.s;
  rec.link = spec.link;
  rec.estimator = spec.estimators.at(cell.estimator_index);

  double lambda = 0.0;
  try {
    const LinkFunction link(spec.link);
    const TrueSignal signal =
        spec.regenerate_signal
            ? make_signal(spec.p, spec.s, spec.signal_mode,
                          derive_seed(rec.seed, kTrialSignalStream))
            : sweep_signal(spec);
    lambda = compute_lambda(link).value;
    rec.radius = spec.radius_rule.resolve(spec.s, lambda);

    const Dataset train = generate_dataset(signal, rec.n, link, derive_seed(rec.seed, kTrainStream));
    Dataset test = generate_dataset(signal, spec.test_n, link, derive_seed(rec.seed, kTestStream));
    if (!link.is_binary()) {
      test.y = test.y.unaryExpr([](double v) { return v >= 0.0 ? 1.0 : -1.0; });
    }

    Vector beta_hat;
    if (rec.estimator == Estimator::VanillaLasso) {
      FitResult fit = fit_lasso(train, rec.radius, spec.solver);
      rec.iterations = fit.iterations;
      rec.converged = fit.converged;
      beta_hat = std::move(fit.beta_hat);
    } else {
      beta_hat = pv_linear_fit(train, rec.radius);
      rec.converged = true;
    }

    TrialMetrics& m = rec.metrics;
    m.direction_error = direction_error(beta_hat, signal.beta);
    m.raw_l2_error = (beta_hat - signal.beta).norm();
    m.norm_beta_hat = beta_hat.norm();
    m.norm_gap = norm_gap(beta_hat, lambda);
    const SupportMetrics support =
        support_metrics(beta_hat, signal, default_support_threshold(beta_hat));
    m.support_precision = support.precision;
    m.support_recall = support.recall;
    m.test_accuracy = classify_accuracy(beta_hat, test);
  } catch (const Error&) {
    // Scored as the zero estimate.
    rec.converged = false;
    rec.metrics = TrialMetrics{};
    rec.metrics.direction_error = 2.0;
    rec.metrics.raw_l2_error = 1.0;
    rec.metrics.norm_gap = -lambda;
    rec.metrics.support_precision = 1.0;
  }

  rec.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
          .count();
  return rec;
}

std::vector<TrialRecord> run_sweep(const SweepSpec& spec, std::size_t threads) {
  spec.validate();
  const std::size_t total = spec.trial_count();
  std::vector<TrialRecord> records(total);

  if (threads <= 1 || total <= 1) {
    for (std::size_t id = 0; id < total; ++id) records[id] = run_trial(spec, cell_of(spec, id));
    return records;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> workers;
    const std::size_t count = std::min(threads, total);
    workers.reserve(count);
    for (std::size_t w = 0; w < count; ++w) {
      workers.emplace_back([&] {
        for (std::size_t id = next++; id < total; id = next++) {
          try {
            records[id] = run_trial(spec, cell_of(spec, id));
          } catch (...) {
            const std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

std::size_t threads_from_environment() {
  if (const char* env = std::getenv("SIXLASSO_THREADS")) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return static_cast<std::size_t>(value);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

const std::vector<std::string>& summary_metric_names() {
  static const std::vector<std::string> names{
      "direction_error", "raw_l2_error",   "norm_beta_hat", "norm_gap",  "support_precision",
      "support_recall",  "test_accuracy",  "iterations",    "converged", "runtime_ms"};
  return names;
}

double lower_quantile(std::vector<double> values, double q) {
  if (values.empty()) throw Error(ErrorCode::EmptyRecords, "quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const auto index =
      static_cast<std::size_t>(std::floor(q * static_cast<double>(values.size() - 1)));
  return values[std::min(index, values.size() - 1)];
}

std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records) {
  if (records.empty()) throw Error(ErrorCode::EmptyRecords, "no records to summarize");

  std::map<std::pair<Estimator, std::size_t>, std::vector<const TrialRecord*>> cells;
  for (const auto& r : records) cells[{r.estimator, r.n}].push_back(&r);

  const auto& names = summary_metric_names();
  std::vector<SummaryRow> rows;
  rows.reserve(cells.size() * names.size());
  for (const auto& [key, members] : cells) {
    for (std::size_t m = 0; m < names.size(); ++m) {
      std::vector<double> values;
      values.reserve(members.size());
      for (const auto* r : members) values.push_back(metric_value(*r, m));
      SummaryRow row;
      row.estimator = key.first;
      row.n = key.second;
      row.metric = names[m];
      row.q25 = lower_quantile(values, 0.25);
      row.median = lower_quantile(values, 0.5);
      row.q75 = lower_quantile(values, 0.75);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace sixlasso
