// Acceptance suite. Prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sixlasso/experiments.hpp>
#include <sixlasso/link.hpp>
#include <sixlasso/metrics.hpp>
#include <sixlasso/model.hpp>
#include <sixlasso/oracle.hpp>
#include <sixlasso/projection.hpp>
#include <sixlasso/report.hpp>
#include <sixlasso/solver.hpp>

#include "support/random.hpp"

using namespace sixlasso;
using Clock = std::chrono::steady_clock;

namespace {

// Logistic link constant, adaptive quadrature to full double precision.
constexpr double kLogisticLambda = 0.41324192828381406;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

double median(std::vector<double> v) { return lower_quantile(std::move(v), 0.5); }

Outcome criterion_lambda() {
  Outcome o;
  const auto start = Clock::now();
  const double linear = compute_lambda(LinkFunction::linear()).value;
  const double sign = compute_lambda(LinkFunction::sign()).value;
  const double probit = compute_lambda(LinkFunction::probit()).value;
  const double logistic = compute_lambda(LinkFunction::logistic()).value;
  const double quad_time = seconds_since(start);
  const auto mc = compute_lambda(LinkFunction::logistic(), LambdaMethod::MonteCarlo, 10'000'000, 2024);
  const double total = seconds_since(start);

  const double e_lin = std::abs(linear - 1.0);
  const double e_sign = std::abs(sign - std::sqrt(2.0 / M_PI));
  const double e_probit = std::abs(probit - 1.0 / std::sqrt(M_PI));
  const double z = std::abs(logistic - mc.value) / mc.std_error;
  o.pass = e_lin <= 1e-12 && e_sign <= 1e-8 && e_probit <= 1e-8 && z <= 3.0 &&
           std::abs(logistic - kLogisticLambda) <= 1e-8 && total < 1.0;
  o.detail = "linear err " + fmt("%.2e", e_lin) + ", sign err " + fmt("%.2e", e_sign) +
             ", probit err " + fmt("%.2e", e_probit) + ", logistic " + fmt("%.12f", logistic) +
             " vs MC " + fmt("%.6f", mc.value) + " (" + fmt("%.2f", z) + " SE), quadrature " +
             fmt("%.4f", quad_time) + " s, total " + fmt("%.3f", total) + " s";
  return o;
}

Outcome criterion_projection() {
  Outcome o;
  const auto start = Clock::now();
  std::mt19937_64 rng(77);
  double worst_oracle = 0.0;
  std::size_t violations = 0;
  for (int c = 0; c < 1000; ++c) {
    const auto p = static_cast<Eigen::Index>(testing::uniform_size(rng, 1, 50));
    const Vector v = testing::random_vector(rng, p, testing::uniform(rng, 0.1, 5.0));
    const Vector w = testing::random_vector(rng, p, testing::uniform(rng, 0.1, 5.0));
    const double r = testing::uniform(rng, 0.0, 1.2) * v.lpNorm<1>();
    const Vector pv = project_l1_ball(v, r);
    const Vector pw = project_l1_ball(w, r);
    worst_oracle = std::max(worst_oracle, (pv - oracle::oracle_project_l1(v, r)).lpNorm<Eigen::Infinity>());
    const bool feasible = pv.lpNorm<1>() <= r * (1.0 + 1e-12) + 1e-12;
    const bool idempotent = (project_l1_ball(pv, r) - pv).lpNorm<Eigen::Infinity>() <= 1e-12 * (1.0 + r);
    const bool contractive = (pv - pw).norm() <= (v - w).norm() * (1.0 + 1e-12) + 1e-12;
    if (!feasible || !idempotent || !contractive) ++violations;
  }
  const double t = seconds_since(start);
  o.pass = worst_oracle <= 1e-8 && violations == 0 && t < 5.0;
  o.detail = "max |solver - oracle| " + fmt("%.2e", worst_oracle) + ", property violations " +
             std::to_string(violations) + ", " + fmt("%.3f", t) + " s";
  return o;
}

Outcome criterion_solver() {
  Outcome o;
  const auto start = Clock::now();
  std::mt19937_64 rng(31);
  std::size_t above_bound = 0;
  std::size_t bad_residual = 0;
  std::size_t unconverged = 0;
  double worst_excess = -1e300;
  double worst_residual = 0.0;
  const oracle::GridSpec grid{0.01, 3};
  for (int c = 0; c < 50; ++c) {
    const auto p = static_cast<Eigen::Index>(testing::uniform_size(rng, 1, 3));
    const auto n = static_cast<Eigen::Index>(testing::uniform_size(rng, 4, 40));
    const Matrix X = testing::random_matrix(rng, n, p);
    const Vector y = testing::random_vector(rng, n);
    const double radius = testing::uniform(rng, 0.05, 1.5);
    const auto fit = fit_lasso(X, y, radius);
    const auto best = oracle::oracle_lasso_small(X, y, radius, grid);
    const Vector grad = 2.0 / static_cast<double>(n) * X.transpose() * (X * fit.beta_hat - y);
    const double bound = oracle::grid_suboptimality_bound(grad.norm(), best.lipschitz,
                                                          static_cast<std::size_t>(p), grid.step);
    worst_excess = std::max(worst_excess, fit.objective - best.objective);
    if (fit.objective > best.objective + bound) ++above_bound;
    if (!fit.converged) ++unconverged;
    if (fit.converged) {
      worst_residual = std::max(worst_residual, fit.residual);
      if (fit.residual > 1e-6) ++bad_residual;
    }
  }
  const double t = seconds_since(start);
  o.pass = above_bound == 0 && bad_residual == 0 && t < 60.0;
  o.detail = "above oracle+bound " + std::to_string(above_bound) + ", max(fit - grid) " +
             fmt("%.2e", worst_excess) + ", max residual " + fmt("%.2e", worst_residual) +
             ", unconverged " + std::to_string(unconverged) + ", " + fmt("%.2f", t) + " s";
  return o;
}

struct ReferenceSweep {
  std::vector<TrialRecord> records;
  std::vector<std::size_t> n_grid;
  double seconds = 0.0;
  double lasso_seconds = 0.0;

  std::vector<double> column(Estimator e, std::size_t n,
                             const std::function<double(const TrialRecord&)>& get) const {
    std::vector<double> out;
    for (const auto& r : records) {
      if (r.estimator == e && r.n == n) out.push_back(get(r));
    }
    return out;
  }
};

ReferenceSweep run_reference_sweep() {
  SweepSpec spec;  // the default protocol at full scale
  spec.p = 1200;
  spec.s = 10;
  spec.n_grid = {200, 600, 1000, 1400, 1800, 2200, 2600, 3000};
  spec.link = LinkKind::Logistic;
  spec.radius_rule = {RadiusKind::SqrtS, 0.0};
  spec.reps = 10;
  spec.estimators = {Estimator::VanillaLasso, Estimator::PVLinear};
  ReferenceSweep sweep;
  sweep.n_grid = spec.n_grid;
  const auto start = Clock::now();
  sweep.records = run_sweep(spec, 1);
  sweep.seconds = seconds_since(start);
  for (const auto& r : sweep.records) {
    if (r.estimator == Estimator::VanillaLasso) sweep.lasso_seconds += r.runtime_ms / 1000.0;
  }
  return sweep;
}

Outcome criterion_figure(const ReferenceSweep& sweep) {
  Outcome o;
  std::vector<double> medians;
  for (const auto n : sweep.n_grid) {
    medians.push_back(median(sweep.column(Estimator::VanillaLasso, n,
                                          [](const TrialRecord& r) { return r.metrics.direction_error; })));
  }
  bool monotone = true;
  for (std::size_t i = 0; i + 2 < medians.size(); ++i) {
    const double a = 0.5 * (medians[i] + medians[i + 1]);
    const double b = 0.5 * (medians[i + 1] + medians[i + 2]);
    if (b > a) monotone = false;
  }
  const double ratio = medians.back() / medians.front();
  o.pass = ratio <= 0.5 && monotone && sweep.seconds <= 15 * 60.0;
  std::ostringstream curve;
  for (std::size_t i = 0; i < medians.size(); ++i) {
    curve << (i ? " " : "") << sweep.n_grid[i] << ":" << fmt("%.3f", medians[i]);
  }
  o.detail = "medians " + curve.str() + ", ratio " + fmt("%.3f", ratio) + ", smoothed " +
             (monotone ? "non-increasing" : "increasing somewhere") + ", sweep " +
             fmt("%.1f", sweep.seconds) + " s single-threaded (lasso fits " +
             fmt("%.1f", sweep.lasso_seconds) + " s)";
  return o;
}

Outcome criterion_norm(const ReferenceSweep& sweep, bool direction_ok) {
  Outcome o;
  const std::size_t n = sweep.n_grid.back();
  const double norm = median(sweep.column(Estimator::VanillaLasso, n,
                                          [](const TrialRecord& r) { return r.metrics.norm_beta_hat; }));
  const double raw = median(sweep.column(Estimator::VanillaLasso, n,
                                         [](const TrialRecord& r) { return r.metrics.raw_l2_error; }));
  const double lambda = compute_lambda(LinkFunction::logistic()).value;
  o.pass = std::abs(norm - lambda) <= 0.15 && raw >= 0.3 && direction_ok;
  o.detail = "median ||beta_hat|| " + fmt("%.4f", norm) + " vs lambda " + fmt("%.4f", lambda) +
             ", median raw error " + fmt("%.4f", raw) + ", direction criterion " +
             (direction_ok ? "met" : "not met");
  return o;
}

Outcome criterion_baseline(const ReferenceSweep& sweep) {
  Outcome o;
  const std::size_t n = sweep.n_grid.back();
  const auto get = [](const TrialRecord& r) { return r.metrics.direction_error; };
  const double lasso = median(sweep.column(Estimator::VanillaLasso, n, get));
  const double pv = median(sweep.column(Estimator::PVLinear, n, get));
  o.pass = pv <= 2.0 * lasso && lasso <= 2.0 * pv;
  o.detail = "median direction error at n=" + std::to_string(n) + ": pv " + fmt("%.4f", pv) +
             ", lasso " + fmt("%.4f", lasso) + ", ratio " + fmt("%.3f", pv / lasso);
  return o;
}

Outcome criterion_sphere() {
  Outcome o;
  const auto start = Clock::now();
  const auto link = LinkFunction::logistic();
  const double lambda = compute_lambda(link).value;
  constexpr std::size_t p = 2;
  constexpr std::size_t s = 2;
  const oracle::GridSpec grid{0.001, 3};
  const std::vector<double> ks{0.7 * lambda, lambda, 1.3 * lambda};
  std::vector<std::vector<double>> small(ks.size());
  std::vector<std::vector<double>> large(ks.size());
  for (Seed seed = 0; seed < 20; ++seed) {
    const auto signal = make_signal(p, s, SignalMode::RandomMagnitude, derive_seed(seed, 0));
    for (const std::size_t n : {std::size_t{100}, std::size_t{5000}}) {
      const auto data = generate_dataset(signal, n, link, derive_seed(seed, n));
      const Vector a =
          oracle::oracle_sphere_lasso(data, 2.0 * std::sqrt(static_cast<double>(s)) / lambda, 1.0, grid).beta;
      for (std::size_t j = 0; j < ks.size(); ++j) {
        const Vector b =
            oracle::oracle_sphere_lasso(data, std::sqrt(static_cast<double>(s)), ks[j], grid).beta / ks[j];
        (n == 100 ? small : large)[j].push_back((a - b).norm());
      }
    }
  }
  const double t = seconds_since(start);
  o.pass = t < 120.0;
  std::ostringstream detail;
  for (std::size_t j = 0; j < ks.size(); ++j) {
    const double m100 = median(small[j]);
    const double m5000 = median(large[j]);
    const bool ok = m5000 <= 0.5 * m100;
    o.pass = o.pass && ok;
    detail << "k=" << fmt("%.2f", ks[j] / lambda) << "lambda: " << fmt("%.4f", m100) << " -> "
           << fmt("%.4f", m5000) << "; ";
  }
  o.detail = detail.str() + fmt("%.2f", t) + " s";
  return o;
}

Outcome criterion_moment() {
  Outcome o;
  const auto start = Clock::now();
  double worst = 0.0;
  std::ostringstream detail;
  for (const auto kind : {LinkKind::Linear, LinkKind::Logistic, LinkKind::Probit, LinkKind::Sign}) {
    const auto link = LinkFunction(kind);
    const double lambda = compute_lambda(link).value;
    const auto signal = make_signal(5, 3, SignalMode::RandomMagnitude, 17);
    const auto data = generate_dataset(signal, 100'000, link, 23);
    const Vector moment = data.X.transpose() * data.y / static_cast<double>(data.n());
    const double err = (moment - lambda * signal.beta).norm();
    worst = std::max(worst, err);
    detail << to_string(kind) << " " << fmt("%.4f", err) << ", ";
  }
  const double t = seconds_since(start);
  o.pass = worst <= 0.02 && t < 10.0;
  o.detail = detail.str() + fmt("%.2f", t) + " s";
  return o;
}

std::string records_without_runtime(const std::vector<TrialRecord>& records) {
  std::ostringstream out;
  report::write_records_csv(out, records);
  std::istringstream in(out.str());
  std::string line;
  std::string result;
  while (std::getline(in, line)) result += line.substr(0, line.rfind(',')) + '\n';
  return result;
}

Outcome criterion_determinism() {
  Outcome o;
  SweepSpec spec;
  spec.p = 200;
  spec.s = 5;
  spec.n_grid = {100, 300};
  spec.reps = 3;
  spec.base_seed = 99;
  spec.test_n = 1000;
  spec.estimators = {Estimator::VanillaLasso, Estimator::PVLinear};
  const auto reference = records_without_runtime(run_sweep(spec, 1));
  bool same = true;
  std::string counts;
  for (const char* threads : {"1", "2", "4", "8"}) {
    setenv("SIXLASSO_THREADS", threads, 1);
    const auto again = records_without_runtime(run_sweep(spec, threads_from_environment()));
    same = same && again == reference;
    counts += std::string(counts.empty() ? "" : ",") + threads;
  }
  unsetenv("SIXLASSO_THREADS");
  o.pass = same;
  o.detail = std::string("records ") + (same ? "identical" : "differ") +
             " modulo runtime_ms across SIXLASSO_THREADS=" + counts;
  return o;
}

}  // namespace

int main() {
  int failures = 0;
  const auto report_line = [&](int id, const char* name, const Outcome& o) {
    if (!o.pass) ++failures;
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
    std::fflush(stdout);
  };
  const auto guarded = [](const std::function<Outcome()>& body) {
    try {
      return body();
    } catch (const std::exception& e) {
      return Outcome{false, std::string("threw: ") + e.what()};
    }
  };

  report_line(1, "link constants", guarded(criterion_lambda));
  report_line(2, "projection certification", guarded(criterion_projection));
  report_line(3, "solver optimality", guarded(criterion_solver));

  ReferenceSweep sweep;
  Outcome figure;
  try {
    sweep = run_reference_sweep();
    figure = criterion_figure(sweep);
    report_line(4, "direction error curve", figure);
    report_line(5, "norm concentration", criterion_norm(sweep, figure.pass));
  } catch (const std::exception& e) {
    report_line(4, "direction error curve", {false, std::string("threw: ") + e.what()});
    report_line(5, "norm concentration", {false, "sweep unavailable"});
  }

  report_line(6, "sphere program relationship", guarded(criterion_sphere));
  report_line(7, "moment identity", guarded(criterion_moment));
  report_line(8, "determinism", guarded(criterion_determinism));

  if (sweep.records.empty()) {
    report_line(9, "baseline sanity", {false, "sweep unavailable"});
  } else {
    report_line(9, "baseline sanity", guarded([&] { return criterion_baseline(sweep); }));
  }

  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
