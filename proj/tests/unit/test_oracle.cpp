#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <sixlasso/error.hpp>
#include <sixlasso/oracle.hpp>
#include <sixlasso/solver.hpp>

#include "support/random.hpp"

using namespace sixlasso;
using namespace sixlasso::oracle;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const double x : xs) v(i++) = x;
  return v;
}

TrueSignal fixed_signal(Vector beta) {
  TrueSignal sig;
  sig.p = static_cast<std::size_t>(beta.size());
  for (Eigen::Index j = 0; j < beta.size(); ++j) {
    if (beta(j) != 0.0) sig.support.push_back(static_cast<std::size_t>(j));
  }
  sig.s = sig.support.size();
  sig.beta = std::move(beta);
  return sig;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected sixlasso::Error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("oracle_project_l1 examples") {
  CHECK((oracle_project_l1(vec({3.0, 1.0}), 2.0) - vec({2.0, 0.0})).norm() <= 1e-12);
  CHECK(oracle_project_l1(vec({1.0, 1.0, 1.0}), 3.0) == vec({1.0, 1.0, 1.0}));
  CHECK((oracle_project_l1(vec({-4.0, 0.0}), 1.0) - vec({-1.0, 0.0})).norm() <= 1e-12);
  CHECK(oracle_project_l1(vec({2.0, -2.0}), 0.0).isZero(0.0));
  CHECK(code_of([] { oracle_project_l1(vec({1.0}), -1.0); }) == ErrorCode::NegativeRadius);
}

TEST_CASE("GramSummary objective matches the direct residual") {
  std::mt19937_64 rng(1);
  const Matrix X = testing::random_matrix(rng, 25, 3);
  const Vector y = testing::random_vector(rng, 25);
  const auto summary = GramSummary::from(X, y);
  const Vector b = vec({0.3, -0.1, 0.7});
  CHECK(summary.objective(b) == doctest::Approx((y - X * b).squaredNorm() / 25.0).epsilon(1e-12));
}

TEST_CASE("oracle_lasso_small") {
  const GridSpec grid{0.01, 3};
  SUBCASE("noiseless interpolation") {
    const auto data = generate_dataset(fixed_signal(vec({0.5, 0.0})), 60, LinkFunction::linear(), 3);
    const auto res = oracle_lasso_small(data, 1.0, grid);
    CHECK(std::abs(res.beta(0) - 0.5) <= 0.01);
    CHECK(std::abs(res.beta(1)) <= 0.01);
  }
  SUBCASE("collapsed radius") {
    const auto data = generate_dataset(fixed_signal(vec({0.6, 0.8})), 30, LinkFunction::logistic(), 3);
    const auto res = oracle_lasso_small(data, 1e-12, grid);
    CHECK(res.beta.isZero(0.0));
  }
  SUBCASE("mutual bound with the solver at p = 2") {
    const auto sig = make_signal(2, 2, SignalMode::RandomMagnitude, 6);
    const auto data = generate_dataset(sig, 100, LinkFunction::logistic(), 7);
    const auto res = oracle_lasso_small(data, 1.0, grid);
    const auto fit = fit_lasso(data, 1.0);
    const Vector grad = -2.0 / 100.0 * data.X.transpose() * (data.y - data.X * fit.beta_hat);
    const double bound = grid_suboptimality_bound(grad.norm(), res.lipschitz, 2, grid.step);
    CHECK(res.objective <= fit.objective + bound);
    CHECK(fit.objective <= res.objective + bound);
    CHECK(res.beta.lpNorm<1>() <= 1.0 + 1e-12);
  }
  SUBCASE("dimension cap") {
    std::mt19937_64 rng(2);
    const Matrix X = testing::random_matrix(rng, 10, 4);
    CHECK(code_of([&] { oracle_lasso_small(X, Vector::Ones(10), 1.0, grid); }) ==
          ErrorCode::DimensionTooLarge);
  }
  SUBCASE("grid step validation") {
    std::mt19937_64 rng(2);
    const Matrix X = testing::random_matrix(rng, 10, 2);
    CHECK(code_of([&] { oracle_lasso_small(X, Vector::Ones(10), 1.0, GridSpec{0.5, 3}); }) ==
          ErrorCode::InvalidArgument);
  }
}

TEST_CASE("grid refinement never worsens the optimum") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 5; ++trial) {
    const auto sig = make_signal(2, 2, SignalMode::RandomMagnitude, rng());
    const auto data = generate_dataset(sig, 50, LinkFunction::probit(), rng());
    // Halving the step keeps every coarse grid point in the fine grid.
    const auto coarse = oracle_lasso_small(data, 1.0, GridSpec{0.04, 3});
    const auto fine = oracle_lasso_small(data, 1.0, GridSpec{0.02, 3});
    CHECK(fine.objective <= coarse.objective);

    const Vector g = testing::random_vector(rng, 3);
    const auto pv_coarse = oracle_pv_linear(g, 1.3, GridSpec{0.04, 3});
    const auto pv_fine = oracle_pv_linear(g, 1.3, GridSpec{0.02, 3});
    CHECK(g.dot(pv_fine) >= g.dot(pv_coarse));

    const auto sphere_coarse = oracle_sphere_lasso(data, 1.2, 1.0, GridSpec{0.02, 3});
    const auto sphere_fine = oracle_sphere_lasso(data, 1.2, 1.0, GridSpec{0.01, 3});
    CHECK(sphere_fine.objective <= sphere_coarse.objective + 1e-15);
  }
}

TEST_CASE("oracle_sphere_lasso") {
  const GridSpec grid{0.001, 3};
  SUBCASE("no l1 cut: unconstrained-direction least squares angle") {
    const auto sig = make_signal(2, 2, SignalMode::RandomMagnitude, 8);
    const auto data = generate_dataset(sig, 200, LinkFunction::logistic(), 9);
    const auto res = oracle_sphere_lasso(data, std::sqrt(2.0), 1.0, grid);
    CHECK(res.beta.norm() == doctest::Approx(1.0));

    // Independent reference: minimize over the angle by golden-section after a
    // coarse bracket.
    const auto f = [&](double phi) {
      Vector b(2);
      b << std::cos(phi), std::sin(phi);
      return (data.y - data.X * b).squaredNorm();
    };
    double best_phi = 0.0;
    for (int k = 0; k < 3600; ++k) {
      const double phi = 2.0 * std::numbers::pi * k / 3600.0;
      if (f(phi) < f(best_phi)) best_phi = phi;
    }
    double a = best_phi - 0.01;
    double b = best_phi + 0.01;
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int it = 0; it < 100; ++it) {
      const double c = b - r * (b - a);
      const double d = a + r * (b - a);
      if (f(c) < f(d)) {
        b = d;
      } else {
        a = c;
      }
    }
    const double phi_star = 0.5 * (a + b);
    const double phi_hat = std::atan2(res.beta(1), res.beta(0));
    double gap = std::abs(phi_hat - phi_star);
    gap = std::min(gap, 2.0 * std::numbers::pi - gap);
    CHECK(gap <= grid.step);
  }
  SUBCASE("tight cap leaves the four axis points") {
    const auto sig = make_signal(2, 1, SignalMode::EqualMagnitude, 2);
    const auto data = generate_dataset(sig, 50, LinkFunction::sign(), 4);
    const auto res = oracle_sphere_lasso(data, 1.0, 1.0, GridSpec{0.05, 3});
    CHECK(res.beta.cwiseAbs().maxCoeff() == doctest::Approx(1.0));
    CHECK(res.beta.cwiseAbs().minCoeff() <= 1e-12);
    // The right axis point for a one-sparse signal is the signal itself.
    CHECK((res.beta - sig.beta).norm() <= 1e-12);
  }
  SUBCASE("three dimensions with a cut") {
    const auto sig = make_signal(3, 2, SignalMode::RandomMagnitude, 10);
    const auto data = generate_dataset(sig, 400, LinkFunction::logistic(), 11);
    const auto res = oracle_sphere_lasso(data, 1.3, 1.0, GridSpec{0.01, 3});
    CHECK(res.beta.norm() == doctest::Approx(1.0));
    CHECK(res.beta.lpNorm<1>() <= 1.3 + 1e-9);
  }
  SUBCASE("errors") {
    const auto sig = make_signal(2, 1, SignalMode::EqualMagnitude, 2);
    const auto data = generate_dataset(sig, 10, LinkFunction::sign(), 4);
    CHECK(code_of([&] { oracle_sphere_lasso(data, 0.5, 1.0, grid); }) ==
          ErrorCode::EmptyFeasibleSet);
    const auto sig1 = make_signal(1, 1, SignalMode::EqualMagnitude, 2);
    const auto data1 = generate_dataset(sig1, 10, LinkFunction::sign(), 4);
    CHECK(code_of([&] { oracle_sphere_lasso(data1, 1.0, 1.0, grid); }) ==
          ErrorCode::DimensionTooLarge);
  }
}

TEST_CASE("sphere programs approach each other as n grows") {
  const double lambda = compute_lambda(LinkFunction::logistic()).value;
  const double root_s = std::sqrt(2.0);
  const GridSpec grid{0.001, 3};
  const auto gap_at = [&](std::size_t n, double k, Seed seed) {
    const auto sig = make_signal(2, 2, SignalMode::RandomMagnitude, seed);
    const auto data = generate_dataset(sig, n, LinkFunction::logistic(), seed + 1);
    const auto unit = oracle_sphere_lasso(data, 2.0 * root_s / lambda, 1.0, grid);
    const auto scaled = oracle_sphere_lasso(data, root_s, k, grid);
    return (unit.beta - scaled.beta / k).norm();
  };
  for (const double k : {0.5 * lambda, 1.5 * lambda}) {
    std::vector<double> small, mid, large;
    for (Seed seed = 0; seed < 9; ++seed) {
      small.push_back(gap_at(100, k, 100 + seed));
      mid.push_back(gap_at(1000, k, 100 + seed));
      large.push_back(gap_at(5000, k, 100 + seed));
    }
    std::sort(small.begin(), small.end());
    std::sort(mid.begin(), mid.end());
    std::sort(large.begin(), large.end());
    CHECK(mid[4] <= small[4]);
    CHECK(large[4] <= mid[4]);
  }
}

TEST_CASE("oracle_pv_linear examples") {
  const GridSpec grid{0.01, 3};
  CHECK((oracle_pv_linear(vec({1.0, 0.0}), 1.0, grid) - vec({1.0, 0.0})).norm() <= grid.step);
  const double h = 1.0 / std::sqrt(2.0);
  // The linear objective is flat to second order along the circle, so several
  // grid points tie near (h, h); compare values rather than locations.
  const Vector diag = oracle_pv_linear(vec({1.0, 1.0}), std::sqrt(2.0), grid);
  CHECK(diag.sum() <= 2.0 * h + 1e-12);
  CHECK(diag.sum() >= 2.0 * h - grid.step * std::sqrt(2.0) * std::sqrt(2.0));
  CHECK(std::abs(diag(0) - diag(1)) <= 0.2);
  const Vector w = oracle_pv_linear(vec({2.0, 1.0}), 1.2, grid);
  CHECK((w - pv_linear_direction(vec({2.0, 1.0}), 1.2)).norm() <= grid.step * std::sqrt(2.0));
  CHECK(w.lpNorm<1>() <= 1.2 + 1e-9);
  CHECK(w.norm() <= 1.0 + 1e-9);
}
