#include "sixlasso/oracle.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "sixlasso/error.hpp"

namespace sixlasso::oracle {

namespace {

// Relative slack for constraint checks on grid points built from k * step.
constexpr double kSlack = 1e-12;

void require_dimension(std::size_t p, const GridSpec& grid, std::size_t p_min = 1) {
  if (p < p_min || p > grid.p_max) {
    throw Error(ErrorCode::DimensionTooLarge,
                "oracle handles p in [" + std::to_string(p_min) + ", " +
                    std::to_string(grid.p_max) + "], got p=" + std::to_string(p));
  }
}

double exact_lipschitz(const GramSummary& summary) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig((2.0 / summary.n) * summary.gram,
                                            Eigen::EigenvaluesOnly);
  return eig.eigenvalues().maxCoeff();
}

// Visits every point of {k * step : |k| <= half_width}^p in lexicographic order.
template <typename Visit>
void scan_box(std::size_t p, long half_width, double step, Visit&& visit) {
  std::array<long, 3> k{};
  for (std::size_t d = 0; d < p; ++d) k[d] = -half_width;
  Vector point(static_cast<Eigen::Index>(p));
  while (true) {
    for (std::size_t d = 0; d < p; ++d) {
      point(static_cast<Eigen::Index>(d)) = static_cast<double>(k[d]) * step;
    }
    visit(point);
    std::size_t d = p;
    while (d > 0) {
      --d;
      if (k[d] < half_width) {
        ++k[d];
        break;
      }
      k[d] = -half_width;
      if (d == 0) return;
    }
  }
}

long half_width_for(double extent, double step) {
  return static_cast<long>(std::floor(extent / step + kSlack));
}

// Smallest multiple of `multiple` that gives a spacing of at most step over span.
long angular_count(double span, double step, long multiple) {
  auto count = static_cast<long>(std::ceil(span / step));
  if (count % multiple != 0) count += multiple - count % multiple;
  return count;
}

}  // namespace

void GridSpec::validate() const {
  if (!(step > 0.0 && step <= 0.1)) {
    throw Error(ErrorCode::InvalidArgument, "grid step must lie in (0, 0.1]");
  }
  if (p_max > 3) throw Error(ErrorCode::InvalidArgument, "grid p_max must be <= 3");
}

GramSummary GramSummary::from(const Matrix& X, const Vector& y) {
  GramSummary s;
  s.gram = X.transpose() * X;
  s.xty = X.transpose() * y;
  s.yty = y.squaredNorm();
  s.n = static_cast<double>(X.rows());
  return s;
}

double GramSummary::f(const Vector& beta) const {
  // Explicit loops: this runs once per grid point, so avoid temporaries.
  double linear = 0.0;
  double quadratic = 0.0;
  for (Eigen::Index i = 0; i < beta.size(); ++i) {
    linear += xty(i) * beta(i);
    for (Eigen::Index j = 0; j < beta.size(); ++j) quadratic += beta(i) * gram(i, j) * beta(j);
  }
  return (linear - 0.5 * quadratic) / n;
}

Vector oracle_project_l1(const Vector& v, double radius) {
  if (radius < 0.0 || std::isnan(radius)) {
    throw Error(ErrorCode::NegativeRadius, "l1 ball radius must be nonnegative");
  }
  const Vector mags = v.cwiseAbs();
  if (mags.sum() <= radius) return v;

  const auto mass_above = [&](double theta) { return (mags.array() - theta).max(0.0).sum(); };

  // Breakpoints are 0 and every |v_j|; mass_above is linear between neighbours.
  double lo = 0.0;
  for (Eigen::Index j = 0; j < mags.size(); ++j) {
    if (mags(j) > lo && mass_above(mags(j)) >= radius) lo = mags(j);
  }
  double hi = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < mags.size(); ++j) {
    if (mags(j) > lo && mags(j) < hi) hi = mags(j);
  }
  const double h_lo = mass_above(lo);
  const double h_hi = mass_above(hi);
  const double theta = lo + (h_lo - radius) * (hi - lo) / (h_lo - h_hi);

  Vector w(v.size());
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    const double m = mags(j) - theta;
    w(j) = m > 0.0 ? std::copysign(m, v(j)) : 0.0;
  }
  return w;
}

OracleResult oracle_lasso_small(const Matrix& X, const Vector& y, double radius,
                                const GridSpec& grid) {
  grid.validate();
  require_dimension(static_cast<std::size_t>(X.cols()), grid);
  if (radius < 0.0) throw Error(ErrorCode::NegativeRadius, "lasso radius must be nonnegative");

  const GramSummary summary = GramSummary::from(X, y);
  OracleResult best;
  best.objective = std::numeric_limits<double>::infinity();
  const double cap = radius * (1.0 + kSlack);
  scan_box(static_cast<std::size_t>(X.cols()), half_width_for(radius, grid.step), grid.step,
           [&](const Vector& point) {
             if (point.lpNorm<1>() > cap) return;
             const double obj = summary.objective(point);
             if (obj < best.objective) {
               best.objective = obj;
               best.beta = point;
             }
           });
  best.lipschitz = exact_lipschitz(summary);
  return best;
}

OracleResult oracle_lasso_small(const Dataset& data, double radius, const GridSpec& grid) {
  return oracle_lasso_small(data.X, data.y, radius, grid);
}

double grid_suboptimality_bound(double gradient_norm, double lipschitz, std::size_t p,
                                double step) {
  const double reach = std::sqrt(static_cast<double>(p)) * step;
  return gradient_norm * reach + 0.5 * lipschitz * reach * reach;
}

OracleResult oracle_sphere_lasso(const Matrix& X, const Vector& y, double l1_cap,
                                 double l2_value, const GridSpec& grid) {
  grid.validate();
  const auto p = static_cast<std::size_t>(X.cols());
  require_dimension(p, grid, 2);
  if (!(l2_value > 0.0)) throw Error(ErrorCode::InvalidArgument, "l2_value must be positive");
  if (l1_cap < l2_value) {
    throw Error(ErrorCode::EmptyFeasibleSet,
                "the sphere of radius " + std::to_string(l2_value) +
                    " lies outside the l1 ball of radius " + std::to_string(l1_cap));
  }

  const GramSummary summary = GramSummary::from(X, y);
  const double cap = l1_cap * (1.0 + kSlack);
  OracleResult best;
  best.objective = std::numeric_limits<double>::infinity();
  const auto consider = [&](const Vector& point) {
    if (point.lpNorm<1>() > cap) return;
    const double obj = summary.objective(point);
    if (obj < best.objective) {
      best.objective = obj;
      best.beta = point;
    }
  };

  // Azimuth counts are multiples of 4 so the axis points are on the grid.
  const double two_pi = 2.0 * std::numbers::pi;
  const long azimuths = angular_count(two_pi, grid.step, 4);
  Vector point(static_cast<Eigen::Index>(p));
  if (p == 2) {
    for (long a = 0; a < azimuths; ++a) {
      const double phi = two_pi * static_cast<double>(a) / static_cast<double>(azimuths);
      point << l2_value * std::cos(phi), l2_value * std::sin(phi);
      consider(point);
    }
  } else {
    const long polars = angular_count(std::numbers::pi, grid.step, 2);
    for (long b = 0; b <= polars; ++b) {
      const double theta = std::numbers::pi * static_cast<double>(b) / static_cast<double>(polars);
      const double ring = l2_value * std::sin(theta);
      const double height = l2_value * std::cos(theta);
      const long ring_points = (b == 0 || b == polars) ? 1 : azimuths;
      for (long a = 0; a < ring_points; ++a) {
        const double phi = two_pi * static_cast<double>(a) / static_cast<double>(azimuths);
        point << ring * std::cos(phi), ring * std::sin(phi), height;
        consider(point);
      }
    }
  }
  if (best.beta.size() == 0) {
    throw Error(ErrorCode::EmptyFeasibleSet, "no grid point on the sphere meets the l1 cap");
  }
  best.lipschitz = exact_lipschitz(summary);
  return best;
}

OracleResult oracle_sphere_lasso(const Dataset& data, double l1_cap, double l2_value,
                                 const GridSpec& grid) {
  return oracle_sphere_lasso(data.X, data.y, l1_cap, l2_value, grid);
}

Vector oracle_pv_linear(const Vector& g, double l1_radius, const GridSpec& grid) {
  grid.validate();
  require_dimension(static_cast<std::size_t>(g.size()), grid);
  const double l1_cap = l1_radius * (1.0 + kSlack);
  const double l2_cap = 1.0 + kSlack;
  Vector best;
  double best_value = -std::numeric_limits<double>::infinity();
  scan_box(static_cast<std::size_t>(g.size()), half_width_for(1.0, grid.step), grid.step,
           [&](const Vector& point) {
             if (point.lpNorm<1>() > l1_cap || point.norm() > l2_cap) return;
             const double value = g.dot(point);
             if (value > best_value) {
               best_value = value;
               best = point;
             }
           });
  return best;
}

}  // namespace sixlasso::oracle
