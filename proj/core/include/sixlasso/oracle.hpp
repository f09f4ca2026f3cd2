#pragma once

#include <cstddef>

#include "sixlasso/model.hpp"
#include "sixlasso/types.hpp"

// Brute-force reference solvers for desk-scale instances (p <= 3). They share
// no code path with the production projector or solver and exist to certify
// them in tests.

namespace sixlasso::oracle {

struct GridSpec {
  /// Grid resolution: coordinate spacing for box grids, radians for spheres.
  double step = 0.01;
  std::size_t p_max = 3;

  /// Throws InvalidArgument unless 0 < step <= 0.1 and p_max <= 3.
  void validate() const;
};

struct OracleResult {
  Vector beta;
  /// (1/n) ||y - X beta||^2
  double objective = 0.0;
  /// Exact largest eigenvalue of (2/n) X'X.
  double lipschitz = 0.0;
};

/// Quadratic data summary. Every oracle objective is evaluated through
///   f(b) = (1/n) (<X'y, b> - 0.5 b'X'X b),
/// so that (1/n) ||y - X b||^2 = (1/n) y'y - 2 f(b).
struct GramSummary {
  Matrix gram;    // X'X
  Vector xty;     // X'y
  double yty = 0.0;
  double n = 0.0;

  static GramSummary from(const Matrix& X, const Vector& y);
  double f(const Vector& beta) const;
  double objective(const Vector& beta) const { return yty / n - 2.0 * f(beta); }
};

/// l1-ball projection by locating the threshold on the piecewise-linear
/// function theta -> ||soft(v, theta)||_1 through a scan of every breakpoint.
/// O(p^2), no sorting. Throws NegativeRadius.
Vector oracle_project_l1(const Vector& v, double radius);

/// Exhaustive minimization of (1/n)||y - X b||^2 over the symmetric grid
/// { k * step : |k| <= floor(radius / step) }^p cut by ||b||_1 <= radius.
/// Throws DimensionTooLarge for p > grid.p_max.
OracleResult oracle_lasso_small(const Matrix& X, const Vector& y, double radius,
                                const GridSpec& grid);
OracleResult oracle_lasso_small(const Dataset& data, double radius, const GridSpec& grid);

/// Suboptimality of the best grid point relative to the continuous minimizer
/// b*: the grid point obtained by rounding b* toward zero is feasible and lies
/// within sqrt(p) * step, so convexity and an L-Lipschitz gradient give
///   f(grid) - f(b*) <= |grad f(b*)| sqrt(p) step + (L / 2) p step^2.
double grid_suboptimality_bound(double gradient_norm, double lipschitz, std::size_t p,
                                double step);

/// Minimizes ||y - X b||_2 over the sphere ||b||_2 = l2_value cut by
/// ||b||_1 <= l1_cap, scanning polar (p = 2) or spherical (p = 3) angles at a
/// resolution no coarser than grid.step. Throws DimensionTooLarge unless
/// p in {2, 3}, EmptyFeasibleSet when l1_cap < l2_value.
OracleResult oracle_sphere_lasso(const Matrix& X, const Vector& y, double l1_cap,
                                 double l2_value, const GridSpec& grid);
OracleResult oracle_sphere_lasso(const Dataset& data, double l1_cap, double l2_value,
                                 const GridSpec& grid);

/// Grid maximizer of <g, b> over [-1, 1]^p cut by ||b||_1 <= l1_radius and
/// ||b||_2 <= 1. Throws DimensionTooLarge.
Vector oracle_pv_linear(const Vector& g, double l1_radius, const GridSpec& grid);

}  // namespace sixlasso::oracle
