#pragma once

#include <cstddef>
#include <vector>

#include "sixlasso/model.hpp"
#include "sixlasso/types.hpp"

namespace sixlasso {

enum class StepRule { FixedLipschitz, Backtracking };

struct SolverConfig {
  /// Stop once the relative objective decrease falls below tol ...
  double tol = 1e-9;
  /// ... and the projected-gradient step is no longer than residual_tol.
  double residual_tol = 1e-6;
  std::size_t max_iter = 5000;
  StepRule step_rule = StepRule::FixedLipschitz;
  std::size_t power_iters = 100;
  double backtrack_shrink = 0.5;
  /// Keep every iterate's objective in FitResult::objective_trace.
  bool record_trace = false;

  /// Throws InvalidArgument on out-of-range settings.
  void validate() const;
};

struct FitResult {
  Vector beta_hat;
  /// (1/n) ||y - X beta_hat||^2
  double objective = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  double radius = 0.0;
  double l1_norm = 0.0;
  double l2_norm = 0.0;
  /// Step size parameter in use when the solver stopped.
  double lipschitz = 0.0;
  /// ||beta_hat - P(beta_hat - grad / lipschitz)||_2 at the returned point.
  double residual = 0.0;
  std::vector<double> objective_trace;
};

/// Largest eigenvalue of (2/n) X'X by power iteration from the normalized
/// all-ones vector, inflated by 5%. Throws ZeroMatrix.
double lipschitz_estimate(const Matrix& X, std::size_t iters);

/// (1/n) ||y - X beta||^2
double lasso_objective(const Matrix& X, const Vector& y, const Vector& beta);

/// min (1/n) ||y - X beta||^2 subject to ||beta||_1 <= radius, by projected
/// gradient descent from beta = 0. Non-convergence is reported through
/// FitResult::converged rather than thrown.
FitResult fit_lasso(const Matrix& X, const Vector& y, double radius,
                    const SolverConfig& config = {});
FitResult fit_lasso(const Dataset& data, double radius, const SolverConfig& config = {});

/// Maximizer of <g, beta> over { ||beta||_1 <= l1_radius, ||beta||_2 <= 1 }.
/// Requires l1_radius >= 1. Throws ZeroGradient when g = 0.
Vector pv_linear_direction(const Vector& g, double l1_radius);

/// pv_linear_direction applied to g = X'y.
Vector pv_linear_fit(const Dataset& data, double l1_radius);

}  // namespace sixlasso
