#pragma once

#include "sixlasso/model.hpp"
#include "sixlasso/types.hpp"

namespace sixlasso {

struct TrialMetrics {
  double direction_error = 0.0;
  double raw_l2_error = 0.0;
  double norm_beta_hat = 0.0;
  double norm_gap = 0.0;
  double support_precision = 0.0;
  double support_recall = 0.0;
  double test_accuracy = 0.0;
};

struct SupportMetrics {
  double precision = 1.0;
  double recall = 0.0;
};

/// || beta_hat / |beta_hat| - beta_star / |beta_star| ||_2, in [0, 2].
/// Throws ZeroVector if either norm is <= 1e-300.
double direction_error(const Vector& beta_hat, const Vector& beta_star);

/// ||beta_hat||_2 - lambda (signed).
double norm_gap(const Vector& beta_hat, double lambda);

/// Estimated support is { j : |beta_hat_j| > threshold }. An empty estimate
/// has precision 1.
SupportMetrics support_metrics(const Vector& beta_hat, const TrueSignal& signal, double threshold);

/// 1e-6 * max_j |beta_hat_j|
double default_support_threshold(const Vector& beta_hat);

/// Fraction of rows with sign(x_i'beta_hat) == y_i, where sign(0) = +1.
/// Throws ZeroVector for beta_hat = 0.
double classify_accuracy(const Vector& beta_hat, const Dataset& test);

}  // namespace sixlasso
