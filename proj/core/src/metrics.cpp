#include "sixlasso/metrics.hpp"

#include <algorithm>

#include "sixlasso/error.hpp"

namespace sixlasso {

namespace {
constexpr double kZeroNorm = 1e-300;
}

double direction_error(const Vector& beta_hat, const Vector& beta_star) {
  const double a = beta_hat.norm();
  const double b = beta_star.norm();
  if (a <= kZeroNorm || b <= kZeroNorm) {
    throw Error(ErrorCode::ZeroVector, "direction error is undefined for a zero vector");
  }
  if (beta_hat.size() != beta_star.size()) {
    throw Error(ErrorCode::InvalidArgument, "direction error needs vectors of equal length");
  }
  return (beta_hat / a - beta_star / b).norm();
}

double norm_gap(const Vector& beta_hat, double lambda) { return beta_hat.norm() - lambda; }

SupportMetrics support_metrics(const Vector& beta_hat, const TrueSignal& signal,
                               double threshold) {
  if (threshold < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "support threshold must be nonnegative");
  }
  std::size_t selected = 0;
  std::size_t hits = 0;
  for (Eigen::Index j = 0; j < beta_hat.size(); ++j) {
    if (std::abs(beta_hat(j)) <= threshold) continue;
    ++selected;
    if (std::binary_search(signal.support.begin(), signal.support.end(),
                           static_cast<std::size_t>(j))) {
      ++hits;
    }
  }
  SupportMetrics m;
  m.precision = selected == 0 ? 1.0 : static_cast<double>(hits) / static_cast<double>(selected);
  m.recall = signal.support.empty()
                 ? 1.0
                 : static_cast<double>(hits) / static_cast<double>(signal.support.size());
  return m;
}

double default_support_threshold(const Vector& beta_hat) {
  return beta_hat.size() == 0 ? 0.0 : 1e-6 * beta_hat.cwiseAbs().maxCoeff();
}

double classify_accuracy(const Vector& beta_hat, const Dataset& test) {
  if (beta_hat.norm() <= kZeroNorm) {
    throw Error(ErrorCode::ZeroVector, "cannot classify with a zero coefficient vector");
  }
  if (test.n() == 0) return 0.0;
  const Vector scores = test.X * beta_hat;
  std::size_t correct = 0;
  for (Eigen::Index i = 0; i < scores.size(); ++i) {
    const double label = scores(i) >= 0.0 ? 1.0 : -1.0;
    correct += label == test.y(i) ? 1 : 0;
  }
  return static_cast<double>(correct) / static_cast<double>(test.n());
}

}  // namespace sixlasso
