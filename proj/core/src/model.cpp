#include "sixlasso/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "sixlasso/error.hpp"
#include "sixlasso/quadrature.hpp"

namespace sixlasso {

namespace {

LambdaEstimate lambda_by_quadrature(const LinkFunction& link, std::size_t nodes) {
  const QuadratureRule rule = half_range_hermite(nodes);
  const double root2 = std::numbers::sqrt2;
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double z = root2 * rule.nodes[i];
    acc += rule.weights[i] * (link(z) - link(-z)) * z;
  }
  return {acc / std::sqrt(std::numbers::pi), 0.0};
}

LambdaEstimate lambda_by_monte_carlo(const LinkFunction& link, std::size_t samples, Seed seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  // Welford accumulation keeps the variance estimate stable at 1e7 samples.
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double z = normal(rng);
    const double v = link(z) * z;
    const double delta = v - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (v - mean);
  }
  const auto count = static_cast<double>(samples);
  const double variance = m2 / (count - 1.0);
  return {mean, std::sqrt(variance / count)};
}

}  // namespace

LambdaEstimate compute_lambda(const LinkFunction& link, LambdaMethod method, std::size_t budget,
                              Seed seed) {
  LambdaEstimate est;
  if (method == LambdaMethod::Quadrature) {
    if (budget < kMinQuadratureNodes) {
      throw Error(ErrorCode::InvalidArgument,
                  "quadrature budget must be at least " + std::to_string(kMinQuadratureNodes) +
                      " nodes");
    }
    est = lambda_by_quadrature(link, budget);
  } else {
    if (budget < kMinMonteCarloSamples) {
      throw Error(ErrorCode::InvalidArgument,
                  "Monte Carlo budget must be at least " +
                      std::to_string(kMinMonteCarloSamples) + " samples");
    }
    est = lambda_by_monte_carlo(link, budget, seed);
  }
  if (!(est.value > 0.0)) {
    throw Error(ErrorCode::NonPositiveLambda,
                "link constant E[F(Z)Z] = " + std::to_string(est.value) + " is not positive");
  }
  return est;
}

TrueSignal make_signal(std::size_t p, std::size_t s, SignalMode mode, Seed seed) {
  if (s == 0 || s > p) {
    throw Error(ErrorCode::InvalidSparsity,
                "sparsity s=" + std::to_string(s) + " must satisfy 1 <= s <= p=" +
                    std::to_string(p));
  }
  std::mt19937_64 rng(seed);

  // Partial Fisher-Yates: the first s slots are a uniform draw without replacement.
  std::vector<std::size_t> pool(p);
  for (std::size_t j = 0; j < p; ++j) pool[j] = j;
  for (std::size_t j = 0; j < s; ++j) {
    std::uniform_int_distribution<std::size_t> pick(j, p - 1);
    std::swap(pool[j], pool[pick(rng)]);
  }
  std::vector<std::size_t> support(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(s));
  std::sort(support.begin(), support.end());

  TrueSignal signal;
  signal.p = p;
  signal.s = s;
  signal.beta = Vector::Zero(static_cast<Eigen::Index>(p));
  if (mode == SignalMode::EqualMagnitude) {
    std::bernoulli_distribution coin(0.5);
    const double magnitude = 1.0 / std::sqrt(static_cast<double>(s));
    for (const auto j : support) {
      signal.beta(static_cast<Eigen::Index>(j)) = coin(rng) ? magnitude : -magnitude;
    }
  } else {
    std::normal_distribution<double> normal;
    for (const auto j : support) {
      double v = 0.0;
      while (v == 0.0) v = normal(rng);
      signal.beta(static_cast<Eigen::Index>(j)) = v;
    }
    signal.beta /= signal.beta.norm();
  }
  signal.support = std::move(support);
  return signal;
}

Dataset generate_dataset(const TrueSignal& signal, std::size_t n, const LinkFunction& link,
                         Seed seed) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "dataset needs at least one sample");
  const auto rows = static_cast<Eigen::Index>(n);
  const auto cols = signal.beta.size();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  // Fill sample by sample so a dataset's first k rows do not depend on n.
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows_major(rows, cols);
  Vector y(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) rows_major(i, j) = normal(rng);
    const double index = rows_major.row(i).dot(signal.beta.transpose());
    if (!link.is_binary()) {
      y(i) = index;
      continue;
    }
    const double mean = link(index);
    if (!(std::abs(mean) <= 1.0)) {
      throw Error(ErrorCode::LinkRangeError,
                  "link returned " + std::to_string(mean) + " outside [-1, 1]");
    }
    y(i) = uniform(rng) < 0.5 * (1.0 + mean) ? 1.0 : -1.0;
  }

  Dataset data;
  data.X = rows_major;
  data.y = std::move(y);
  data.link_kind = link.kind();
  data.seed = seed;
  return data;
}

}  // namespace sixlasso
