#pragma once

#include <cstddef>
#include <vector>

#include "sixlasso/link.hpp"
#include "sixlasso/types.hpp"

namespace sixlasso {

/// Ground-truth coefficient vector, normalized to unit l2 norm.
struct TrueSignal {
  Vector beta;
  std::size_t p = 0;
  std::size_t s = 0;
  std::vector<std::size_t> support;  // ascending
};

/// Design matrix (rows are samples) and responses.
struct Dataset {
  Matrix X;
  Vector y;
  LinkKind link_kind = LinkKind::Logistic;
  Seed seed = 0;

  std::size_t n() const noexcept { return static_cast<std::size_t>(X.rows()); }
  std::size_t p() const noexcept { return static_cast<std::size_t>(X.cols()); }
};

enum class SignalMode { EqualMagnitude, RandomMagnitude };
enum class LambdaMethod { Quadrature, MonteCarlo };

struct LambdaEstimate {
  double value = 0.0;
  /// Standard error of the Monte Carlo mean; zero for quadrature.
  double std_error = 0.0;
};

inline constexpr std::size_t kDefaultQuadratureNodes = 64;
inline constexpr std::size_t kMinQuadratureNodes = 32;
inline constexpr std::size_t kMinMonteCarloSamples = 10'000;

/// lambda = E[F(Z) Z] for Z ~ N(0, 1).
///
/// Quadrature folds the integral onto the half line,
///   E[F(Z) Z] = (1/sqrt(pi)) int_0^inf (F(sqrt2 u) - F(-sqrt2 u)) sqrt2 u e^{-u^2} du,
/// and applies a Gauss rule for exp(-u^2) on [0, inf). Folding removes the
/// kink of discontinuous links at the origin, which a full-line rule cannot
/// resolve. MonteCarlo draws `budget` standard normals from `seed`.
///
/// Throws NonPositiveLambda when the result is <= 0.
LambdaEstimate compute_lambda(const LinkFunction& link,
                              LambdaMethod method = LambdaMethod::Quadrature,
                              std::size_t budget = kDefaultQuadratureNodes,
                              Seed seed = 0);

/// Throws InvalidSparsity unless 1 <= s <= p.
TrueSignal make_signal(std::size_t p, std::size_t s, SignalMode mode, Seed seed);

/// X has i.i.d. N(0,1) entries. Binary links draw y_i = +1 with probability
/// (1 + F(x_i'beta*)) / 2; the Linear link sets y = X beta* with no noise.
Dataset generate_dataset(const TrueSignal& signal, std::size_t n, const LinkFunction& link,
                         Seed seed);

}  // namespace sixlasso
