#pragma once

#include <cstddef>
#include <vector>

namespace sixlasso {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule on [a, b].
QuadratureRule gauss_legendre(std::size_t count, double a, double b);

/// Gauss rule for the half-range Hermite weight exp(-u^2) on [0, inf):
///   integral_0^inf g(u) exp(-u^2) du ~= sum_i w_i g(u_i).
///
/// Recurrence coefficients come from a discretized Stieltjes procedure over a
/// composite Gauss-Legendre discretization of the weight; nodes and weights
/// follow from the Jacobi matrix (Golub-Welsch).
QuadratureRule half_range_hermite(std::size_t count);

}  // namespace sixlasso
