#include "sixlasso/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include <Eigen/Eigenvalues>

#include "sixlasso/error.hpp"

namespace sixlasso {

namespace {

// Legendre polynomial P_n(x) and its derivative.
std::pair<double, double> legendre(std::size_t n, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (std::size_t k = 2; k <= n; ++k) {
    const auto kd = static_cast<double>(k);
    const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
    p0 = p1;
    p1 = p2;
  }
  const double dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

}  // namespace

QuadratureRule gauss_legendre(std::size_t count, double a, double b) {
  if (count == 0) throw Error(ErrorCode::InvalidArgument, "quadrature needs at least one node");
  QuadratureRule rule;
  rule.nodes.resize(count);
  rule.weights.resize(count);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  const auto nd = static_cast<double>(count);
  for (std::size_t i = 0; i < (count + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (nd + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(count, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(count, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = mid - half * x;
    rule.nodes[count - 1 - i] = mid + half * x;
    rule.weights[i] = half * w;
    rule.weights[count - 1 - i] = half * w;
  }
  return rule;
}

QuadratureRule half_range_hermite(std::size_t count) {
  if (count == 0) throw Error(ErrorCode::InvalidArgument, "quadrature needs at least one node");

  // exp(-u^2) u^(2*count) is negligible beyond this cutoff for count <= 256.
  const double cutoff = 8.0 + 2.0 * std::sqrt(static_cast<double>(count));
  const std::size_t panels = static_cast<std::size_t>(std::ceil(cutoff / 0.25));
  const std::size_t per_panel = 24;
  const double width = cutoff / static_cast<double>(panels);
  const QuadratureRule panel_rule = gauss_legendre(per_panel, 0.0, width);

  const std::size_t m = panels * per_panel;
  Eigen::ArrayXd t(m);
  Eigen::ArrayXd w(m);
  for (std::size_t k = 0; k < panels; ++k) {
    for (std::size_t i = 0; i < per_panel; ++i) {
      const auto idx = static_cast<Eigen::Index>(k * per_panel + i);
      const double u = static_cast<double>(k) * width + panel_rule.nodes[i];
      t(idx) = u;
      w(idx) = panel_rule.weights[i] * std::exp(-u * u);
    }
  }

  // Stieltjes with normalized polynomials (Lanczos form).
  const auto n = static_cast<Eigen::Index>(count);
  Eigen::VectorXd alpha(n);
  Eigen::VectorXd sqrt_beta(n);  // sqrt_beta(k) couples degree k-1 and k
  const double mass = w.sum();
  Eigen::ArrayXd q_prev = Eigen::ArrayXd::Zero(static_cast<Eigen::Index>(m));
  Eigen::ArrayXd q = Eigen::ArrayXd::Constant(static_cast<Eigen::Index>(m), 1.0 / std::sqrt(mass));
  sqrt_beta(0) = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    alpha(k) = (w * t * q * q).sum();
    if (k + 1 == n) break;
    const double b = k == 0 ? 0.0 : sqrt_beta(k);
    Eigen::ArrayXd r = (t - alpha(k)) * q - b * q_prev;
    const double norm = std::sqrt((w * r * r).sum());
    sqrt_beta(k + 1) = norm;
    q_prev = q;
    q = r / norm;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  if (n == 1) {
    return QuadratureRule{{alpha(0)}, {mass}};
  }
  solver.computeFromTridiagonal(alpha, sqrt_beta.tail(n - 1), Eigen::ComputeEigenvectors);

  QuadratureRule rule;
  rule.nodes.resize(count);
  rule.weights.resize(count);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double v0 = solver.eigenvectors()(0, i);
    rule.nodes[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    rule.weights[static_cast<std::size_t>(i)] = mass * v0 * v0;
  }
  return rule;
}

}  // namespace sixlasso
