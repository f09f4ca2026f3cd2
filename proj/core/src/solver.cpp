#include "sixlasso/solver.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sixlasso/error.hpp"
#include "sixlasso/projection.hpp"

namespace sixlasso {

namespace {

constexpr double kLipschitzInflation = 1.05;
// Backtracking gives up once the step parameter grows this far past its start;
// only reachable when rounding noise dominates the objective.
constexpr double kMaxLipschitzGrowth = 1e8;

// y - X beta, touching only the nonzero columns when beta is sparse.
Vector residual_vector(const Matrix& X, const Vector& y, const Vector& beta) {
  Eigen::Index nnz = 0;
  for (Eigen::Index j = 0; j < beta.size(); ++j) nnz += beta(j) != 0.0 ? 1 : 0;
  if (4 * nnz >= beta.size()) return y - X * beta;
  Vector r = y;
  for (Eigen::Index j = 0; j < beta.size(); ++j) {
    if (beta(j) != 0.0) r.noalias() -= beta(j) * X.col(j);
  }
  return r;
}

}  // namespace

void SolverConfig::validate() const {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "solver tol must be positive");
  if (!(residual_tol > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "solver residual_tol must be positive");
  }
  if (max_iter < 1) throw Error(ErrorCode::InvalidArgument, "solver max_iter must be >= 1");
  if (power_iters < 1) throw Error(ErrorCode::InvalidArgument, "solver power_iters must be >= 1");
  if (!(backtrack_shrink > 0.0 && backtrack_shrink < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "backtrack_shrink must lie in (0, 1)");
  }
}

double lipschitz_estimate(const Matrix& X, std::size_t iters) {
  if (iters < 1) throw Error(ErrorCode::InvalidArgument, "power iteration needs iters >= 1");
  if (X.size() == 0 || X.isZero(0.0)) {
    throw Error(ErrorCode::ZeroMatrix, "cannot estimate a Lipschitz constant for a zero matrix");
  }
  const double scale = 2.0 / static_cast<double>(X.rows());
  Vector v = Vector::Ones(X.cols()) / std::sqrt(static_cast<double>(X.cols()));
  if ((X * v).isZero(0.0)) {
    // All-ones start lies in the null space; fall back to the heaviest column.
    Eigen::Index j = 0;
    X.colwise().squaredNorm().maxCoeff(&j);
    v = Vector::Unit(X.cols(), j);
  }
  double rayleigh = 0.0;
  for (std::size_t it = 0; it < iters; ++it) {
    const Vector xv = X * v;
    rayleigh = scale * xv.squaredNorm();
    Vector w = scale * (X.transpose() * xv);
    const double norm = w.norm();
    if (norm == 0.0) break;
    v = w / norm;
  }
  return kLipschitzInflation * rayleigh;
}

double lasso_objective(const Matrix& X, const Vector& y, const Vector& beta) {
  return residual_vector(X, y, beta).squaredNorm() / static_cast<double>(X.rows());
}

FitResult fit_lasso(const Matrix& X, const Vector& y, double radius, const SolverConfig& config) {
  config.validate();
  if (radius < 0.0 || std::isnan(radius)) {
    throw Error(ErrorCode::NegativeRadius, "lasso radius must be nonnegative");
  }
  if (X.rows() != y.size() || X.rows() == 0) {
    throw Error(ErrorCode::InvalidArgument,
                "design has " + std::to_string(X.rows()) + " rows but response has " +
                    std::to_string(y.size()) + " entries");
  }
  const double inv_n = 1.0 / static_cast<double>(X.rows());

  double lipschitz = config.step_rule == StepRule::FixedLipschitz
                         ? lipschitz_estimate(X, config.power_iters)
                         : 1.0;
  const double lipschitz_cap = lipschitz * kMaxLipschitzGrowth;

  FitResult result;
  result.radius = radius;
  Vector beta = Vector::Zero(X.cols());
  Vector r = y;
  double f = r.squaredNorm() * inv_n;
  if (config.record_trace) result.objective_trace.push_back(f);

  bool stopped = false;
  for (std::size_t iter = 1; iter <= config.max_iter; ++iter) {
    result.iterations = iter;
    const Vector grad = (-2.0 * inv_n) * (X.transpose() * r);

    bool accepted = false;
    Vector candidate;
    Vector r_candidate;
    double f_candidate = f;
    double step = 0.0;
    while (true) {
      candidate = project_l1_ball(beta - grad / lipschitz, radius);
      const Vector d = candidate - beta;
      step = d.norm();
      if (step == 0.0) break;
      r_candidate = residual_vector(X, y, candidate);
      f_candidate = r_candidate.squaredNorm() * inv_n;
      const bool decreased = f_candidate <= f;
      const bool majorized =
          f_candidate <= f + grad.dot(d) + 0.5 * lipschitz * d.squaredNorm();
      if (decreased && (config.step_rule == StepRule::FixedLipschitz || majorized)) {
        accepted = true;
        break;
      }
      lipschitz /= config.backtrack_shrink;
      if (lipschitz > lipschitz_cap) break;
    }
    if (!accepted) {
      // Exact fixed point, or no representable descent left.
      stopped = true;
      break;
    }

    const double decrease = (f - f_candidate) / std::max(f, std::numeric_limits<double>::min());
    beta = std::move(candidate);
    r = std::move(r_candidate);
    f = f_candidate;
    if (config.record_trace) result.objective_trace.push_back(f);
    if (f == 0.0 || (decrease <= config.tol && step <= config.residual_tol)) {
      stopped = true;
      break;
    }
  }

  const Vector grad = (-2.0 * inv_n) * (X.transpose() * r);
  result.residual = (beta - project_l1_ball(beta - grad / lipschitz, radius)).norm();
  result.converged = stopped && result.residual <= config.residual_tol;
  result.objective = f;
  result.lipschitz = lipschitz;
  result.l1_norm = beta.lpNorm<1>();
  result.l2_norm = beta.norm();
  result.beta_hat = std::move(beta);
  return result;
}

FitResult fit_lasso(const Dataset& data, double radius, const SolverConfig& config) {
  return fit_lasso(data.X, data.y, radius, config);
}

Vector pv_linear_direction(const Vector& g, double l1_radius) {
  if (!(l1_radius >= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "pv_linear_fit requires l1_radius >= 1");
  }
  const double g_norm = g.norm();
  if (g_norm == 0.0) {
    throw Error(ErrorCode::ZeroGradient, "X'y is zero; the signal direction is undefined");
  }
  Vector direction = g / g_norm;
  if (direction.lpNorm<1>() <= l1_radius) return direction;

  const double g_max = g.cwiseAbs().maxCoeff();
  Eigen::Index ties = 0;
  for (Eigen::Index j = 0; j < g.size(); ++j) ties += std::abs(g(j)) == g_max ? 1 : 0;

  // As the threshold approaches max|g| the normalized soft threshold tends to
  // the uniform vector on the tied coordinates, whose l1 norm is sqrt(ties).
  const auto face_point = [&] {
    Vector w = Vector::Zero(g.size());
    const double value = l1_radius / static_cast<double>(ties);
    for (Eigen::Index j = 0; j < g.size(); ++j) {
      if (std::abs(g(j)) == g_max) w(j) = std::copysign(value, g(j));
    }
    return w;
  };
  if (l1_radius <= std::sqrt(static_cast<double>(ties))) return face_point();

  const auto normalized_soft = [&](double level) {
    Vector w = soft_threshold(g, level);
    return Vector(w / w.norm());
  };
  double lo = 0.0;
  double hi = g_max;
  Vector best;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    Vector w = normalized_soft(mid);
    const double l1 = w.lpNorm<1>();
    if (l1 > l1_radius) {
      lo = mid;
    } else {
      hi = mid;
      best = std::move(w);
      if (l1_radius - l1 <= 1e-9) break;
    }
  }
  return best.size() == 0 ? face_point() : best;
}

Vector pv_linear_fit(const Dataset& data, double l1_radius) {
  return pv_linear_direction(data.X.transpose() * data.y, l1_radius);
}

}  // namespace sixlasso
