#include "sixlasso/projection.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "sixlasso/error.hpp"

namespace sixlasso {

Vector soft_threshold(const Vector& v, double level) {
  return v.unaryExpr([level](double x) {
    const double mag = std::abs(x) - level;
    return mag > 0.0 ? std::copysign(mag, x) : 0.0;
  });
}

Vector project_l1_ball(const Vector& v, double radius) {
  if (radius < 0.0 || std::isnan(radius)) {
    throw Error(ErrorCode::NegativeRadius, "l1 ball radius must be nonnegative");
  }
  if (v.lpNorm<1>() <= radius) return v;
  if (radius == 0.0) return Vector::Zero(v.size());

  std::vector<double> mags(static_cast<std::size_t>(v.size()));
  for (Eigen::Index j = 0; j < v.size(); ++j) mags[static_cast<std::size_t>(j)] = std::abs(v(j));
  std::sort(mags.begin(), mags.end(), std::greater<>());

  // Largest k with mags[k-1] > (sum_{j<k} mags[j] - radius) / k.
  double cumulative = 0.0;
  double level = 0.0;
  for (std::size_t k = 1; k <= mags.size(); ++k) {
    cumulative += mags[k - 1];
    const double candidate = (cumulative - radius) / static_cast<double>(k);
    if (mags[k - 1] > candidate) level = candidate;
  }
  Vector w = soft_threshold(v, level);
  // Cancellation in cumulative - radius can leave a relative overshoot when
  // radius is tiny next to ||v||_1; rescale so the result stays feasible.
  const double l1 = w.lpNorm<1>();
  if (l1 > radius) w *= radius / l1;
  return w;
}

}  // namespace sixlasso
