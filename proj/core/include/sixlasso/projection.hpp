#pragma once

#include "sixlasso/types.hpp"

namespace sixlasso {

/// Elementwise soft threshold sign(v) * max(|v| - level, 0).
Vector soft_threshold(const Vector& v, double level);

/// Euclidean projection onto { w : ||w||_1 <= radius } by sorting |v| and
/// soft-thresholding at the resulting level. Inputs with ||v||_1 <= radius
/// come back unchanged. Throws NegativeRadius.
Vector project_l1_ball(const Vector& v, double radius);

}  // namespace sixlasso
