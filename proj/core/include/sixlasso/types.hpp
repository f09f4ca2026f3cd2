#pragma once

#include <cstdint>

#include <Eigen/Dense>

namespace sixlasso {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Seed = std::uint64_t;

/// SplitMix64 finalizer. Used for every derived seed in the project, so a
/// (base_seed, trial_id) pair always maps to the same stream.
constexpr Seed mix_seed(Seed x) noexcept {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr Seed derive_seed(Seed base, std::uint64_t index) noexcept {
  return mix_seed(base ^ index);
}

}  // namespace sixlasso
