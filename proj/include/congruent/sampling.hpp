#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "congruent/linalg.hpp"

namespace congruent {

/// `count` directions on S^{n−1}: normalised standard-normal vectors drawn
/// from a counter-based generator keyed by `seed`. Element i depends only on
/// (seed, i), so any prefix or slice can be regenerated independently.
std::vector<Vec> sample_sphere(int n, std::size_t count, std::uint64_t seed);

/// The i-th direction of `sample_sphere(n, ·, seed)`.
Vec sphere_point(int n, std::uint64_t seed, std::uint64_t index);

/// Quasi-uniform points on the unit sphere of ℝᵏ (k = frame_dim), given as
/// frame coordinates to be lifted through a hyperplane frame.
///
/// Point i is the (i+1)-th element of a Halton sequence pushed through an
/// area-preserving map (arc length on S¹, Lambert on S², Hopf/Shoemake on S³,
/// Box–Muller then normalisation above). Lattices of different sizes are
/// prefixes of one sequence, so a smaller lattice is always nested in a larger
/// one.
class SubsphereLattice {
 public:
  SubsphereLattice(int frame_dim, std::size_t count);

  int frame_dim() const noexcept { return frame_dim_; }
  std::size_t size() const noexcept { return count_; }
  std::span<const double> point(std::size_t i) const noexcept {
    return {coords_.data() + i * static_cast<std::size_t>(frame_dim_),
            static_cast<std::size_t>(frame_dim_)};
  }

 private:
  int frame_dim_;
  std::size_t count_;
  std::vector<double> coords_;
};

/// Radical inverse of `index` in the given base.
double radical_inverse(std::uint64_t index, std::uint32_t base) noexcept;

}  // namespace congruent
