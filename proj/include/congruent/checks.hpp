#pragma once

// Property checks behind the cone, extrema, level-set and distinctness suites. Each
// returns a CheckResult so the harness can aggregate them and the acceptance
// binary can print them one per line.

#include <cstddef>
#include <cstdint>
#include <string>

#include "congruent/body.hpp"
#include "congruent/sampling.hpp"

namespace congruent {

struct CheckResult {
  std::string name;
  bool pass = true;
  std::size_t checked = 0;
  std::size_t violations = 0;
  /// Largest observed error measure (meaning is check-specific).
  double worst = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

/// Max and min of f on S^{n−1} ∩ ξ^⊥ found without any eigen-decomposition:
/// best lattice point, then a shrinking-step pattern search on the subsphere.
struct BruteExtremum {
  double value = 0.0;
  Vec dir;
};

struct BruteExtrema {
  BruteExtremum max;
  BruteExtremum min;
};

BruteExtrema brute_subsphere_extrema(const QuadraticSphereFunction& f, const Vec& xi,
                                     const SubsphereLattice& lattice);

/// Climb from `start` (a unit vector in ξ^⊥) to a local max (sign = +1) or
/// min (sign = −1) of f on the subsphere.
BruteExtremum refine_on_subsphere(const QuadraticSphereFunction& f, const OrthonormalFrame& plane,
                                  Vec start_coords, double sign);

struct ConeCheckOptions {
  std::size_t per_class = 10000;  // positive and negative samples per cone
  double boundary_tol = 1e-10;
  std::uint64_t seed = 23;
};

/// Radial extensions of the upper/lower level sets against the elliptic-cone
/// inequalities at the midpoints of (a₂, a₁) and (aₙ, a_{n−1}), with
/// scale invariance under λ ∈ {0.5, 2, 10}.
CheckResult check_level_cones(const EllipsoidSpec& e, const ConeCheckOptions& options = {});

struct ExtremaCheckOptions {
  std::size_t directions = 1000;
  std::size_t samples = 100000;
  std::uint64_t seed = 29;
  double value_tol = 1e-5;        // × a₁
  double cluster_band = 1e-6;     // × a₁
  double cluster_radius = 0.05;   // radians
  double symmetry_tol = 1e-10;
  std::size_t symmetry_samples = 2048;
  std::size_t restarts = 12;
};

/// Subsphere extrema vs a brute-force oracle, antipodal uniqueness of the
/// extremal directions, and reflection symmetry of the section in both.
/// Only directions with max > a₂ and min < a_{n−1} are used.
CheckResult check_subsphere_extrema(const QuadraticSphereFunction& f, const EllipsoidSpec& e,
                                    const ExtremaCheckOptions& options = {});

struct LevelSetCheckOptions {
  std::size_t levels = 8;
  std::size_t arcs = 64;
  std::size_t arc_steps = 2048;
  double value_tol = 1e-10;
  double base_tol = 1e-8;
  std::uint64_t seed = 31;
};

/// Level sets of K and L on the caps against level sets of the base function:
/// for τ near a₁, the level set of K at h₁(τ) inside the half-space ⟨θ,e₁⟩ > 0
/// is the base level set at τ inside I₁, and likewise for L on −I₁ and for
/// both bodies near aₙ on I₂. Points found in the opposite half-space must be
/// unperturbed base points.
CheckResult check_level_sets(const BodyPair& pair, const LevelSetCheckOptions& options = {});

/// d_id and d_neg against εδ³ (relative tolerance `rel_tol`).
CheckResult check_distinctness(const BodyPair& pair, std::size_t samples, double rel_tol = 1e-6);

}  // namespace congruent
