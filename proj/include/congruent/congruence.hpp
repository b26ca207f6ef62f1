#pragma once

// Per-direction congruence of the hyperplane sections (radial flavor) or
// projections (support flavor) of K and L: classify how the subsphere
// S^{n−1} ∩ ξ^⊥ meets the perturbation caps, build the matching involution of
// ξ^⊥, and measure how well it carries K onto L.

#include <functional>
#include <string>
#include <vector>

#include "congruent/body.hpp"
#include "congruent/sampling.hpp"

namespace congruent {

enum class CaseClass { kAvoidsI1, kHitsI1Only, kHitsBoth };
enum class Group { kO, kSO };

const char* to_string(CaseClass c);
const char* to_string(Group g);

/// Directions whose extrema lie this close to a cap threshold are borderline.
inline constexpr double kBorderlineTol = 1e-6;
/// Tolerance on |⟨axis, ξ⟩| for a map to count as acting on ξ^⊥.
inline constexpr double kCarrierTol = 1e-10;

struct Classification {
  CaseClass primary = CaseClass::kAvoidsI1;
  /// primary first; more than one entry only for borderline directions.
  std::vector<CaseClass> candidates;
  SubsphereExtrema extrema;
  bool borderline = false;
};

/// Thresholds: the subsphere meets ±I₁ iff max > a₁ − δ and meets I₂ iff
/// min < aₙ + δ (values of the base function on the subsphere).
Classification classify_direction(const BodyPair& pair, const Vec& xi);

/// Identity / point reflection / reflection in the min direction.
IsometryMap build_isometry_O(const Vec& xi, CaseClass c, const SubsphereExtrema& extrema);

/// Orientation-preserving counterpart for n ≥ 4: a reflection in the last
/// principal axis (n even) or in the plane of the last two principal axes
/// (n odd). Throws kUnsupportedDimension for n = 3.
IsometryMap build_isometry_SO(const Vec& xi, CaseClass c, const PrincipalFrame& frame, int n);

/// sup over lattice points θ ∈ S^{n−1} ∩ ξ^⊥ of |K(φθ) − L(θ)| / a₁.
/// Throws kInvalidMap if φ does not act on ξ^⊥.
double verify_congruence(const BodySpec& k, const BodySpec& l, const Vec& xi,
                         const IsometryMap& phi, const SubsphereLattice& lattice);

struct CongruenceCertificate {
  Vec xi;
  CaseClass case_class = CaseClass::kAvoidsI1;
  IsometryMap map = IsometryMap::identity(Vec::axis(3, 0));
  int det = 1;
  double residual = 0.0;
  std::size_t sample_count = 0;
  Flavor flavor = Flavor::kRadial;
  Group group = Group::kO;
  bool borderline = false;
};

/// classify → build → verify. Borderline directions try every candidate case
/// and keep the map with the smallest residual.
CongruenceCertificate certify_direction(const BodyPair& pair, const Vec& xi, Group group,
                                        const SubsphereLattice& lattice);

using SphereFunction = std::function<double(const Vec&)>;

/// x ↦ Σᵢ signs[i] ⟨x, pᵢ⟩ p_{perm[i]} for a principal frame (pᵢ).
struct FrameAlignedMap {
  OrthonormalFrame frame;
  std::vector<int> perm;
  std::vector<int> signs;

  Vec apply(const Vec& x) const noexcept;
  /// Row-major (n−1)×(n−1) matrix in the coordinates of `basis`.
  std::vector<double> matrix(const OrthonormalFrame& basis) const;
};

struct BlindResult {
  FrameAlignedMap map;
  double residual = 0.0;
};

/// Exhaustive search over sign flips and semi-axis-preserving permutations of
/// the principal frame of the base section. Uses no case analysis.
BlindResult blind_congruence_search(const SphereFunction& k, const SphereFunction& l,
                                    const QuadraticSphereFunction& base, const Vec& xi,
                                    const SubsphereLattice& lattice, double scale);

BlindResult blind_congruence_search(const BodySpec& k, const BodySpec& l, const Vec& xi,
                                    const SubsphereLattice& lattice);

}  // namespace congruent
