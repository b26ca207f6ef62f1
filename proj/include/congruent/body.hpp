#pragma once

// The perturbed ellipsoids K and L. Both agree with the base function outside
// two caps: near the maximum a₁ (K bulges on the cap around +e₁, L on the cap
// around −e₁) and near the minimum aₙ (both dent the cap around +eₙ). The
// perturbation is a cubic in the distance to the cap boundary, so the glued
// boundary function stays C².

#include <cstddef>
#include <cstdint>
#include <vector>

#include "congruent/ellipsoid.hpp"

namespace congruent {

struct PerturbationParams {
  double delta = 0.0;
  double epsilon = 0.0;
};

/// min over i of (a_{i−1} − aᵢ)/2: the cap width that keeps the caps disjoint.
double max_delta(const EllipsoidSpec& e);

enum class RegionId { kI1, kNegI1, kI2, kOutside };
enum class Variant { kK, kL };

const char* to_string(RegionId region);
const char* to_string(Variant variant);

/// x − ε(a₁ − x − δ)³ on [a₁ − δ, a₁].
double h1(double x, const PerturbationParams& p, double a1);
/// x + ε(x − aₙ − δ)³ on [aₙ, aₙ + δ].
double h2(double x, const PerturbationParams& p, double an);

class BodySpec {
 public:
  /// Requires 0 < δ < max_delta(base) and a finite ε ≥ 0. Convexity of the
  /// result is a property of ε, established by calibrate_epsilon.
  BodySpec(EllipsoidSpec base, PerturbationParams params, Variant variant, Flavor flavor);

  const EllipsoidSpec& base() const noexcept { return base_; }
  const QuadraticSphereFunction& base_function() const noexcept { return fn_; }
  const PerturbationParams& params() const noexcept { return params_; }
  Variant variant() const noexcept { return variant_; }
  Flavor flavor() const noexcept { return fn_.flavor(); }
  int dim() const noexcept { return base_.dim(); }
  double scale() const noexcept { return a1_; }

  /// Checked; θ must be a unit vector of the right dimension.
  double eval(const Vec& theta) const;
  RegionId region(const Vec& theta) const;

  double value(const Vec& theta) const noexcept {
    const double base = fn_.value(theta);
    const int last = theta.dim() - 1;
    if (a1_ - base < params_.delta) {
      const bool on_cap = variant_ == Variant::kK ? theta[0] > 0.0 : theta[0] < 0.0;
      if (on_cap) {
        const double d = a1_ - base - params_.delta;
        return base - params_.epsilon * d * d * d;
      }
    } else if (base - an_ < params_.delta && theta[last] > 0.0) {
      const double d = base - an_ - params_.delta;
      return base + params_.epsilon * d * d * d;
    }
    return base;
  }

  RegionId region_unchecked(const Vec& theta) const noexcept;

 private:
  EllipsoidSpec base_;
  QuadraticSphereFunction fn_;
  PerturbationParams params_;
  Variant variant_;
  double a1_;
  double an_;
};

/// The pair (K, L) sharing base, parameters and flavor.
struct BodyPair {
  BodySpec k;
  BodySpec l;

  static BodyPair make(const EllipsoidSpec& base, const PerturbationParams& params, Flavor flavor);
  const QuadraticSphereFunction& base_function() const noexcept { return k.base_function(); }
};

inline constexpr std::size_t kDefaultConvexitySamples = 4000;

/// Sample-resolution convexity residual (a length; 0 for a convex body up to
/// rounding).
///
/// Radial flavor: for every sampled boundary point p, the outward normal ν is
/// taken from a central-difference gradient of the gauge |x|/ρ(x/|x|); the
/// residual is max over p of h_cloud(ν) − ⟨p, ν⟩, where h_cloud is the support
/// value of the sampled boundary cloud. A convex body's tangent planes support
/// the cloud, giving 0.
///
/// Support flavor: max over sampled pairs (u, v) of H(u+v) − h(u) − h(v), with
/// H the 1-homogeneous extension of h, clamped below at 0.
double convexity_check(const BodySpec& body, std::size_t sample_count = kDefaultConvexitySamples,
                       int threads = 0);

struct CalibrationOptions {
  /// 0 selects the default 0.1 / a₁².
  double initial_epsilon = 0.0;
  std::size_t sample_count = kDefaultConvexitySamples;
  /// Flavors whose K and L must both pass.
  std::vector<Flavor> flavors = {Flavor::kRadial, Flavor::kSupport};
  int threads = 0;
};

struct CalibrationResult {
  double epsilon = 0.0;
  int halvings = 0;
  /// Worst residual over the checked bodies at the returned ε.
  double residual = 0.0;
};

/// Relative convexity tolerance: residual ≤ kConvexityTol · a₁.
inline constexpr double kConvexityTol = 1e-7;
inline constexpr double kMinEpsilon = 1e-12;

/// Largest ε in {ε₀, ε₀/2, ε₀/4, …} for which K and L pass convexity_check.
CalibrationResult calibrate_epsilon(const EllipsoidSpec& e, double delta,
                                    const CalibrationOptions& options = {});

struct Distinctness {
  /// max |K(θ) − L(θ)|
  double d_id = 0.0;
  /// max |K(−θ) − L(θ)|
  double d_neg = 0.0;
};

/// Sampled over `sample_count` seeded directions plus the 2n coordinate
/// directions ±eᵢ, where both suprema are attained.
Distinctness distinctness_check(const BodySpec& k, const BodySpec& l, std::size_t sample_count,
                                std::uint64_t seed = 0x5eed);

}  // namespace congruent
