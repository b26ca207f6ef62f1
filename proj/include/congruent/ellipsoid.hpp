#pragma once

// The base ellipsoid E = {Σ xᵢ²/aᵢ² = 1} and its radial and support functions,
// both written as θ ↦ (θᵀQθ)^{±1/2}, together with the extremal structure of
// those functions on great subspheres S^{n−1} ∩ ξ^⊥.

#include <span>
#include <vector>

#include "congruent/linalg.hpp"

namespace congruent {

/// Semi-axes a₁ > a₂ > … > aₙ > 0 with pairwise gaps ≥ kMinAxisGap.
class EllipsoidSpec {
 public:
  static constexpr double kMinAxisGap = 1e-9;

  explicit EllipsoidSpec(std::vector<double> semi_axes);

  int dim() const noexcept { return static_cast<int>(axes_.size()); }
  std::span<const double> semi_axes() const noexcept { return axes_; }
  /// 0-based: axis(0) = a₁, axis(n−1) = aₙ.
  double axis(int i) const noexcept { return axes_[static_cast<std::size_t>(i)]; }
  double largest() const noexcept { return axes_.front(); }
  double smallest() const noexcept { return axes_.back(); }

  bool operator==(const EllipsoidSpec&) const = default;

 private:
  std::vector<double> axes_;
};

enum class Flavor { kRadial, kSupport };

const char* to_string(Flavor flavor);

/// θ ↦ (θᵀQθ)^{−1/2} (radial) or (θᵀQθ)^{1/2} (support), Q positive definite.
class QuadraticSphereFunction {
 public:
  QuadraticSphereFunction(SymmetricForm form, Flavor flavor);

  /// ρ_E: Q = diag(1/aᵢ²).
  static QuadraticSphereFunction radial(const EllipsoidSpec& e);
  /// h_E: Q = diag(aᵢ²).
  static QuadraticSphereFunction support(const EllipsoidSpec& e);
  static QuadraticSphereFunction of(const EllipsoidSpec& e, Flavor flavor);

  Flavor flavor() const noexcept { return flavor_; }
  const SymmetricForm& form() const noexcept { return form_; }
  int dim() const noexcept { return form_.dim(); }
  /// Maximum over the whole sphere (a₁ for the ellipsoid in either flavor).
  double max_value() const noexcept { return max_value_; }
  double min_value() const noexcept { return min_value_; }

  /// Checked evaluation; θ must be a unit vector.
  double eval(const Vec& theta) const;

  /// Unchecked hot-path evaluation. Even in θ bit-for-bit.
  double value(const Vec& theta) const noexcept {
    double s = 0.0;
    if (diagonal_) {
      for (int i = 0; i < theta.dim(); ++i) s += diag_[static_cast<std::size_t>(i)] * (theta[i] * theta[i]);
    } else {
      s = form_.quadratic(theta);
    }
    return value_from_quadratic(s);
  }

  /// Converts an eigenvalue of the form into the corresponding function value.
  double value_from_quadratic(double q) const noexcept;

 private:
  SymmetricForm form_;
  Flavor flavor_;
  bool diagonal_ = false;
  std::array<double, kMaxDim> diag_{};
  double max_value_ = 0.0;
  double min_value_ = 0.0;
};

/// Max/min of f on S^{n−1} ∩ ξ^⊥ with their (antipodal pairs of) directions.
/// Sign convention: ⟨max_dir, e₁⟩ ≥ 0 and ⟨min_dir, eₙ⟩ ≥ 0.
struct SubsphereExtrema {
  Vec xi;
  double max_value = 0.0;
  double min_value = 0.0;
  Vec max_dir;
  Vec min_dir;
  /// Relative eigen-gaps next to the extreme eigenvalues. A gap below 1e-9
  /// means the extremal direction is not unique.
  double max_gap = 0.0;
  double min_gap = 0.0;
};

inline constexpr double kDegenerateGap = 1e-9;

SubsphereExtrema subsphere_extrema(const QuadraticSphereFunction& f, const Vec& xi);

/// Principal axes of the section f|ξ^⊥ ordered by descending value; the first
/// vector matches SubsphereExtrema::max_dir and the last matches min_dir.
struct PrincipalFrame {
  OrthonormalFrame axes;
  std::vector<double> semi_axes;
};

PrincipalFrame principal_frame(const QuadraticSphereFunction& f, const Vec& xi);

/// x lies in the radial extension of {ρ_E ≥ τ} ∩ (e₁)^⊥₊.  τ ∈ (a₂, a₁).
bool cone_membership_upper(const Vec& x, double tau, const EllipsoidSpec& e);
/// x lies in the radial extension of {ρ_E ≤ τ} ∩ (eₙ)^⊥₊.  τ ∈ (aₙ, a_{n−1}).
bool cone_membership_lower(const Vec& x, double tau, const EllipsoidSpec& e);

/// sup over the first `sample_count` subsphere lattice points θ of
/// |f(φθ) − f(θ)| / max f.
double reflection_preserves_section(const QuadraticSphereFunction& f, const Vec& xi,
                                    const IsometryMap& phi, std::size_t sample_count = 4096);

}  // namespace congruent
