#pragma once

// Small fixed-capacity linear algebra for dimensions 3..8: vectors, symmetric
// forms, orthonormal frames of hyperplanes, a cyclic Jacobi eigensolver and
// the reflections used to carry one hyperplane section onto another.

#include <array>
#include <initializer_list>
#include <span>
#include <vector>

namespace congruent {

inline constexpr int kMaxDim = 8;
inline constexpr int kMinDim = 3;

/// Tolerance on ||v|| - 1 for anything treated as a unit vector.
inline constexpr double kUnitTol = 1e-12;

class Vec {
 public:
  Vec() = default;
  explicit Vec(int dim);
  Vec(std::initializer_list<double> coords);
  explicit Vec(std::span<const double> coords);

  static Vec axis(int dim, int index);

  int dim() const noexcept { return dim_; }
  double operator[](int i) const noexcept { return c_[static_cast<std::size_t>(i)]; }
  double& operator[](int i) noexcept { return c_[static_cast<std::size_t>(i)]; }
  std::span<const double> coords() const noexcept {
    return {c_.data(), static_cast<std::size_t>(dim_)};
  }

  Vec& operator+=(const Vec& o) noexcept;
  Vec& operator-=(const Vec& o) noexcept;
  Vec& operator*=(double s) noexcept;

  bool operator==(const Vec& o) const noexcept;

 private:
  std::array<double, kMaxDim> c_{};
  int dim_ = 0;
};

Vec operator+(Vec a, const Vec& b) noexcept;
Vec operator-(Vec a, const Vec& b) noexcept;
Vec operator-(Vec a) noexcept;
Vec operator*(double s, Vec a) noexcept;

double dot(const Vec& a, const Vec& b) noexcept;
double norm(const Vec& a) noexcept;
bool is_finite(const Vec& a) noexcept;
/// Throws kInvalidInput for zero or non-finite input.
Vec normalized(const Vec& a);
/// Throws kInvalidInput unless |‖v‖ − 1| ≤ kUnitTol and v is finite.
void require_unit(const Vec& v, const char* what);

/// Symmetric n×n matrix; only the upper triangle is stored.
class SymmetricForm {
 public:
  SymmetricForm() = default;
  explicit SymmetricForm(int dim);
  static SymmetricForm diagonal(std::span<const double> diag);

  int dim() const noexcept { return dim_; }
  double operator()(int i, int j) const noexcept { return upper_[index(i, j)]; }
  void set(int i, int j, double value) noexcept { upper_[index(i, j)] = value; }

  Vec apply(const Vec& x) const noexcept;
  /// xᵀ S x
  double quadratic(const Vec& x) const noexcept;
  /// Frobenius norm.
  double norm() const noexcept;
  bool is_finite() const noexcept;

 private:
  std::size_t index(int i, int j) const noexcept {
    if (i > j) std::swap(i, j);
    return static_cast<std::size_t>(i * dim_ - i * (i - 1) / 2 + (j - i));
  }

  std::array<double, kMaxDim*(kMaxDim + 1) / 2> upper_{};
  int dim_ = 0;
};

/// k mutually orthonormal vectors in ℝⁿ.
class OrthonormalFrame {
 public:
  OrthonormalFrame() = default;
  /// Validates that the Gram matrix is the identity within `tol`.
  static OrthonormalFrame from_vectors(std::vector<Vec> vectors, double tol = 1e-12);

  int ambient_dim() const noexcept { return ambient_; }
  int size() const noexcept { return static_cast<int>(basis_.size()); }
  const Vec& operator[](int i) const noexcept { return basis_[static_cast<std::size_t>(i)]; }
  std::span<const Vec> vectors() const noexcept { return basis_; }

  /// Σ yᵢ fᵢ for frame coordinates y.
  Vec lift(std::span<const double> coords) const noexcept;
  /// (⟨x, fᵢ⟩)ᵢ
  Vec project(const Vec& x) const noexcept;
  /// Largest |Gram − I| entry.
  double gram_error() const noexcept;

 private:
  std::vector<Vec> basis_;
  int ambient_ = 0;
};

/// Orthonormal basis of ξ^⊥ taken from the Householder reflector that maps the
/// pivot axis (first index of max |ξᵢ|) onto ±ξ. The remaining columns, in
/// index order, form the frame.
OrthonormalFrame hyperplane_frame(const Vec& xi);

struct SymEigen {
  std::vector<double> values;  // ascending
  OrthonormalFrame vectors;    // vectors[i] pairs with values[i]
};

/// Cyclic Jacobi. Eigenvectors are normalised so that their first component
/// with magnitude above 1e-12 is positive.
SymEigen sym_eigen(const SymmetricForm& s);

/// −x + 2⟨x, η⟩η
Vec reflect_in_vector(const Vec& eta, const Vec& x);
/// −x + 2⟨x, h₁⟩h₁ + 2⟨x, h₂⟩h₂
Vec reflect_in_plane(const OrthonormalFrame& plane, const Vec& x);

enum class IsometryKind { kIdentity, kPointReflection, kReflectInVector, kReflectInPlane };

const char* to_string(IsometryKind kind);

/// One of the involutive isometries of a hyperplane ξ^⊥ (the carrier).
/// Factories validate the axes but not that they lie in the carrier; that is
/// checked by `preserves_carrier` so a bad map can be diagnosed downstream.
class IsometryMap {
 public:
  static IsometryMap identity(const Vec& carrier);
  static IsometryMap point_reflection(const Vec& carrier);
  static IsometryMap reflect_in_vector(const Vec& carrier, const Vec& axis);
  static IsometryMap reflect_in_plane(const Vec& carrier, const Vec& h1, const Vec& h2);

  IsometryKind kind() const noexcept { return kind_; }
  const Vec& carrier() const noexcept { return carrier_; }
  /// Empty, one axis, or the two plane vectors depending on kind.
  std::span<const Vec> axes() const noexcept {
    return {axes_.data(), static_cast<std::size_t>(axis_count_)};
  }

  Vec apply(const Vec& x) const noexcept;
  bool preserves_carrier(double tol) const noexcept;

 private:
  IsometryKind kind_ = IsometryKind::kIdentity;
  Vec carrier_;
  std::array<Vec, 2> axes_{};
  int axis_count_ = 0;
};

/// Determinant of φ restricted to the (n−1)-dimensional carrier.
int isometry_det(const IsometryMap& phi, int n);

}  // namespace congruent
