#include "congruent/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "congruent/error.hpp"

namespace congruent {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput: return "invalid-input";
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kDegeneracy: return "degeneracy";
    case ErrorKind::kUnsupportedDimension: return "unsupported-dimension";
    case ErrorKind::kInvalidMap: return "invalid-map";
    case ErrorKind::kCalibrationFailure: return "calibration-failure";
    case ErrorKind::kConfig: return "config";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

namespace {

void require_dim(int dim) {
  if (dim < 1 || dim > kMaxDim) {
    throw Error(ErrorKind::kUnsupportedDimension,
                "dimension " + std::to_string(dim) + " outside [1, " +
                    std::to_string(kMaxDim) + "]");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Vec

Vec::Vec(int dim) : dim_(dim) { require_dim(dim); }

Vec::Vec(std::initializer_list<double> coords) : dim_(static_cast<int>(coords.size())) {
  require_dim(dim_);
  std::copy(coords.begin(), coords.end(), c_.begin());
}

Vec::Vec(std::span<const double> coords) : dim_(static_cast<int>(coords.size())) {
  require_dim(dim_);
  std::copy(coords.begin(), coords.end(), c_.begin());
}

Vec Vec::axis(int dim, int index) {
  Vec v(dim);
  if (index < 0 || index >= dim) {
    throw Error(ErrorKind::kInvalidInput, "axis index out of range");
  }
  v[index] = 1.0;
  return v;
}

Vec& Vec::operator+=(const Vec& o) noexcept {
  for (int i = 0; i < dim_; ++i) (*this)[i] += o[i];
  return *this;
}

Vec& Vec::operator-=(const Vec& o) noexcept {
  for (int i = 0; i < dim_; ++i) (*this)[i] -= o[i];
  return *this;
}

Vec& Vec::operator*=(double s) noexcept {
  for (int i = 0; i < dim_; ++i) (*this)[i] *= s;
  return *this;
}

bool Vec::operator==(const Vec& o) const noexcept {
  if (dim_ != o.dim_) return false;
  for (int i = 0; i < dim_; ++i) {
    if ((*this)[i] != o[i]) return false;
  }
  return true;
}

Vec operator+(Vec a, const Vec& b) noexcept { return a += b; }
Vec operator-(Vec a, const Vec& b) noexcept { return a -= b; }
Vec operator-(Vec a) noexcept { return a *= -1.0; }
Vec operator*(double s, Vec a) noexcept { return a *= s; }

double dot(const Vec& a, const Vec& b) noexcept {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vec& a) noexcept { return std::sqrt(dot(a, a)); }

bool is_finite(const Vec& a) noexcept {
  for (int i = 0; i < a.dim(); ++i) {
    if (!std::isfinite(a[i])) return false;
  }
  return true;
}

Vec normalized(const Vec& a) {
  const double len = norm(a);
  if (!is_finite(a) || !(len > 0.0)) {
    throw Error(ErrorKind::kInvalidInput, "cannot normalise a zero or non-finite vector");
  }
  return (1.0 / len) * a;
}

void require_unit(const Vec& v, const char* what) {
  if (!is_finite(v) || std::abs(norm(v) - 1.0) > kUnitTol) {
    throw Error(ErrorKind::kInvalidInput, std::string(what) + " must be a finite unit vector");
  }
}

// ---------------------------------------------------------------------------
// SymmetricForm

SymmetricForm::SymmetricForm(int dim) : dim_(dim) { require_dim(dim); }

SymmetricForm SymmetricForm::diagonal(std::span<const double> diag) {
  SymmetricForm s(static_cast<int>(diag.size()));
  for (int i = 0; i < s.dim(); ++i) s.set(i, i, diag[static_cast<std::size_t>(i)]);
  return s;
}

Vec SymmetricForm::apply(const Vec& x) const noexcept {
  Vec y(dim_);
  for (int i = 0; i < dim_; ++i) {
    double s = 0.0;
    for (int j = 0; j < dim_; ++j) s += (*this)(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

double SymmetricForm::quadratic(const Vec& x) const noexcept { return dot(x, apply(x)); }

double SymmetricForm::norm() const noexcept {
  double s = 0.0;
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) s += (*this)(i, j) * (*this)(i, j);
  }
  return std::sqrt(s);
}

bool SymmetricForm::is_finite() const noexcept {
  for (int i = 0; i < dim_; ++i) {
    for (int j = i; j < dim_; ++j) {
      if (!std::isfinite((*this)(i, j))) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// OrthonormalFrame

OrthonormalFrame OrthonormalFrame::from_vectors(std::vector<Vec> vectors, double tol) {
  OrthonormalFrame f;
  if (vectors.empty()) {
    throw Error(ErrorKind::kInvalidInput, "frame needs at least one vector");
  }
  f.ambient_ = vectors.front().dim();
  for (const Vec& v : vectors) {
    if (v.dim() != f.ambient_) {
      throw Error(ErrorKind::kInvalidInput, "frame vectors differ in dimension");
    }
  }
  f.basis_ = std::move(vectors);
  if (!(f.gram_error() <= tol)) {
    throw Error(ErrorKind::kInvalidInput, "frame vectors are not orthonormal");
  }
  return f;
}

Vec OrthonormalFrame::lift(std::span<const double> coords) const noexcept {
  Vec x(ambient_);
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const double c = coords[i];
    const Vec& b = basis_[i];
    for (int k = 0; k < ambient_; ++k) x[k] += c * b[k];
  }
  return x;
}

Vec OrthonormalFrame::project(const Vec& x) const noexcept {
  Vec y(size());
  for (int i = 0; i < size(); ++i) y[i] = dot(basis_[static_cast<std::size_t>(i)], x);
  return y;
}

double OrthonormalFrame::gram_error() const noexcept {
  double worst = 0.0;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    for (std::size_t j = i; j < basis_.size(); ++j) {
      const double target = i == j ? 1.0 : 0.0;
      const double err = std::abs(dot(basis_[i], basis_[j]) - target);
      if (!(err <= worst)) worst = err;  // propagates NaN
    }
  }
  return worst;
}

OrthonormalFrame hyperplane_frame(const Vec& xi) {
  require_unit(xi, "xi");
  const int n = xi.dim();
  int pivot = 0;
  for (int i = 1; i < n; ++i) {
    if (std::abs(xi[i]) > std::abs(xi[pivot])) pivot = i;
  }
  // v = ξ + sign(ξ_p) e_p, H = I − 2 v vᵀ / vᵀv. Column j of H is e_j − c v_j v.
  Vec v = xi;
  v[pivot] += xi[pivot] >= 0.0 ? 1.0 : -1.0;
  const double scale = 2.0 / dot(v, v);
  std::vector<Vec> cols;
  cols.reserve(static_cast<std::size_t>(n - 1));
  for (int j = 0; j < n; ++j) {
    if (j == pivot) continue;
    Vec col = Vec::axis(n, j);
    col -= (scale * v[j]) * v;
    cols.push_back(col);
  }
  return OrthonormalFrame::from_vectors(std::move(cols));
}

// ---------------------------------------------------------------------------
// Jacobi eigensolver

SymEigen sym_eigen(const SymmetricForm& s) {
  if (!s.is_finite()) {
    throw Error(ErrorKind::kInvalidInput, "symmetric form has non-finite entries");
  }
  const int n = s.dim();
  std::array<std::array<double, kMaxDim>, kMaxDim> a{};
  std::array<std::array<double, kMaxDim>, kMaxDim> v{};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = s(i, j);
    v[i][i] = 1.0;
  }

  const double scale = s.norm();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    }
    if (off == 0.0 || std::sqrt(off) <= 1e-17 * scale) break;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a[p][q];
        if (apq == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = c * akp - sn * akq;
          a[k][q] = sn * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = c * apk - sn * aqk;
          a[q][k] = sn * apk + c * aqk;
        }
        a[p][q] = a[q][p] = 0.0;
        for (int k = 0; k < n; ++k) {
          const double vkp = v[k][p];
          const double vkq = v[k][q];
          v[k][p] = c * vkp - sn * vkq;
          v[k][q] = sn * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return a[x][x] < a[y][y]; });

  SymEigen out;
  std::vector<Vec> vecs;
  for (int idx : order) {
    out.values.push_back(a[idx][idx]);
    Vec col(n);
    for (int k = 0; k < n; ++k) col[k] = v[k][idx];
    for (int k = 0; k < n; ++k) {
      if (std::abs(col[k]) > 1e-12) {
        if (col[k] < 0.0) col *= -1.0;
        break;
      }
    }
    vecs.push_back(col);
  }
  out.vectors = OrthonormalFrame::from_vectors(std::move(vecs), 1e-10);
  return out;
}

// ---------------------------------------------------------------------------
// Reflections

Vec reflect_in_vector(const Vec& eta, const Vec& x) {
  require_unit(eta, "reflection axis");
  return (2.0 * dot(x, eta)) * eta - x;
}

Vec reflect_in_plane(const OrthonormalFrame& plane, const Vec& x) {
  if (plane.size() != 2 || !(plane.gram_error() <= kUnitTol)) {
    throw Error(ErrorKind::kInvalidInput, "reflection plane must be an orthonormal pair");
  }
  return (2.0 * dot(x, plane[0])) * plane[0] + (2.0 * dot(x, plane[1])) * plane[1] - x;
}

const char* to_string(IsometryKind kind) {
  switch (kind) {
    case IsometryKind::kIdentity: return "identity";
    case IsometryKind::kPointReflection: return "point-reflection";
    case IsometryKind::kReflectInVector: return "reflect-in-vector";
    case IsometryKind::kReflectInPlane: return "reflect-in-plane";
  }
  return "unknown";
}

IsometryMap IsometryMap::identity(const Vec& carrier) {
  require_unit(carrier, "carrier normal");
  IsometryMap m;
  m.kind_ = IsometryKind::kIdentity;
  m.carrier_ = carrier;
  return m;
}

IsometryMap IsometryMap::point_reflection(const Vec& carrier) {
  IsometryMap m = identity(carrier);
  m.kind_ = IsometryKind::kPointReflection;
  return m;
}

IsometryMap IsometryMap::reflect_in_vector(const Vec& carrier, const Vec& axis) {
  require_unit(axis, "reflection axis");
  IsometryMap m = identity(carrier);
  m.kind_ = IsometryKind::kReflectInVector;
  m.axes_[0] = axis;
  m.axis_count_ = 1;
  return m;
}

IsometryMap IsometryMap::reflect_in_plane(const Vec& carrier, const Vec& h1, const Vec& h2) {
  // Validates orthonormality.
  (void)OrthonormalFrame::from_vectors({h1, h2});
  IsometryMap m = identity(carrier);
  m.kind_ = IsometryKind::kReflectInPlane;
  m.axes_ = {h1, h2};
  m.axis_count_ = 2;
  return m;
}

Vec IsometryMap::apply(const Vec& x) const noexcept {
  switch (kind_) {
    case IsometryKind::kIdentity:
      return x;
    case IsometryKind::kPointReflection:
      return -x;
    case IsometryKind::kReflectInVector:
      return (2.0 * dot(x, axes_[0])) * axes_[0] - x;
    case IsometryKind::kReflectInPlane:
      return (2.0 * dot(x, axes_[0])) * axes_[0] + (2.0 * dot(x, axes_[1])) * axes_[1] - x;
  }
  return x;
}

bool IsometryMap::preserves_carrier(double tol) const noexcept {
  for (const Vec& a : axes()) {
    if (!(std::abs(dot(a, carrier_)) <= tol)) return false;
  }
  return true;
}

int isometry_det(const IsometryMap& phi, int n) {
  // Number of −1 eigenvalues on the (n−1)-dimensional carrier.
  int flips = 0;
  switch (phi.kind()) {
    case IsometryKind::kIdentity: flips = 0; break;
    case IsometryKind::kPointReflection: flips = n - 1; break;
    case IsometryKind::kReflectInVector: flips = n - 2; break;
    case IsometryKind::kReflectInPlane: flips = n - 3; break;
  }
  return flips % 2 == 0 ? 1 : -1;
}

}  // namespace congruent
