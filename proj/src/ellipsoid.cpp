#include "congruent/ellipsoid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "congruent/error.hpp"
#include "congruent/sampling.hpp"

namespace congruent {

EllipsoidSpec::EllipsoidSpec(std::vector<double> semi_axes) : axes_(std::move(semi_axes)) {
  const int n = dim();
  if (n < kMinDim || n > kMaxDim) {
    throw Error(ErrorKind::kUnsupportedDimension,
                "ellipsoid dimension must lie in [3, 8], got " + std::to_string(n));
  }
  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(axis(i)) || !(axis(i) > 0.0)) {
      throw Error(ErrorKind::kInvalidInput, "semi_axes must be finite and positive");
    }
    if (i > 0 && !(axis(i - 1) - axis(i) >= kMinAxisGap)) {
      throw Error(ErrorKind::kInvalidInput, "semi_axes must be strictly decreasing");
    }
  }
}

const char* to_string(Flavor flavor) {
  return flavor == Flavor::kRadial ? "radial" : "support";
}

QuadraticSphereFunction::QuadraticSphereFunction(SymmetricForm form, Flavor flavor)
    : form_(form), flavor_(flavor) {
  const SymEigen eig = sym_eigen(form_);
  if (!(eig.values.front() > 0.0)) {
    throw Error(ErrorKind::kInvalidInput, "quadratic form must be positive definite");
  }
  const double at_low = value_from_quadratic(eig.values.front());
  const double at_high = value_from_quadratic(eig.values.back());
  max_value_ = std::max(at_low, at_high);
  min_value_ = std::min(at_low, at_high);

  diagonal_ = true;
  for (int i = 0; i < form_.dim(); ++i) {
    for (int j = i + 1; j < form_.dim(); ++j) {
      if (form_(i, j) != 0.0) diagonal_ = false;
    }
    diag_[static_cast<std::size_t>(i)] = form_(i, i);
  }
}

QuadraticSphereFunction QuadraticSphereFunction::radial(const EllipsoidSpec& e) {
  std::vector<double> d;
  for (double a : e.semi_axes()) d.push_back(1.0 / (a * a));
  return {SymmetricForm::diagonal(d), Flavor::kRadial};
}

QuadraticSphereFunction QuadraticSphereFunction::support(const EllipsoidSpec& e) {
  std::vector<double> d;
  for (double a : e.semi_axes()) d.push_back(a * a);
  return {SymmetricForm::diagonal(d), Flavor::kSupport};
}

QuadraticSphereFunction QuadraticSphereFunction::of(const EllipsoidSpec& e, Flavor flavor) {
  return flavor == Flavor::kRadial ? radial(e) : support(e);
}

double QuadraticSphereFunction::value_from_quadratic(double q) const noexcept {
  return flavor_ == Flavor::kRadial ? 1.0 / std::sqrt(q) : std::sqrt(q);
}

double QuadraticSphereFunction::eval(const Vec& theta) const {
  require_unit(theta, "theta");
  if (theta.dim() != dim()) throw Error(ErrorKind::kInvalidInput, "theta has wrong dimension");
  return value(theta);
}

namespace {

// Eigen-decomposition of the form restricted to ξ^⊥, ordered so that index 0
// carries the largest function value.
struct RestrictedEigen {
  OrthonormalFrame plane;     // hyperplane_frame(ξ)
  std::vector<double> q;      // eigenvalues in value-descending order
  std::vector<Vec> dirs;      // lifted eigenvectors, same order
};

RestrictedEigen restricted_eigen(const QuadraticSphereFunction& f, const Vec& xi) {
  if (xi.dim() != f.dim()) throw Error(ErrorKind::kInvalidInput, "xi has wrong dimension");
  RestrictedEigen r{hyperplane_frame(xi), {}, {}};
  const int k = r.plane.size();
  SymmetricForm m(k);
  std::vector<Vec> qf;
  for (int i = 0; i < k; ++i) qf.push_back(f.form().apply(r.plane[i]));
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) m.set(i, j, dot(r.plane[i], qf[static_cast<std::size_t>(j)]));
  }
  const SymEigen eig = sym_eigen(m);
  for (int i = 0; i < k; ++i) {
    // Radial values decrease with the eigenvalue, support values increase.
    const int idx = f.flavor() == Flavor::kRadial ? i : k - 1 - i;
    r.q.push_back(eig.values[static_cast<std::size_t>(idx)]);
    r.dirs.push_back(r.plane.lift(eig.vectors[idx].coords()));
  }
  return r;
}

void orient_positive(Vec& v, int axis) {
  if (v[axis] < 0.0) v *= -1.0;
}

void orient_first_nonzero(Vec& v) {
  for (int k = 0; k < v.dim(); ++k) {
    if (std::abs(v[k]) > 1e-12) {
      if (v[k] < 0.0) v *= -1.0;
      return;
    }
  }
}

void orient_extremes(std::vector<Vec>& dirs) {
  const int n = dirs.front().dim();
  Vec& top = dirs.front();
  if (std::abs(top[0]) > 1e-12) orient_positive(top, 0); else orient_first_nonzero(top);
  Vec& bottom = dirs.back();
  if (std::abs(bottom[n - 1]) > 1e-12) orient_positive(bottom, n - 1); else orient_first_nonzero(bottom);
}

}  // namespace

SubsphereExtrema subsphere_extrema(const QuadraticSphereFunction& f, const Vec& xi) {
  RestrictedEigen r = restricted_eigen(f, xi);
  orient_extremes(r.dirs);
  const std::size_t k = r.q.size();
  double spread = 0.0;
  for (double q : r.q) spread = std::max(spread, std::abs(q));

  SubsphereExtrema out;
  out.xi = xi;
  out.max_value = f.value_from_quadratic(r.q.front());
  out.min_value = f.value_from_quadratic(r.q.back());
  out.max_dir = r.dirs.front();
  out.min_dir = r.dirs.back();
  out.max_gap = std::abs(r.q[1] - r.q[0]) / spread;
  out.min_gap = std::abs(r.q[k - 1] - r.q[k - 2]) / spread;
  return out;
}

PrincipalFrame principal_frame(const QuadraticSphereFunction& f, const Vec& xi) {
  RestrictedEigen r = restricted_eigen(f, xi);
  for (std::size_t i = 1; i + 1 < r.dirs.size(); ++i) orient_first_nonzero(r.dirs[i]);
  orient_extremes(r.dirs);
  PrincipalFrame out;
  for (double q : r.q) out.semi_axes.push_back(f.value_from_quadratic(q));
  out.axes = OrthonormalFrame::from_vectors(std::move(r.dirs), 1e-10);
  return out;
}

namespace {

void require_open_interval(double tau, double lo, double hi, const char* which) {
  if (!(tau > lo && tau < hi)) {
    std::ostringstream msg;
    msg << which << ": tau " << tau << " outside (" << lo << ", " << hi << ")";
    throw Error(ErrorKind::kDomain, msg.str());
  }
}

}  // namespace

bool cone_membership_upper(const Vec& x, double tau, const EllipsoidSpec& e) {
  const int n = e.dim();
  require_open_interval(tau, e.axis(1), e.axis(0), "cone_membership_upper");
  if (!(x[0] >= 0.0)) return false;
  const double t2 = tau * tau;
  const double lhs = (1.0 - t2 / (e.axis(0) * e.axis(0))) * x[0] * x[0];
  double rhs = 0.0;
  for (int i = 1; i < n; ++i) rhs += (t2 / (e.axis(i) * e.axis(i)) - 1.0) * x[i] * x[i];
  return lhs >= rhs;
}

bool cone_membership_lower(const Vec& x, double tau, const EllipsoidSpec& e) {
  const int n = e.dim();
  require_open_interval(tau, e.axis(n - 1), e.axis(n - 2), "cone_membership_lower");
  if (!(x[n - 1] >= 0.0)) return false;
  const double t2 = tau * tau;
  const double an = e.axis(n - 1);
  const double lhs = (t2 / (an * an) - 1.0) * x[n - 1] * x[n - 1];
  double rhs = 0.0;
  for (int i = 0; i < n - 1; ++i) rhs += (1.0 - t2 / (e.axis(i) * e.axis(i))) * x[i] * x[i];
  return lhs >= rhs;
}

double reflection_preserves_section(const QuadraticSphereFunction& f, const Vec& xi,
                                    const IsometryMap& phi, std::size_t sample_count) {
  const OrthonormalFrame plane = hyperplane_frame(xi);
  const SubsphereLattice lattice(plane.size(), sample_count);
  double worst = 0.0;
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    const Vec theta = plane.lift(lattice.point(i));
    const double diff = std::abs(f.value(phi.apply(theta)) - f.value(theta));
    worst = std::max(worst, diff);
  }
  return worst / f.max_value();
}

}  // namespace congruent
