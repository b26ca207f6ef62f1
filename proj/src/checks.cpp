#include "congruent/checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "congruent/error.hpp"

namespace congruent {

BruteExtremum refine_on_subsphere(const QuadraticSphereFunction& f, const OrthonormalFrame& plane,
                                  Vec y, double sign) {
  auto score = [&](const Vec& c) { return sign * f.value(plane.lift(c.coords())); };
  y = normalized(y);
  double best = score(y);
  for (double step = 0.05; step > 1e-11;) {
    bool improved = false;
    for (int j = 0; j < y.dim(); ++j) {
      for (double d : {step, -step}) {
        Vec c = y;
        c[j] += d;
        c = normalized(c);
        const double v = score(c);
        if (v > best) {
          best = v;
          y = c;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return {sign * best, plane.lift(y.coords())};
}

BruteExtrema brute_subsphere_extrema(const QuadraticSphereFunction& f, const Vec& xi,
                                     const SubsphereLattice& lattice) {
  const OrthonormalFrame plane = hyperplane_frame(xi);
  std::size_t imax = 0;
  std::size_t imin = 0;
  double vmax = -1.0;
  double vmin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    const double v = f.value(plane.lift(lattice.point(i)));
    if (v > vmax) { vmax = v; imax = i; }
    if (v < vmin) { vmin = v; imin = i; }
  }
  BruteExtrema out;
  out.max = refine_on_subsphere(f, plane, Vec(lattice.point(imax)), 1.0);
  out.min = refine_on_subsphere(f, plane, Vec(lattice.point(imin)), -1.0);
  // The lattice point itself may beat a stalled climb.
  out.max.value = std::max(out.max.value, vmax);
  out.min.value = std::min(out.min.value, vmin);
  return out;
}

// ---------------------------------------------------------------------------
// Level cones

namespace {

double line_angle(const Vec& a, const Vec& b) {
  return std::acos(std::min(1.0, std::abs(dot(a, b))));
}

struct ConeSpec {
  const char* label;
  double tau;
  int axis;
  bool upper;  // {ρ ≥ τ} around e₁ vs {ρ ≤ τ} around eₙ
};

}  // namespace

CheckResult check_level_cones(const EllipsoidSpec& e, const ConeCheckOptions& options) {
  const int n = e.dim();
  const QuadraticSphereFunction rho = QuadraticSphereFunction::radial(e);
  const ConeSpec cones[] = {
      {"upper", 0.5 * (e.axis(0) + e.axis(1)), 0, true},
      {"lower", 0.5 * (e.axis(n - 1) + e.axis(n - 2)), n - 1, false},
  };

  CheckResult r{"level-cones", true, 0, 0, 0.0, 0.0, {}};
  std::ostringstream detail;
  std::uint64_t stream = options.seed;
  for (const ConeSpec& cone : cones) {
    std::size_t pos = 0;
    std::size_t neg = 0;
    std::size_t bad = 0;
    const Vec apex = Vec::axis(n, cone.axis);
    const std::uint64_t pos_seed = stream++;
    const std::uint64_t neg_seed = stream++;
    const std::uint64_t radius_seed = stream++;
    for (std::uint64_t i = 0; pos < options.per_class || neg < options.per_class; ++i) {
      if (i > 200 * options.per_class) {
        throw Error(ErrorKind::kInvalidInput, "level-cone sampling did not fill both classes");
      }
      // Alternate a proposal concentrated on the cap with a uniform one.
      Vec theta = sphere_point(n, neg_seed, i);
      if (pos < options.per_class && i % 2 == 0) {
        const double t = 1.5 * 0.5 * (1.0 + sphere_point(2, radius_seed, i)[0]);
        theta = normalized(apex + t * sphere_point(n, pos_seed, i));
      }
      const double value = rho.value(theta);
      if (std::abs(value - cone.tau) <= options.boundary_tol) continue;
      const bool truth = theta[cone.axis] > 0.0 && (cone.upper ? value >= cone.tau : value <= cone.tau);
      if (truth ? pos >= options.per_class : neg >= options.per_class) continue;
      (truth ? pos : neg) += 1;

      const Vec x = value * theta;
      auto member = [&](const Vec& p) {
        return cone.upper ? cone_membership_upper(p, cone.tau, e)
                          : cone_membership_lower(p, cone.tau, e);
      };
      const bool got = member(x);
      bool ok = got == truth;
      for (double lambda : {0.5, 2.0, 10.0}) ok = ok && member(lambda * x) == got;
      if (!ok) ++bad;
      ++r.checked;
    }
    r.violations += bad;
    detail << cone.label << "(tau=" << cone.tau << "): " << pos << " in, " << neg << " out, "
           << bad << " misclassified; ";
  }
  r.worst = static_cast<double>(r.violations);
  r.pass = r.violations == 0;
  r.detail = detail.str();
  return r;
}

// ---------------------------------------------------------------------------
// Subsphere extrema

CheckResult check_subsphere_extrema(const QuadraticSphereFunction& f, const EllipsoidSpec& e,
                                    const ExtremaCheckOptions& options) {
  const int n = e.dim();
  const double a1 = e.largest();
  const SubsphereLattice lattice(n - 1, options.samples);
  CheckResult r{"subsphere-extrema", true, 0, 0, 0.0, options.value_tol, {}};
  std::size_t cluster_bad = 0;
  std::size_t symmetry_bad = 0;
  std::size_t value_bad = 0;
  double worst_symmetry = 0.0;

  std::uint64_t index = 0;
  while (r.checked < options.directions) {
    if (index > 100 * options.directions + 100) {
      throw Error(ErrorKind::kInvalidInput, "too few directions satisfy the extrema hypothesis");
    }
    const Vec xi = sphere_point(n, options.seed, index++);
    const SubsphereExtrema ext = subsphere_extrema(f, xi);
    if (!(ext.max_value > e.axis(1) && ext.min_value < e.axis(n - 2))) continue;
    ++r.checked;

    const OrthonormalFrame plane = hyperplane_frame(xi);
    const bool max_unique = ext.max_value > e.axis(1) + 1e-6;
    const bool min_unique = ext.min_value < e.axis(n - 2) - 1e-6;
    if ((max_unique && !(ext.max_gap > 0.0)) || (min_unique && !(ext.min_gap > 0.0))) {
      ++cluster_bad;
    }

    // One pass: brute-force extrema and the near-extremal sample clusters.
    double vmax = -1.0;
    double vmin = std::numeric_limits<double>::infinity();
    std::size_t imax = 0;
    std::size_t imin = 0;
    const double band = options.cluster_band * a1;
    for (std::size_t i = 0; i < lattice.size(); ++i) {
      const Vec theta = plane.lift(lattice.point(i));
      const double v = f.value(theta);
      if (v > vmax) { vmax = v; imax = i; }
      if (v < vmin) { vmin = v; imin = i; }
      if (max_unique && v >= ext.max_value - band &&
          line_angle(theta, ext.max_dir) > options.cluster_radius) {
        ++cluster_bad;
      }
      if (min_unique && v <= ext.min_value + band &&
          line_angle(theta, ext.min_dir) > options.cluster_radius) {
        ++cluster_bad;
      }
    }
    const double brute_max =
        std::max(vmax, refine_on_subsphere(f, plane, Vec(lattice.point(imax)), 1.0).value);
    const double brute_min =
        std::min(vmin, refine_on_subsphere(f, plane, Vec(lattice.point(imin)), -1.0).value);
    const double err =
        std::max(std::abs(ext.max_value - brute_max), std::abs(ext.min_value - brute_min)) / a1;
    r.worst = std::max(r.worst, err);
    if (!(err <= options.value_tol)) ++value_bad;

    // Multi-start climbs must all land on ±max_dir / ±min_dir.
    for (std::size_t s = 0; s < options.restarts && s < lattice.size(); ++s) {
      const Vec start(lattice.point(s * 7919 % lattice.size()));
      if (max_unique) {
        const BruteExtremum up = refine_on_subsphere(f, plane, start, 1.0);
        if (line_angle(up.dir, ext.max_dir) > options.cluster_radius) ++cluster_bad;
      }
      if (min_unique) {
        const BruteExtremum down = refine_on_subsphere(f, plane, start, -1.0);
        if (line_angle(down.dir, ext.min_dir) > options.cluster_radius) ++cluster_bad;
      }
    }

    for (const Vec& axis : {ext.max_dir, ext.min_dir}) {
      const double res = reflection_preserves_section(
          f, xi, IsometryMap::reflect_in_vector(xi, axis), options.symmetry_samples);
      worst_symmetry = std::max(worst_symmetry, res);
      if (!(res <= options.symmetry_tol)) ++symmetry_bad;
    }
  }

  r.violations = value_bad + cluster_bad + symmetry_bad;
  r.pass = r.violations == 0;
  std::ostringstream detail;
  detail << "worst extremum gap " << r.worst << " (x a1), worst reflection residual "
         << worst_symmetry << ", value/cluster/symmetry violations " << value_bad << "/"
         << cluster_bad << "/" << symmetry_bad;
  r.detail = detail.str();
  return r;
}

// ---------------------------------------------------------------------------
// Level sets

namespace {

struct CapRelation {
  const BodySpec* body;
  int axis;
  double side;  // +1 or −1: the cap lies where side·θ[axis] > 0
  RegionId region;
  std::function<double(double)> profile;
  double tau_lo;
  double tau_hi;
  const char* label;
};

}  // namespace

CheckResult check_level_sets(const BodyPair& pair, const LevelSetCheckOptions& options) {
  const BodySpec& k = pair.k;
  const int n = k.dim();
  const double a1 = k.base().largest();
  const double an = k.base().smallest();
  const PerturbationParams p = k.params();
  const QuadraticSphereFunction& base = pair.base_function();

  auto up = [p, a1](double x) { return h1(x, p, a1); };
  auto down = [p, an](double x) { return h2(x, p, an); };
  const CapRelation relations[] = {
      {&pair.k, 0, 1.0, RegionId::kI1, up, a1 - p.delta, a1, "K/I1"},
      {&pair.l, 0, -1.0, RegionId::kNegI1, up, a1 - p.delta, a1, "L/-I1"},
      {&pair.k, n - 1, 1.0, RegionId::kI2, down, an, an + p.delta, "K/I2"},
      {&pair.l, n - 1, 1.0, RegionId::kI2, down, an, an + p.delta, "L/I2"},
  };

  CheckResult r{"level-sets", true, 0, 0, 0.0, options.base_tol, {}};
  std::size_t copies = 0;
  std::size_t missing = 0;
  for (const CapRelation& rel : relations) {
    const Vec apex = rel.side * Vec::axis(n, rel.axis);
    for (std::size_t j = 0; j < options.levels; ++j) {
      const double tau = rel.tau_lo + (rel.tau_hi - rel.tau_lo) *
                                          (static_cast<double>(j) + 0.5) /
                                          static_cast<double>(options.levels);
      const double target = rel.profile(tau);
      for (std::size_t m = 0; m < options.arcs; ++m) {
        Vec u = sphere_point(n, options.seed, m);
        u -= dot(u, apex) * apex;
        u = normalized(u);
        auto point = [&](double t) { return std::cos(t) * apex + std::sin(t) * u; };
        auto gap = [&](double t) { return rel.body->value(point(t)) - target; };

        std::size_t cap_roots = 0;
        double t0 = 0.0;
        double g0 = gap(t0);
        for (std::size_t s = 1; s <= options.arc_steps; ++s) {
          const double t1 = std::numbers::pi * static_cast<double>(s) /
                            static_cast<double>(options.arc_steps);
          const double g1 = gap(t1);
          if ((g0 < 0.0) != (g1 < 0.0)) {
            double lo = t0;
            double hi = t1;
            double glo = g0;
            for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
              const double mid = 0.5 * (lo + hi);
              const double gm = gap(mid);
              if ((gm < 0.0) == (glo < 0.0)) { lo = mid; glo = gm; } else { hi = mid; }
            }
            const double t = std::abs(gap(lo)) <= std::abs(gap(hi)) ? lo : hi;
            const Vec theta = point(t);
            ++r.checked;
            const double body_err = std::abs(rel.body->value(theta) - target);
            if (rel.side * theta[rel.axis] > 0.0) {
              ++cap_roots;
              const double err = std::abs(base.value(theta) - tau);
              r.worst = std::max(r.worst, err);
              if (!(body_err <= options.value_tol && err <= options.base_tol &&
                    rel.body->region_unchecked(theta) == rel.region)) {
                ++r.violations;
              }
            } else {
              // Opposite half-space: the body is unperturbed there.
              ++copies;
              if (!(body_err <= options.value_tol &&
                    std::abs(base.value(theta) - target) <= options.base_tol &&
                    rel.body->region_unchecked(theta) != rel.region)) {
                ++r.violations;
              }
            }
          }
          t0 = t1;
          g0 = g1;
        }
        if (cap_roots != 1) ++missing;
      }
    }
  }
  r.violations += missing;
  r.pass = r.violations == 0;
  std::ostringstream detail;
  detail << r.checked << " level points (" << copies
         << " unperturbed copies in the opposite half-space), " << missing
         << " arcs without exactly one cap crossing, worst base-level error " << r.worst;
  r.detail = detail.str();
  return r;
}

CheckResult check_distinctness(const BodyPair& pair, std::size_t samples, double rel_tol) {
  const Distinctness d = distinctness_check(pair.k, pair.l, samples);
  const double delta = pair.k.params().delta;
  const double bump = pair.k.params().epsilon * delta * delta * delta;
  CheckResult r{"distinctness", true, samples + 2 * static_cast<std::size_t>(pair.k.dim()), 0, 0.0,
                rel_tol, {}};
  if (bump == 0.0) {
    r.pass = d.d_id == 0.0 && d.d_neg == 0.0;
  } else {
    const double e_id = std::abs(d.d_id - bump) / bump;
    const double e_neg = std::abs(d.d_neg - bump) / bump;
    r.worst = std::max(e_id, e_neg);
    r.pass = e_id <= rel_tol && e_neg <= rel_tol && d.d_id > 0.5 * bump && d.d_neg > 0.5 * bump;
  }
  r.violations = r.pass ? 0 : 1;
  std::ostringstream detail;
  detail.precision(10);
  detail << "d_id=" << d.d_id << " d_neg=" << d.d_neg << " eps*delta^3=" << bump;
  r.detail = detail.str();
  return r;
}

}  // namespace congruent
