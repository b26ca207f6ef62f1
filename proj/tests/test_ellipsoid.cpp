#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "congruent/checks.hpp"
#include "congruent/ellipsoid.hpp"
#include "congruent/error.hpp"
#include "congruent/sampling.hpp"

using namespace congruent;

namespace {

const EllipsoidSpec kE3({3, 2, 1});
const EllipsoidSpec kE4({4, 3, 2, 1});

double line_gap(const Vec& a, const Vec& b) {
  return std::min(norm(a - b), norm(a + b));
}

}  // namespace

TEST_CASE("ellipsoid parameter validation") {
  CHECK_THROWS_AS(EllipsoidSpec({3, 3, 1}), Error);
  CHECK_THROWS_AS(EllipsoidSpec({1, 2, 3}), Error);
  CHECK_THROWS_AS(EllipsoidSpec({3, 2, 0}), Error);
  CHECK_THROWS_AS(EllipsoidSpec({2, 1}), Error);
  CHECK_THROWS_AS(EllipsoidSpec({9, 8, 7, 6, 5, 4, 3, 2, 1}), Error);
  try {
    EllipsoidSpec({3, 3, 1});
  } catch (const Error& e) {
    CHECK(std::string(e.what()) == "semi_axes must be strictly decreasing");
  }
  try {
    EllipsoidSpec({2, 1});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kUnsupportedDimension);
  }
}

TEST_CASE("evaluation examples") {
  const auto rho = QuadraticSphereFunction::radial(kE3);
  const auto h = QuadraticSphereFunction::support(kE3);
  CHECK(rho.eval(Vec::axis(3, 0)) == doctest::Approx(3.0).epsilon(1e-15));
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(rho.eval(Vec{r, r, 0}) == doctest::Approx(std::sqrt(72.0 / 13.0)).epsilon(1e-14));
  CHECK(std::abs(rho.eval(Vec{r, r, 0}) - 2.35339) < 1e-5);
  CHECK(h.eval(Vec::axis(3, 2)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rho.max_value() == doctest::Approx(3.0));
  CHECK(rho.min_value() == doctest::Approx(1.0));
  CHECK_THROWS_AS(rho.eval(Vec{1, 1, 0}), Error);
  CHECK_THROWS_AS(rho.eval(Vec::axis(4, 0)), Error);
}

TEST_CASE("evenness is exact") {
  for (const Flavor flavor : {Flavor::kRadial, Flavor::kSupport}) {
    const auto f = QuadraticSphereFunction::of(kE4, flavor);
    for (const Vec& t : sample_sphere(4, 1000, 3)) CHECK(f.value(-t) == f.value(t));
  }
}

TEST_CASE("cone membership examples") {
  CHECK(cone_membership_upper(Vec::axis(3, 0), 2.5, kE3));
  CHECK_FALSE(cone_membership_upper(Vec::axis(3, 1), 2.5, kE3));
  CHECK(cone_membership_lower(Vec::axis(3, 2), 1.4, kE3));
  CHECK_FALSE(cone_membership_lower(Vec::axis(3, 0), 1.4, kE3));
  CHECK_THROWS_AS(cone_membership_upper(Vec::axis(3, 0), 1.5, kE3), Error);
  CHECK_THROWS_AS(cone_membership_lower(Vec::axis(3, 2), 2.5, kE3), Error);

  const auto rho = QuadraticSphereFunction::radial(kE3);
  std::size_t hits = 0;
  for (const Vec& t : sample_sphere(3, 40000, 8)) {
    const double v = rho.value(t);
    if (v >= 2.5 && t[0] > 0.0) {
      ++hits;
      CHECK(cone_membership_upper(v * t, 2.5, kE3));
    }
  }
  CHECK(hits >= 1000);
}

TEST_CASE("lower cone boundary points sit on the level set") {
  // ρ_E = 1.4 on great circles through e₃, solved by bisection.
  const auto rho = QuadraticSphereFunction::radial(kE3);
  for (const Vec& u0 : sample_sphere(3, 200, 9)) {
    Vec u = u0 - u0[2] * Vec::axis(3, 2);
    u = normalized(u);
    auto at = [&](double t) { return std::cos(t) * Vec::axis(3, 2) + std::sin(t) * u; };
    double lo = 0.0;
    double hi = M_PI / 2;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (rho.value(at(mid)) < 1.4 ? lo : hi) = mid;
    }
    const Vec theta = at(lo);
    CHECK(std::abs(rho.value(theta) - 1.4) <= 1e-10);
    CHECK(theta[2] > 0.0);
    // Just inside and just outside the level set.
    CHECK(cone_membership_lower(rho.value(at(lo - 1e-6)) * at(lo - 1e-6), 1.4, kE3));
    CHECK_FALSE(cone_membership_lower(rho.value(at(hi + 1e-6)) * at(hi + 1e-6), 1.4, kE3));
  }
}

TEST_CASE("subsphere extrema examples") {
  const auto rho = QuadraticSphereFunction::radial(kE3);
  SUBCASE("xi = e3") {
    const auto x = subsphere_extrema(rho, Vec::axis(3, 2));
    CHECK(x.max_value == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(x.min_value == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(line_gap(x.max_dir, Vec::axis(3, 0)) < 1e-14);
    CHECK(line_gap(x.min_dir, Vec::axis(3, 1)) < 1e-14);
  }
  SUBCASE("xi = e1") {
    const auto x = subsphere_extrema(rho, Vec::axis(3, 0));
    CHECK(x.max_value == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(x.min_value == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(line_gap(x.max_dir, Vec::axis(3, 1)) < 1e-14);
    CHECK(line_gap(x.min_dir, Vec::axis(3, 2)) < 1e-14);
    CHECK(x.min_dir[2] > 0.0);
  }
  SUBCASE("xi = (e1+e3)/sqrt2 against a dense brute-force max") {
    const double r = 1.0 / std::sqrt(2.0);
    const Vec xi{r, 0, r};
    const auto x = subsphere_extrema(rho, xi);
    const SubsphereLattice lattice(2, 1000000);
    const OrthonormalFrame plane = hyperplane_frame(xi);
    double best = 0.0;
    double worst = 1e9;
    for (std::size_t i = 0; i < lattice.size(); ++i) {
      const double v = rho.value(plane.lift(lattice.point(i)));
      best = std::max(best, v);
      worst = std::min(worst, v);
    }
    CHECK(std::abs(x.max_value - best) <= 1e-6);
    CHECK(std::abs(x.min_value - worst) <= 1e-6);
    // (e₁ − e₃)/√2 has ρ = (½(1/9 + 1))^{−1/2}; e₂ has ρ = 2.
    CHECK(x.max_value == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(x.min_value == doctest::Approx(std::sqrt(18.0 / 10.0)).epsilon(1e-14));
  }
}

TEST_CASE("brute-force oracle agrees with the eigen extrema") {
  for (int n : {3, 4, 5}) {
    std::vector<double> axes;
    for (int i = n; i >= 1; --i) axes.push_back(i);
    const EllipsoidSpec e(axes);
    const SubsphereLattice lattice(n - 1, 20000);
    for (const Flavor flavor : {Flavor::kRadial, Flavor::kSupport}) {
      const auto f = QuadraticSphereFunction::of(e, flavor);
      for (const Vec& xi : sample_sphere(n, 30, 100 + n)) {
        const auto x = subsphere_extrema(f, xi);
        const auto b = brute_subsphere_extrema(f, xi, lattice);
        CHECK(std::abs(x.max_value - b.max.value) <= 1e-9 * e.largest());
        CHECK(std::abs(x.min_value - b.min.value) <= 1e-9 * e.largest());
        CHECK(line_gap(b.max.dir, x.max_dir) <= 1e-4);
        CHECK(line_gap(b.min.dir, x.min_dir) <= 1e-4);
      }
    }
  }
}

TEST_CASE("principal frame examples") {
  SUBCASE("a = (3,2,1), xi = e3") {
    const auto pf = principal_frame(QuadraticSphereFunction::radial(kE3), Vec::axis(3, 2));
    REQUIRE(pf.axes.size() == 2);
    CHECK(line_gap(pf.axes[0], Vec::axis(3, 0)) < 1e-14);
    CHECK(line_gap(pf.axes[1], Vec::axis(3, 1)) < 1e-14);
    CHECK(pf.semi_axes[0] == doctest::Approx(3.0));
    CHECK(pf.semi_axes[1] == doctest::Approx(2.0));
  }
  SUBCASE("a = (4,3,2,1), xi = e4") {
    const auto pf = principal_frame(QuadraticSphereFunction::radial(kE4), Vec::axis(4, 3));
    REQUIRE(pf.axes.size() == 3);
    for (int i = 0; i < 3; ++i) {
      CHECK(line_gap(pf.axes[i], Vec::axis(4, i)) < 1e-14);
      CHECK(pf.semi_axes[static_cast<std::size_t>(i)] == doctest::Approx(4.0 - i));
    }
  }
  SUBCASE("random xi in R4: frame vectors are stationary points") {
    const auto rho = QuadraticSphereFunction::radial(kE4);
    for (const Vec& xi : sample_sphere(4, 50, 12)) {
      const auto pf = principal_frame(rho, xi);
      const auto x = subsphere_extrema(rho, xi);
      CHECK(line_gap(pf.axes[0], x.max_dir) < 1e-12);
      CHECK(line_gap(pf.axes[2], x.min_dir) < 1e-12);
      for (int i = 0; i < 3; ++i) {
        const Vec v = pf.axes[i];
        CHECK(std::abs(rho.value(v) - pf.semi_axes[static_cast<std::size_t>(i)]) < 1e-12);
        // Directional derivatives along the subsphere's tangent space.
        for (int j = 0; j < 3; ++j) {
          if (j == i) continue;
          const Vec w = pf.axes[j];
          const double h = 1e-5;
          const double d = (rho.value(normalized(v + h * w)) - rho.value(normalized(v - h * w))) /
                           (2 * h);
          CHECK(std::abs(d) <= 1e-8);
        }
      }
    }
  }
}

TEST_CASE("reflection symmetry of sections") {
  const auto rho = QuadraticSphereFunction::radial(kE3);
  CHECK(reflection_preserves_section(
            rho, Vec::axis(3, 2),
            IsometryMap::reflect_in_vector(Vec::axis(3, 2), Vec::axis(3, 1))) <= 1e-12);
  const auto rho5 = QuadraticSphereFunction::radial(EllipsoidSpec({5, 4, 3, 2, 1}));
  for (const auto* f : {&rho, &rho5}) {
    const int n = f->dim();
    std::uint64_t k = 0;
    for (const Vec& xi : sample_sphere(n, 40, 14)) {
      const auto x = subsphere_extrema(*f, xi);
      CHECK(reflection_preserves_section(*f, xi, IsometryMap::reflect_in_vector(xi, x.min_dir)) <=
            1e-10);
      CHECK(reflection_preserves_section(*f, xi, IsometryMap::reflect_in_vector(xi, x.max_dir)) <=
            1e-10);
      // Negative control: an axis halfway between two principal axes.
      const auto pf = principal_frame(*f, xi);
      const Vec v = normalized(pf.axes[0] + (0.5 + 0.001 * static_cast<double>(k++)) * pf.axes[1]);
      CHECK(reflection_preserves_section(*f, xi, IsometryMap::reflect_in_vector(xi, v)) > 1e-3);
    }
  }
}

TEST_CASE("level-set symmetry on sections") {
  const auto rho = QuadraticSphereFunction::radial(kE4);
  const SubsphereLattice lattice(3, 20000);
  for (const Vec& xi : sample_sphere(4, 20, 15)) {
    const auto x = subsphere_extrema(rho, xi);
    const OrthonormalFrame plane = hyperplane_frame(xi);
    const double tau = 0.5 * (x.max_value + x.min_value);
    std::size_t found = 0;
    for (std::size_t i = 0; i < lattice.size(); ++i) {
      const Vec t = plane.lift(lattice.point(i));
      if (std::abs(rho.value(t) - tau) > 1e-3) continue;
      ++found;
      for (const Vec& axis : {x.max_dir, x.min_dir}) {
        const Vec r = reflect_in_vector(axis, t);
        CHECK(std::abs(rho.value(r) - rho.value(t)) <= 1e-9);
      }
    }
    CHECK(found > 0);
  }
}

TEST_CASE("cone, extrema and level-set checks at reduced size") {
  ConeCheckOptions cones;
  cones.per_class = 2000;
  const CheckResult c = check_level_cones(kE4, cones);
  CHECK_MESSAGE(c.pass, c.detail);
  CHECK(c.checked == 4 * cones.per_class);

  ExtremaCheckOptions ext;
  ext.directions = 50;
  ext.samples = 20000;
  for (const Flavor flavor : {Flavor::kRadial, Flavor::kSupport}) {
    const CheckResult r = check_subsphere_extrema(QuadraticSphereFunction::of(kE4, flavor), kE4,
                                                  ext);
    CHECK_MESSAGE(r.pass, r.detail);
    CHECK(r.checked == ext.directions);
  }
}
