#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "congruent/checks.hpp"
#include "congruent/congruence.hpp"
#include "congruent/error.hpp"
#include "congruent/sampling.hpp"

using namespace congruent;

namespace {

const EllipsoidSpec kE3({3, 2, 1});
const PerturbationParams kSmall{0.4, 0.01};

std::vector<double> descending(int n) {
  std::vector<double> a;
  for (int i = n; i >= 1; --i) a.push_back(i);
  return a;
}

double line_gap(const Vec& a, const Vec& b) { return std::min(norm(a - b), norm(a + b)); }

}  // namespace

TEST_CASE("classification examples") {
  const BodyPair pair = BodyPair::make(kE3, kSmall, Flavor::kRadial);
  CHECK(classify_direction(pair, Vec::axis(3, 0)).primary == CaseClass::kAvoidsI1);
  CHECK(classify_direction(pair, Vec::axis(3, 2)).primary == CaseClass::kHitsI1Only);
  CHECK(classify_direction(pair, Vec::axis(3, 1)).primary == CaseClass::kHitsBoth);
  CHECK_FALSE(classify_direction(pair, Vec::axis(3, 1)).borderline);
}

TEST_CASE("orthogonal maps for the three cases") {
  const BodyPair pair = BodyPair::make(kE3, kSmall, Flavor::kRadial);
  auto build = [&](int axis) {
    const Vec xi = Vec::axis(3, axis);
    const Classification c = classify_direction(pair, xi);
    return build_isometry_O(xi, c.primary, c.extrema);
  };
  CHECK(build(0).kind() == IsometryKind::kIdentity);
  CHECK(build(2).kind() == IsometryKind::kPointReflection);
  const IsometryMap m = build(1);
  REQUIRE(m.kind() == IsometryKind::kReflectInVector);
  CHECK(norm(m.axes()[0] - Vec::axis(3, 2)) < 1e-14);
}

TEST_CASE("orientation-preserving maps") {
  SUBCASE("n = 4, hits I1 only") {
    const EllipsoidSpec e(descending(4));
    const BodyPair pair = BodyPair::make(e, kSmall, Flavor::kRadial);
    const Vec xi = Vec::axis(4, 3);
    const Classification c = classify_direction(pair, xi);
    REQUIRE(c.primary == CaseClass::kHitsI1Only);
    const PrincipalFrame pf = principal_frame(pair.base_function(), xi);
    const IsometryMap m = build_isometry_SO(xi, c.primary, pf, 4);
    REQUIRE(m.kind() == IsometryKind::kReflectInVector);
    CHECK(line_gap(m.axes()[0], pf.axes[2]) < 1e-14);
    CHECK(isometry_det(m, 4) == 1);
  }
  SUBCASE("n = 5, hits both") {
    const EllipsoidSpec e(descending(5));
    const BodyPair pair = BodyPair::make(e, kSmall, Flavor::kRadial);
    const Vec xi = Vec::axis(5, 1);
    const Classification c = classify_direction(pair, xi);
    REQUIRE(c.primary == CaseClass::kHitsBoth);
    const PrincipalFrame pf = principal_frame(pair.base_function(), xi);
    const IsometryMap m = build_isometry_SO(xi, c.primary, pf, 5);
    REQUIRE(m.kind() == IsometryKind::kReflectInPlane);
    // The fixed plane contains the min direction.
    const Vec eta = c.extrema.min_dir;
    CHECK(norm(m.apply(eta) - eta) < 1e-14);
    CHECK(isometry_det(m, 5) == 1);
  }
  SUBCASE("n = 4, avoids I1") {
    const EllipsoidSpec e(descending(4));
    const BodyPair pair = BodyPair::make(e, kSmall, Flavor::kRadial);
    const Vec xi = Vec::axis(4, 0);
    const Classification c = classify_direction(pair, xi);
    REQUIRE(c.primary == CaseClass::kAvoidsI1);
    const IsometryMap m =
        build_isometry_SO(xi, c.primary, principal_frame(pair.base_function(), xi), 4);
    CHECK(m.kind() == IsometryKind::kIdentity);
    CHECK(isometry_det(m, 4) == 1);
  }
  SUBCASE("n = 3 is refused") {
    const BodyPair pair = BodyPair::make(kE3, kSmall, Flavor::kRadial);
    const Vec xi = Vec::axis(3, 1);
    try {
      build_isometry_SO(xi, CaseClass::kHitsBoth, principal_frame(pair.base_function(), xi), 3);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kUnsupportedDimension);
    }
  }
}

TEST_CASE("verification examples") {
  const double eps = calibrate_epsilon(kE3, 0.4).epsilon;
  const BodyPair cal = BodyPair::make(kE3, {0.4, eps}, Flavor::kRadial);
  const SubsphereLattice lattice(2, 10000);
  const Vec e3 = Vec::axis(3, 2);
  CHECK(verify_congruence(cal.k, cal.l, e3, IsometryMap::point_reflection(e3), lattice) <= 1e-12);

  const BodyPair pair = BodyPair::make(kE3, kSmall, Flavor::kRadial);
  const Vec e2 = Vec::axis(3, 1);
  const double wrong = verify_congruence(pair.k, pair.l, e2, IsometryMap::identity(e2), lattice);
  CHECK(wrong == doctest::Approx(0.01 * 0.064 / 3.0).epsilon(1e-6));

  // A map about another hyperplane is rejected.
  CHECK_THROWS_AS(verify_congruence(pair.k, pair.l, e2, IsometryMap::identity(e3), lattice),
                  Error);
  CHECK_THROWS_AS(
      verify_congruence(pair.k, pair.l, e2, IsometryMap::reflect_in_vector(e2, e2), lattice),
      Error);
}

TEST_CASE("constructed maps certify random directions") {
  for (int n : {3, 4, 5}) {
    const EllipsoidSpec e(descending(n));
    const double delta = 0.8 * max_delta(e);
    const double eps = calibrate_epsilon(e, delta).epsilon;
    const SubsphereLattice lattice(n - 1, 4000);
    for (const Flavor flavor : {Flavor::kRadial, Flavor::kSupport}) {
      const BodyPair pair = BodyPair::make(e, {delta, eps}, flavor);
      for (const Vec& xi : sample_sphere(n, 200, 60 + n)) {
        const auto c = certify_direction(pair, xi, Group::kO, lattice);
        CHECK(c.residual <= 1e-9);
        if (n >= 4) {
          const auto s = certify_direction(pair, xi, Group::kSO, lattice);
          CHECK(s.residual <= 1e-9);
          CHECK(s.det == 1);
        }
      }
    }
  }
}

TEST_CASE("case soundness against brute-force cap hits") {
  for (int n : {3, 4}) {
    const EllipsoidSpec e(descending(n));
    const BodyPair pair = BodyPair::make(e, kSmall, Flavor::kRadial);
    const auto& f = pair.base_function();
    const double hi = e.largest() - kSmall.delta;
    const double lo = e.smallest() + kSmall.delta;
    const SubsphereLattice lattice(n - 1, n == 3 ? 100000 : 20000);
    std::size_t tested = 0;
    for (const Vec& xi : sample_sphere(n, n == 3 ? 1000 : 300, 70 + n)) {
      const Classification c = classify_direction(pair, xi);
      if (std::abs(c.extrema.max_value - hi) <= 1e-6 || std::abs(c.extrema.min_value - lo) <= 1e-6) {
        continue;
      }
      ++tested;
      bool hits_i1 = false;
      bool hits_i2 = false;
      if (n == 3) {
        const OrthonormalFrame plane = hyperplane_frame(xi);
        for (std::size_t i = 0; i < lattice.size(); ++i) {
          const RegionId r = pair.k.region_unchecked(plane.lift(lattice.point(i)));
          hits_i1 = hits_i1 || r == RegionId::kI1 || r == RegionId::kNegI1;
          hits_i2 = hits_i2 || r == RegionId::kI2;
        }
      } else {
        // Samples plus pattern-search refinement of the extremes.
        const BruteExtrema b = brute_subsphere_extrema(f, xi, lattice);
        hits_i1 = e.largest() - b.max.value < kSmall.delta;
        hits_i2 = b.min.value - e.smallest() < kSmall.delta;
      }
      const CaseClass brute = !hits_i1   ? CaseClass::kAvoidsI1
                              : !hits_i2 ? CaseClass::kHitsI1Only
                                         : CaseClass::kHitsBoth;
      CHECK(brute == c.primary);
    }
    CHECK(tested > 0);
  }
}

TEST_CASE("hits-both maps swap the I1 caps and keep I2") {
  const EllipsoidSpec e(descending(4));
  const BodyPair pair = BodyPair::make(e, kSmall, Flavor::kRadial);
  const SubsphereLattice lattice(3, 5000);
  std::size_t swapped = 0;
  std::size_t kept = 0;
  for (const Vec& xi : sample_sphere(4, 300, 80)) {
    const Classification c = classify_direction(pair, xi);
    if (c.primary != CaseClass::kHitsBoth) continue;
    for (const Group group : {Group::kO, Group::kSO}) {
      const IsometryMap phi =
          group == Group::kO
              ? build_isometry_O(xi, c.primary, c.extrema)
              : build_isometry_SO(xi, c.primary, principal_frame(pair.base_function(), xi), 4);
      const OrthonormalFrame plane = hyperplane_frame(xi);
      for (std::size_t i = 0; i < lattice.size(); ++i) {
        const Vec t = plane.lift(lattice.point(i));
        const RegionId r = pair.k.region_unchecked(t);
        if (r == RegionId::kNegI1) {
          ++swapped;
          CHECK(pair.k.region_unchecked(phi.apply(t)) == RegionId::kI1);
        } else if (r == RegionId::kI2) {
          ++kept;
          CHECK(pair.k.region_unchecked(phi.apply(t)) == RegionId::kI2);
        }
      }
    }
  }
  CHECK(swapped > 0);
  CHECK(kept > 0);
}

TEST_CASE("blind oracle") {
  SUBCASE("rediscovers a congruence and never beats the construction by much") {
    for (int n : {3, 4, 5}) {
      const EllipsoidSpec e(descending(n));
      const double delta = 0.8 * max_delta(e);
      const BodyPair pair = BodyPair::make(e, {delta, 0.1 / (n * n) / 4}, Flavor::kRadial);
      const SubsphereLattice lattice(n - 1, 2000);
      for (const Vec& xi : sample_sphere(n, 30, 90 + n)) {
        const BlindResult b = blind_congruence_search(pair.k, pair.l, xi, lattice);
        const auto c = certify_direction(pair, xi, Group::kO, lattice);
        CHECK(b.residual <= 1e-6);
        CHECK(b.residual <= c.residual + 1e-9);
      }
    }
  }
  SUBCASE("unperturbed pair: identity is optimal") {
    const BodyPair same = BodyPair::make(kE3, {0.4, 0.0}, Flavor::kRadial);
    const SubsphereLattice lattice(2, 2000);
    const Vec xi = normalized(Vec{1, 2, 3});
    const BlindResult b = blind_congruence_search(same.k, same.l, xi, lattice);
    CHECK(b.residual <= 1e-12);
    const OrthonormalFrame plane = hyperplane_frame(xi);
    FrameAlignedMap id = b.map;
    for (auto& s : id.signs) s = 1;
    for (std::size_t i = 0; i < id.perm.size(); ++i) id.perm[i] = static_cast<int>(i);
    double worst = 0.0;
    for (std::size_t i = 0; i < lattice.size(); ++i) {
      const Vec t = plane.lift(lattice.point(i));
      worst = std::max(worst, norm(id.apply(t) - t));
    }
    CHECK(worst <= 1e-12);
  }
  SUBCASE("dented fixture has no congruence") {
    const BodyPair pair = BodyPair::make(kE3, kSmall, Flavor::kRadial);
    const BodySpec& l = pair.l;
    const SphereFunction dented = [&l](const Vec& t) {
      const double s = std::max(0.0, t[1] - 0.8);
      return l.value(t) - 0.25 * s * s;
    };
    const SphereFunction k = [&pair](const Vec& t) { return pair.k.value(t); };
    const SubsphereLattice lattice(2, 4000);
    const BlindResult b =
        blind_congruence_search(k, dented, pair.base_function(), Vec::axis(3, 2), lattice, 3.0);
    CHECK(b.residual > 1e-4);
  }
}

TEST_CASE("frame-aligned map matrix is orthogonal") {
  const EllipsoidSpec e(descending(4));
  const auto f = QuadraticSphereFunction::radial(e);
  const Vec xi = normalized(Vec{1, -2, 0.5, 1});
  const PrincipalFrame pf = principal_frame(f, xi);
  const FrameAlignedMap m{pf.axes, {0, 1, 2}, {1, -1, 1}};
  const OrthonormalFrame basis = hyperplane_frame(xi);
  const auto mat = m.matrix(basis);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += mat[k * 3 + i] * mat[k * 3 + j];
      CHECK(s == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
    }
  }
}
