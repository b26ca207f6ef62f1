#include "congruent/congruence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "congruent/error.hpp"

namespace congruent {

const char* to_string(CaseClass c) {
  switch (c) {
    case CaseClass::kAvoidsI1: return "avoids-I1";
    case CaseClass::kHitsI1Only: return "hits-I1-only";
    case CaseClass::kHitsBoth: return "hits-both";
  }
  return "unknown";
}

const char* to_string(Group g) { return g == Group::kO ? "O" : "SO"; }

namespace {

CaseClass case_from(double max_value, double min_value, double hi, double lo) {
  if (max_value <= hi) return CaseClass::kAvoidsI1;
  return min_value >= lo ? CaseClass::kHitsI1Only : CaseClass::kHitsBoth;
}

}  // namespace

Classification classify_direction(const BodyPair& pair, const Vec& xi) {
  const BodySpec& k = pair.k;
  const double hi = k.base().largest() - k.params().delta;
  const double lo = k.base().smallest() + k.params().delta;

  Classification out;
  out.extrema = subsphere_extrema(k.base_function(), xi);
  const double mx = out.extrema.max_value;
  const double mn = out.extrema.min_value;
  out.primary = case_from(mx, mn, hi, lo);
  out.candidates.push_back(out.primary);
  for (double dmax : {-kBorderlineTol, kBorderlineTol}) {
    for (double dmin : {-kBorderlineTol, kBorderlineTol}) {
      const CaseClass c = case_from(mx + dmax, mn + dmin, hi, lo);
      if (std::find(out.candidates.begin(), out.candidates.end(), c) == out.candidates.end()) {
        out.candidates.push_back(c);
      }
    }
  }
  out.borderline = out.candidates.size() > 1;
  return out;
}

IsometryMap build_isometry_O(const Vec& xi, CaseClass c, const SubsphereExtrema& extrema) {
  switch (c) {
    case CaseClass::kAvoidsI1:
      return IsometryMap::identity(xi);
    case CaseClass::kHitsI1Only:
      return IsometryMap::point_reflection(xi);
    case CaseClass::kHitsBoth:
      if (extrema.min_gap < kDegenerateGap) {
        throw Error(ErrorKind::kDegeneracy, "minimum direction of the section is not unique");
      }
      return IsometryMap::reflect_in_vector(xi, extrema.min_dir);
  }
  return IsometryMap::identity(xi);
}

IsometryMap build_isometry_SO(const Vec& xi, CaseClass c, const PrincipalFrame& frame, int n) {
  if (n < 4) {
    throw Error(ErrorKind::kUnsupportedDimension,
                "orientation-preserving congruences need n >= 4");
  }
  if (c == CaseClass::kAvoidsI1) return IsometryMap::identity(xi);
  // The last principal axis is the min direction, so HitsI1Only and HitsBoth
  // share the construction: it must negate the max direction (frame[0]) and
  // fix the min direction.
  const int last = frame.axes.size() - 1;
  if (n % 2 == 0) return IsometryMap::reflect_in_vector(xi, frame.axes[last]);
  return IsometryMap::reflect_in_plane(xi, frame.axes[last - 1], frame.axes[last]);
}

double verify_congruence(const BodySpec& k, const BodySpec& l, const Vec& xi,
                         const IsometryMap& phi, const SubsphereLattice& lattice) {
  if (!phi.preserves_carrier(kCarrierTol) || std::abs(dot(phi.carrier(), xi)) < 1.0 - kCarrierTol) {
    throw Error(ErrorKind::kInvalidMap, "isometry does not act on the hyperplane xi-perp");
  }
  const OrthonormalFrame plane = hyperplane_frame(xi);
  double worst = 0.0;
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    const Vec theta = plane.lift(lattice.point(i));
    worst = std::max(worst, std::abs(k.value(phi.apply(theta)) - l.value(theta)));
  }
  return worst / k.scale();
}

CongruenceCertificate certify_direction(const BodyPair& pair, const Vec& xi, Group group,
                                        const SubsphereLattice& lattice) {
  const int n = pair.k.dim();
  const Classification cls = classify_direction(pair, xi);
  std::optional<PrincipalFrame> frame;
  if (group == Group::kSO) frame = principal_frame(pair.base_function(), xi);

  std::optional<CongruenceCertificate> best;
  for (CaseClass c : cls.candidates) {
    IsometryMap phi = group == Group::kO ? build_isometry_O(xi, c, cls.extrema)
                                         : build_isometry_SO(xi, c, *frame, n);
    const double residual = verify_congruence(pair.k, pair.l, xi, phi, lattice);
    if (!best || residual < best->residual) {
      best = CongruenceCertificate{xi,
                                   c,
                                   phi,
                                   isometry_det(phi, n),
                                   residual,
                                   lattice.size(),
                                   pair.k.flavor(),
                                   group,
                                   cls.borderline};
    }
  }
  return *best;
}

// ---------------------------------------------------------------------------
// Blind search

Vec FrameAlignedMap::apply(const Vec& x) const noexcept {
  Vec y(x.dim());
  for (int i = 0; i < frame.size(); ++i) {
    const double c = signs[static_cast<std::size_t>(i)] * dot(x, frame[i]);
    y += c * frame[perm[static_cast<std::size_t>(i)]];
  }
  return y;
}

std::vector<double> FrameAlignedMap::matrix(const OrthonormalFrame& basis) const {
  const int k = basis.size();
  std::vector<double> m(static_cast<std::size_t>(k * k));
  for (int j = 0; j < k; ++j) {
    const Vec image = apply(basis[j]);
    for (int i = 0; i < k; ++i) m[static_cast<std::size_t>(i * k + j)] = dot(basis[i], image);
  }
  return m;
}

namespace {

// Permutations of frame indices that only shuffle axes of (numerically) equal
// length, in lexicographic order starting from the identity.
std::vector<std::vector<int>> axis_permutations(const std::vector<double>& semi_axes) {
  const int k = static_cast<int>(semi_axes.size());
  std::vector<std::pair<int, int>> groups;  // [begin, end)
  for (int i = 0; i < k;) {
    int j = i + 1;
    while (j < k && std::abs(semi_axes[static_cast<std::size_t>(j)] -
                             semi_axes[static_cast<std::size_t>(i)]) <=
                        1e-9 * semi_axes.front()) {
      ++j;
    }
    groups.emplace_back(i, j);
    i = j;
  }
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> out;
  // Odometer over per-group permutations.
  while (true) {
    out.push_back(perm);
    std::size_t g = 0;
    for (; g < groups.size(); ++g) {
      auto first = perm.begin() + groups[g].first;
      auto last = perm.begin() + groups[g].second;
      if (std::next_permutation(first, last)) break;  // wraps to sorted on false
    }
    if (g == groups.size()) break;
  }
  return out;
}

}  // namespace

BlindResult blind_congruence_search(const SphereFunction& k, const SphereFunction& l,
                                    const QuadraticSphereFunction& base, const Vec& xi,
                                    const SubsphereLattice& lattice, double scale) {
  const PrincipalFrame pf = principal_frame(base, xi);
  const OrthonormalFrame plane = hyperplane_frame(xi);
  std::vector<Vec> thetas;
  std::vector<double> l_values;
  thetas.reserve(lattice.size());
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    thetas.push_back(plane.lift(lattice.point(i)));
    l_values.push_back(l(thetas.back()));
  }

  const int dim = pf.axes.size();
  std::optional<BlindResult> best;
  for (const std::vector<int>& perm : axis_permutations(pf.semi_axes)) {
    for (unsigned mask = 0; mask < (1u << dim); ++mask) {
      FrameAlignedMap map{pf.axes, perm, std::vector<int>(static_cast<std::size_t>(dim), 1)};
      for (int b = 0; b < dim; ++b) {
        if (mask & (1u << b)) map.signs[static_cast<std::size_t>(b)] = -1;
      }
      double worst = 0.0;
      for (std::size_t i = 0; i < thetas.size(); ++i) {
        worst = std::max(worst, std::abs(k(map.apply(thetas[i])) - l_values[i]));
        if (best && worst >= best->residual * scale) break;
      }
      const double residual = worst / scale;
      if (!best || residual < best->residual) best = BlindResult{std::move(map), residual};
    }
  }
  return *best;
}

BlindResult blind_congruence_search(const BodySpec& k, const BodySpec& l, const Vec& xi,
                                    const SubsphereLattice& lattice) {
  return blind_congruence_search([&k](const Vec& t) { return k.value(t); },
                                 [&l](const Vec& t) { return l.value(t); }, k.base_function(), xi,
                                 lattice, k.scale());
}

}  // namespace congruent
