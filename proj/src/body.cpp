#include "congruent/body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "congruent/error.hpp"
#include "congruent/kernels.hpp"
#include "congruent/sampling.hpp"

namespace congruent {

double max_delta(const EllipsoidSpec& e) {
  double m = std::numeric_limits<double>::infinity();
  for (int i = 1; i < e.dim(); ++i) m = std::min(m, (e.axis(i - 1) - e.axis(i)) / 2.0);
  return m;
}

const char* to_string(RegionId region) {
  switch (region) {
    case RegionId::kI1: return "I1";
    case RegionId::kNegI1: return "-I1";
    case RegionId::kI2: return "I2";
    case RegionId::kOutside: return "outside";
  }
  return "unknown";
}

const char* to_string(Variant variant) { return variant == Variant::kK ? "K" : "L"; }

namespace {

// Evaluation slack for the profile domains: ρ_E(e₁) may round one ulp past a₁.
constexpr double kDomainSlack = 1e-12;

void require_in(double x, double lo, double hi, const char* what) {
  const double slack = kDomainSlack * std::max(1.0, std::abs(hi));
  if (!(x >= lo - slack && x <= hi + slack)) {
    std::ostringstream msg;
    msg << what << ": argument " << x << " outside [" << lo << ", " << hi << "]";
    throw Error(ErrorKind::kDomain, msg.str());
  }
}

}  // namespace

double h1(double x, const PerturbationParams& p, double a1) {
  require_in(x, a1 - p.delta, a1, "h1");
  const double d = a1 - x - p.delta;
  return x - p.epsilon * d * d * d;
}

double h2(double x, const PerturbationParams& p, double an) {
  require_in(x, an, an + p.delta, "h2");
  const double d = x - an - p.delta;
  return x + p.epsilon * d * d * d;
}

BodySpec::BodySpec(EllipsoidSpec base, PerturbationParams params, Variant variant, Flavor flavor)
    : base_(std::move(base)),
      fn_(QuadraticSphereFunction::of(base_, flavor)),
      params_(params),
      variant_(variant),
      a1_(base_.largest()),
      an_(base_.smallest()) {
  const double limit = max_delta(base_);
  if (!(params.delta > 0.0 && params.delta < limit)) {
    std::ostringstream msg;
    msg << "delta " << params.delta << " must lie in (0, " << limit << ")";
    throw Error(ErrorKind::kInvalidInput, msg.str());
  }
  if (!std::isfinite(params.epsilon) || params.epsilon < 0.0) {
    throw Error(ErrorKind::kInvalidInput, "epsilon must be finite and non-negative");
  }
}

double BodySpec::eval(const Vec& theta) const {
  require_unit(theta, "theta");
  if (theta.dim() != dim()) throw Error(ErrorKind::kInvalidInput, "theta has wrong dimension");
  return value(theta);
}

RegionId BodySpec::region(const Vec& theta) const {
  require_unit(theta, "theta");
  if (theta.dim() != dim()) throw Error(ErrorKind::kInvalidInput, "theta has wrong dimension");
  return region_unchecked(theta);
}

RegionId BodySpec::region_unchecked(const Vec& theta) const noexcept {
  const double base = fn_.value(theta);
  if (a1_ - base < params_.delta) {
    if (theta[0] > 0.0) return RegionId::kI1;
    if (theta[0] < 0.0) return RegionId::kNegI1;
  }
  if (base - an_ < params_.delta && theta[theta.dim() - 1] > 0.0) return RegionId::kI2;
  return RegionId::kOutside;
}

BodyPair BodyPair::make(const EllipsoidSpec& base, const PerturbationParams& params,
                        Flavor flavor) {
  return {BodySpec(base, params, Variant::kK, flavor), BodySpec(base, params, Variant::kL, flavor)};
}

double convexity_check(const BodySpec& body, std::size_t sample_count, int threads) {
  const std::vector<Vec> dirs = sample_sphere(body.dim(), sample_count, 0xc0417e8ULL);
  if (body.flavor() == Flavor::kRadial) {
    return kernels::radial_convexity_omp(body, dirs, threads);
  }
  return kernels::support_convexity_omp(body, dirs, threads);
}

CalibrationResult calibrate_epsilon(const EllipsoidSpec& e, double delta,
                                    const CalibrationOptions& options) {
  const double a1 = e.largest();
  double eps = options.initial_epsilon > 0.0 ? options.initial_epsilon : 0.1 / (a1 * a1);
  CalibrationResult result;
  for (; eps >= kMinEpsilon; eps /= 2.0, ++result.halvings) {
    double worst = 0.0;
    for (Flavor flavor : options.flavors) {
      const BodyPair pair = BodyPair::make(e, {delta, eps}, flavor);
      worst = std::max(worst, convexity_check(pair.k, options.sample_count, options.threads));
      if (worst > kConvexityTol * a1) break;
      worst = std::max(worst, convexity_check(pair.l, options.sample_count, options.threads));
      if (worst > kConvexityTol * a1) break;
    }
    if (worst <= kConvexityTol * a1) {
      result.epsilon = eps;
      result.residual = worst;
      return result;
    }
  }
  throw Error(ErrorKind::kCalibrationFailure,
              "no epsilon above 1e-12 yields convex bodies; the convexity probe is suspect");
}

Distinctness distinctness_check(const BodySpec& k, const BodySpec& l, std::size_t sample_count,
                                std::uint64_t seed) {
  std::vector<Vec> dirs = sample_sphere(k.dim(), sample_count, seed);
  for (int i = 0; i < k.dim(); ++i) {
    dirs.push_back(Vec::axis(k.dim(), i));
    dirs.push_back(-Vec::axis(k.dim(), i));
  }
  Distinctness d;
  for (const Vec& theta : dirs) {
    const double lv = l.value(theta);
    d.d_id = std::max(d.d_id, std::abs(k.value(theta) - lv));
    d.d_neg = std::max(d.d_neg, std::abs(k.value(-theta) - lv));
  }
  return d;
}

}  // namespace congruent
