#include "congruent/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "congruent/checks.hpp"
#include "congruent/error.hpp"
#include "congruent/kernels.hpp"

namespace congruent {

namespace {

[[noreturn]] void config_error(const std::string& message) {
  throw Error(ErrorKind::kConfig, message);
}

std::vector<double> coords_of(const Vec& v) {
  const auto c = v.coords();
  return {c.begin(), c.end()};
}

void record(SuiteReport& suite, double residual) {
  suite.max_residual = std::max(suite.max_residual, residual);
  ++suite.histogram[static_cast<std::size_t>(histogram_bin(residual))];
}

void fail(SuiteReport& suite, std::string kind, std::string message,
          std::optional<std::size_t> index = std::nullopt, std::vector<double> xi = {}) {
  suite.pass = false;
  suite.failures.push_back({index, std::move(kind), std::move(message), std::move(xi)});
}

std::string describe(const IsometryMap& map) {
  std::ostringstream out;
  out.precision(17);
  out << to_string(map.kind());
  for (const Vec& axis : map.axes()) {
    out << " [";
    for (int i = 0; i < axis.dim(); ++i) out << (i ? "," : "") << axis[i];
    out << "]";
  }
  return out.str();
}

// Sections or projections under O(n−1) or SO(n−1).
void run_congruence(SuiteReport& suite, const RunConfig& config, const ResolvedParams& params,
                    Flavor flavor, Group group, const RunOptions& options) {
  suite.tolerance = 1e-9;
  if (group == Group::kSO && config.n < 4) {
    fail(suite, std::string(to_string(ErrorKind::kUnsupportedDimension)),
         "orientation-preserving congruences need n >= 4");
    return;
  }
  const EllipsoidSpec base(config.semi_axes);
  const BodyPair pair = BodyPair::make(base, {params.delta, params.epsilon}, flavor);
  const std::vector<Vec> directions = sample_sphere(config.n, config.directions, config.seed);
  const SubsphereLattice lattice(config.n - 1, config.subsphere_samples);
  const auto outcomes = kernels::sweep_directions_omp(pair, directions, group, lattice,
                                                      options.threads);

  std::size_t borderline = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& out = outcomes[i];
    if (!out.certificate) {
      ++suite.case_counts["error"];
      fail(suite, std::string(to_string(out.error_kind)), out.error, i, coords_of(directions[i]));
      continue;
    }
    const CongruenceCertificate& c = *out.certificate;
    const std::string case_name = to_string(c.case_class);
    ++suite.case_counts[case_name];
    if (c.borderline) ++borderline;
    record(suite, c.residual);
    suite.rows.push_back({i, case_name, c.det, c.residual});
    if (!suite.worst || c.residual > suite.worst->residual) {
      suite.worst = WorstRecord{i, coords_of(c.xi), case_name, describe(c.map), c.det, c.residual};
    }
    if (!(c.residual <= suite.tolerance)) {
      std::ostringstream msg;
      msg << "residual " << c.residual << " exceeds " << suite.tolerance;
      fail(suite, "residual", msg.str(), i, coords_of(c.xi));
    }
    if (group == Group::kSO && c.det != 1) {
      fail(suite, "orientation", "map is not orientation preserving", i, coords_of(c.xi));
    }
  }
  suite.metrics["borderline"] = static_cast<double>(borderline);
  suite.metrics["subsphere_samples"] = static_cast<double>(lattice.size());
}

void absorb(SuiteReport& suite, const CheckResult& check, const std::string& prefix) {
  suite.metrics[prefix + ".checked"] = static_cast<double>(check.checked);
  suite.metrics[prefix + ".violations"] = static_cast<double>(check.violations);
  suite.metrics[prefix + ".worst"] = check.worst;
  if (!check.pass) fail(suite, "check", prefix + ": " + check.detail);
}

void run_lemmas(SuiteReport& suite, const RunConfig& config, const ResolvedParams& params,
                const RunOptions& options) {
  const EllipsoidSpec base(config.semi_axes);
  ConeCheckOptions cones;
  cones.seed = config.seed ^ 0x2301ULL;
  absorb(suite, check_level_cones(base, cones), "cones");

  ExtremaCheckOptions extrema;
  extrema.directions = config.directions;
  extrema.samples = options.brute_samples;
  extrema.seed = config.seed ^ 0x2502ULL;
  for (Flavor flavor : {Flavor::kRadial, Flavor::kSupport}) {
    const CheckResult r = check_subsphere_extrema(QuadraticSphereFunction::of(base, flavor), base,
                                                  extrema);
    suite.max_residual = std::max(suite.max_residual, r.worst);
    absorb(suite, r, std::string("extrema.") + to_string(flavor));
  }
  suite.tolerance = extrema.value_tol;

  LevelSetCheckOptions levels;
  levels.seed = config.seed ^ 0x3103ULL;
  for (Flavor flavor : {Flavor::kRadial, Flavor::kSupport}) {
    const BodyPair pair = BodyPair::make(base, {params.delta, params.epsilon}, flavor);
    absorb(suite, check_level_sets(pair, levels), std::string("level-sets.") + to_string(flavor));
  }
}

void run_distinctness(SuiteReport& suite, const RunConfig& config, const ResolvedParams& params,
                      const RunOptions& options) {
  const EllipsoidSpec base(config.semi_axes);
  suite.tolerance = 1e-6;
  for (Flavor flavor : {Flavor::kRadial, Flavor::kSupport}) {
    const BodyPair pair = BodyPair::make(base, {params.delta, params.epsilon}, flavor);
    const Distinctness d = distinctness_check(pair.k, pair.l, options.distinctness_samples);
    const std::string prefix = to_string(flavor);
    suite.metrics[prefix + ".d_id"] = d.d_id;
    suite.metrics[prefix + ".d_neg"] = d.d_neg;
    const CheckResult r = check_distinctness(pair, options.distinctness_samples, suite.tolerance);
    suite.max_residual = std::max(suite.max_residual, r.worst);
    if (params.epsilon == 0.0) {
      fail(suite, "check", prefix + ": epsilon is 0, so K = L");
    } else if (!r.pass) {
      fail(suite, "check", prefix + ": " + r.detail);
    }
  }
  const double d = params.delta;
  suite.metrics["epsilon_delta_cubed"] = params.epsilon * d * d * d;
}

void run_convexity(SuiteReport& suite, const RunConfig& config, const ResolvedParams& params,
                   const RunOptions& options) {
  const EllipsoidSpec base(config.semi_axes);
  suite.tolerance = kConvexityTol;
  for (Flavor flavor : {Flavor::kRadial, Flavor::kSupport}) {
    const BodyPair pair = BodyPair::make(base, {params.delta, params.epsilon}, flavor);
    for (const BodySpec* body : {&pair.k, &pair.l}) {
      const double r =
          convexity_check(*body, options.convexity_samples, options.threads) / base.largest();
      const std::string label =
          std::string(to_string(body->variant())) + "." + to_string(flavor);
      suite.metrics[label] = r;
      record(suite, r);
      if (!(r <= suite.tolerance)) {
        std::ostringstream msg;
        msg << label << " residual " << r << " exceeds " << suite.tolerance;
        fail(suite, "convexity", msg.str());
      }
    }
  }
}

}  // namespace

int histogram_bin(double residual) {
  if (!(residual > 0.0)) return 0;
  const double t = (std::log10(residual) - kHistogramLo) / (kHistogramHi - kHistogramLo);
  const int bin = static_cast<int>(std::floor(t * kHistogramBins));
  return std::clamp(bin, 0, kHistogramBins - 1);
}

void validate_config(const RunConfig& config) {
  if (config.n < kMinDim || config.n > kMaxDim) {
    config_error("n: must be between " + std::to_string(kMinDim) + " and " +
                 std::to_string(kMaxDim));
  }
  if (config.semi_axes.size() != static_cast<std::size_t>(config.n)) {
    config_error("semi_axes: must have n = " + std::to_string(config.n) + " entries");
  }
  std::optional<EllipsoidSpec> base;
  try {
    base.emplace(config.semi_axes);
  } catch (const Error& e) {
    config_error(e.what());
  }
  if (config.delta) {
    const double md = max_delta(*base);
    if (!std::isfinite(*config.delta) || *config.delta <= 0.0) {
      config_error("delta: must be positive");
    }
    if (*config.delta >= md) {
      std::ostringstream msg;
      msg << "delta exceeds max_delta " << md;
      config_error(msg.str());
    }
  }
  if (config.epsilon && (!std::isfinite(*config.epsilon) || *config.epsilon < 0.0)) {
    config_error("epsilon: must be a finite number >= 0");
  }
  if (config.directions < 1) config_error("directions: must be at least 1");
  if (config.subsphere_samples < 1) config_error("subsphere_samples: must be at least 1");
  if (config.suites.empty()) config_error("suites: must name at least one suite");
  for (std::size_t i = 0; i < config.suites.size(); ++i) {
    const std::string& s = config.suites[i];
    if (std::find(std::begin(kSuiteNames), std::end(kSuiteNames), s) == std::end(kSuiteNames)) {
      config_error("suites[" + std::to_string(i) + "]: unknown suite '" + s + "'");
    }
    if (std::find(config.suites.begin(), config.suites.begin() + static_cast<long>(i), s) !=
        config.suites.begin() + static_cast<long>(i)) {
      config_error("suites[" + std::to_string(i) + "]: duplicate suite '" + s + "'");
    }
  }
}

ResolvedParams resolve_params(const RunConfig& config, int threads) {
  validate_config(config);
  const EllipsoidSpec base(config.semi_axes);
  ResolvedParams out;
  out.max_delta = max_delta(base);
  out.delta = config.delta.value_or(0.8 * out.max_delta);
  if (config.epsilon) {
    out.epsilon = *config.epsilon;
  } else {
    CalibrationOptions opts;
    opts.threads = threads;
    const CalibrationResult cal = calibrate_epsilon(base, out.delta, opts);
    out.epsilon = cal.epsilon;
    out.halvings = cal.halvings;
    out.calibrated = true;
  }
  return out;
}

RunReport run_suite(const RunConfig& config, const RunOptions& options) {
  RunReport report;
  report.config = config;
  report.resolved = resolve_params(config, options.threads);

  for (const std::string& name : config.suites) {
    SuiteReport suite;
    suite.name = name;
    const auto start = std::chrono::steady_clock::now();
    try {
      if (name == "sections-O") {
        run_congruence(suite, config, report.resolved, Flavor::kRadial, Group::kO, options);
      } else if (name == "projections-O") {
        run_congruence(suite, config, report.resolved, Flavor::kSupport, Group::kO, options);
      } else if (name == "sections-SO") {
        run_congruence(suite, config, report.resolved, Flavor::kRadial, Group::kSO, options);
      } else if (name == "lemmas") {
        run_lemmas(suite, config, report.resolved, options);
      } else if (name == "distinctness") {
        run_distinctness(suite, config, report.resolved, options);
      } else if (name == "convexity") {
        run_convexity(suite, config, report.resolved, options);
      }
    } catch (const Error& e) {
      fail(suite, std::string(to_string(e.kind())), e.what());
    }
    suite.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.pass = report.pass && suite.pass;
    report.suites.push_back(std::move(suite));
  }
  return report;
}

}  // namespace congruent
