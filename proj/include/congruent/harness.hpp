#pragma once

// Certification runs: resolve δ and ε, sweep seeded directions through the
// congruence engine, run the property checks, and aggregate everything into a
// report whose contents depend only on the config (never on thread count).

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "congruent/body.hpp"
#include "congruent/congruence.hpp"

namespace congruent {

inline constexpr const char* kSuiteNames[] = {"sections-O", "projections-O", "sections-SO",
                                              "lemmas",     "distinctness",  "convexity"};

struct RunConfig {
  int n = 3;
  std::vector<double> semi_axes = {3.0, 2.0, 1.0};
  std::optional<double> delta;    // nullopt: 0.8 · max_delta
  std::optional<double> epsilon;  // nullopt: calibrated
  std::size_t directions = 1000;
  std::size_t subsphere_samples = 10000;
  std::uint64_t seed = 7;
  std::vector<std::string> suites = {"sections-O"};

  bool operator==(const RunConfig&) const = default;
};

/// Throws Error(kConfig) describing the first problem found.
void validate_config(const RunConfig& config);

struct RunOptions {
  int threads = 0;
  std::size_t convexity_samples = kDefaultConvexitySamples;
  /// Lattice size of the brute-force oracle in the "lemmas" suite.
  std::size_t brute_samples = 100000;
  std::size_t distinctness_samples = 100000;
};

inline constexpr int kHistogramBins = 32;
inline constexpr double kHistogramLo = -20.0;  // log10 of the first bin's lower edge
inline constexpr double kHistogramHi = 0.0;

/// Bin of a residual; 0 and anything below 1e-20 land in bin 0, anything at
/// or above 1 in the last bin.
int histogram_bin(double residual);

struct ResidualRow {
  std::size_t xi_index = 0;
  std::string case_class;
  int det = 1;
  double residual = 0.0;
};

struct Failure {
  /// Direction index, or nullopt for a suite-level failure.
  std::optional<std::size_t> xi_index;
  std::string kind;
  std::string message;
  std::vector<double> xi;
};

struct WorstRecord {
  std::size_t xi_index = 0;
  std::vector<double> xi;
  std::string case_class;
  std::string map;
  int det = 1;
  double residual = 0.0;
};

struct SuiteReport {
  std::string name;
  bool pass = true;
  double tolerance = 0.0;
  double max_residual = 0.0;
  std::array<std::uint64_t, kHistogramBins> histogram{};
  std::map<std::string, std::size_t> case_counts;
  std::optional<WorstRecord> worst;
  std::vector<ResidualRow> rows;
  std::vector<Failure> failures;
  std::map<std::string, double> metrics;
  double wall_seconds = 0.0;
};

struct ResolvedParams {
  double delta = 0.0;
  double epsilon = 0.0;
  double max_delta = 0.0;
  int halvings = 0;
  bool calibrated = false;
};

struct RunReport {
  RunConfig config;
  ResolvedParams resolved;
  std::vector<SuiteReport> suites;
  bool pass = true;
};

/// δ and ε as the run will use them (calibrating ε if the config asks).
ResolvedParams resolve_params(const RunConfig& config, int threads = 0);

/// Runs every requested suite in the order given. Per-direction errors and
/// unsupported suites are recorded as failures; only an invalid config throws.
RunReport run_suite(const RunConfig& config, const RunOptions& options = {});

}  // namespace congruent
