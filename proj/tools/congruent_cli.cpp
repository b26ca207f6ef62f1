// congruent: build the perturbed-ellipsoid pair, certify its sections and
// projections, and export meshes.
//
//   congruent construct [--config PATH]
//   congruent verify --config PATH [--out PATH] [--timings]
//   congruent report --config PATH --out PATH --csv PATH
//   congruent export-mesh --body K|L --level N --out PATH [--config PATH]
//
// Exit codes: 0 all suites pass, 1 some suite failed, 2 bad config or usage.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <omp.h>

#include "congruent/error.hpp"
#include "congruent/io.hpp"

namespace {

using namespace congruent;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct Common {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  int jobs = 0;
};

RunConfig load_config(const Common& common, bool required) {
  RunConfig config;
  if (!common.config_path.empty()) {
    config = parse_config_file(common.config_path);
  } else if (required) {
    throw Error(ErrorKind::kConfig, "--config is required");
  }
  if (common.seed) config.seed = *common.seed;
  return config;
}

void print_timings(const RunReport& report) {
  for (const SuiteReport& s : report.suites) {
    std::fprintf(stderr, "%-14s %s  %.3f s\n", s.name.c_str(), s.pass ? "pass" : "FAIL",
                 s.wall_seconds);
  }
}

int cmd_construct(const Common& common) {
  const RunConfig config = load_config(common, false);
  const ResolvedParams p = resolve_params(config, common.jobs);
  const EllipsoidSpec base(config.semi_axes);
  std::printf("semi_axes:");
  for (double a : config.semi_axes) std::printf(" %.17g", a);
  std::printf("\nmax_delta: %.17g\ndelta:     %.17g\nepsilon:   %.17g%s\n", p.max_delta, p.delta,
              p.epsilon, p.calibrated ? " (calibrated)" : "");
  if (p.calibrated) std::printf("halvings:  %d\n", p.halvings);
  std::printf("eps*delta^3: %.17g\n", p.epsilon * p.delta * p.delta * p.delta);
  for (Flavor flavor : {Flavor::kRadial, Flavor::kSupport}) {
    const BodyPair pair = BodyPair::make(base, {p.delta, p.epsilon}, flavor);
    const Distinctness d = distinctness_check(pair.k, pair.l, 100000);
    std::printf("%-8s d_id = %.17g  d_neg = %.17g\n", to_string(flavor), d.d_id, d.d_neg);
  }
  return kExitPass;
}

int cmd_verify(const Common& common, const std::string& out, const std::string& csv,
               bool timings) {
  const RunConfig config = load_config(common, true);
  RunOptions options;
  options.threads = common.jobs;
  const RunReport report = run_suite(config, options);
  if (out.empty()) {
    std::cout << report_to_json(report, timings).dump(2) << "\n";
  } else {
    emit_report(report, out, timings);
  }
  if (!csv.empty()) emit_residuals_csv(report, csv);
  print_timings(report);
  return report.pass ? kExitPass : kExitFail;
}

int cmd_export_mesh(const Common& common, const std::string& which, int level,
                    const std::string& out) {
  const RunConfig config = load_config(common, false);
  const ResolvedParams p = resolve_params(config, common.jobs);
  const BodyPair pair =
      BodyPair::make(EllipsoidSpec(config.semi_axes), {p.delta, p.epsilon}, Flavor::kRadial);
  export_mesh(which == "K" ? pair.k : pair.l, level, out, "body " + which);
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Perturbed ellipsoids with congruent sections and projections"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--config", common.config_path, "JSON run config")->check(CLI::ExistingFile);
  app.add_option("--seed", common.seed, "override the config seed");
  app.add_option("--jobs", common.jobs, "worker threads (does not change output)")
      ->check(CLI::NonNegativeNumber);

  auto* construct = app.add_subcommand("construct", "print body parameters and distinctness gaps");

  std::string out;
  std::string csv;
  bool timings = false;
  auto* verify = app.add_subcommand("verify", "run the configured suites");
  verify->add_option("--out", out, "write the JSON report here instead of stdout");
  verify->add_option("--csv", csv, "also write per-direction residuals");
  verify->add_flag("--timings", timings, "include wall times in the report");

  auto* report = app.add_subcommand("report", "write the JSON report and residual CSV");
  report->add_option("--out", out, "JSON report path")->required();
  report->add_option("--csv", csv, "residual CSV path")->required();
  report->add_flag("--timings", timings, "include wall times in the report");

  std::string body = "K";
  int level = 3;
  auto* mesh = app.add_subcommand("export-mesh", "write an OFF mesh of K or L (n = 3)");
  mesh->add_option("--body", body, "K or L")->check(CLI::IsMember({"K", "L"}));
  mesh->add_option("--level", level, "icosphere subdivision level")->check(CLI::Range(0, 8));
  mesh->add_option("--out", out, "OFF path")->required();

  // Global options are accepted after the subcommand too.
  for (CLI::App* sub : {construct, verify, report, mesh}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfig;
  }

  if (common.jobs > 0) omp_set_num_threads(common.jobs);
  try {
    if (*construct) return cmd_construct(common);
    if (*verify || *report) return cmd_verify(common, out, csv, timings);
    if (*mesh) return cmd_export_mesh(common, body, level, out);
  } catch (const Error& e) {
    std::fprintf(stderr, "error (%s): %s\n", std::string(to_string(e.kind())).c_str(), e.what());
    switch (e.kind()) {
      case ErrorKind::kConfig:
      case ErrorKind::kIo:
      case ErrorKind::kInvalidInput:
      case ErrorKind::kUnsupportedDimension:
        return kExitConfig;
      default:
        return kExitFail;
    }
  }
  return kExitConfig;
}
