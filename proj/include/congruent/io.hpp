#pragma once

// Config parsing, report/CSV serialization and OFF mesh export. All output is
// byte-stable for a fixed input: keys are sorted and doubles are printed in
// shortest round-trip form.

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "congruent/harness.hpp"

namespace congruent {

/// Strict: all keys required, unknown keys rejected. Errors are
/// Error(kConfig) whose message starts with the offending key path.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::filesystem::path& path);

nlohmann::json config_to_json(const RunConfig& config);

/// Wall times are only included when asked, so that reports from identical
/// configs compare equal byte for byte.
nlohmann::json report_to_json(const RunReport& report, bool include_timings = false);

void emit_report(const RunReport& report, const std::filesystem::path& path,
                 bool include_timings = false);

/// Columns: suite, xi_index, case, det, residual. One row per certified
/// direction of every congruence suite that ran.
void emit_residuals_csv(const RunReport& report, const std::filesystem::path& path);
void write_residuals_csv(const RunReport& report, std::ostream& out);

struct Mesh {
  std::string label;
  std::vector<std::array<double, 3>> vertices;
  std::vector<std::array<int, 3>> faces;  // counter-clockwise seen from outside
};

/// Unit icosphere after `level` midpoint subdivisions:
/// 10·4^level + 2 vertices and 20·4^level faces.
Mesh icosphere(int level);

/// Boundary of a radial-flavor body in ℝ³: every icosphere vertex θ is moved
/// to value(θ)·θ.
Mesh body_mesh(const BodySpec& body, int level, std::string label);

void write_off(const Mesh& mesh, std::ostream& out);
void export_mesh(const BodySpec& body, int level, const std::filesystem::path& path,
                 std::string label = {});

}  // namespace congruent
