#include "congruent/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "congruent/error.hpp"

namespace congruent {

using nlohmann::json;

namespace {

[[noreturn]] void key_error(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::kConfig, path + ": " + what);
}

const json& require(const json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) key_error(key, "missing");
  return *it;
}

std::uint64_t require_unsigned(const json& doc, const char* key) {
  const json& v = require(doc, key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  key_error(key, "expected a non-negative integer");
}

std::optional<double> auto_or_number(const json& doc, const char* key) {
  const json& v = require(doc, key);
  if (v.is_string() && v.get<std::string>() == "auto") return std::nullopt;
  if (v.is_number()) return v.get<double>();
  key_error(key, "expected \"auto\" or a number");
}

json auto_or_number(const std::optional<double>& v) {
  return v ? json(*v) : json("auto");
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot open " + path.string() + " for writing");
  out << bytes;
  out.flush();
  if (!out) throw Error(ErrorKind::kIo, "failed writing " + path.string());
}

}  // namespace

RunConfig parse_config(const json& doc) {
  static const char* const kKeys[] = {"n",    "semi_axes", "delta", "epsilon", "directions",
                                      "subsphere_samples", "seed", "suites"};
  if (!doc.is_object()) key_error("$", "expected a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (std::find_if(std::begin(kKeys), std::end(kKeys),
                     [&](const char* k) { return key == k; }) == std::end(kKeys)) {
      key_error(key, "unknown key");
    }
  }

  RunConfig c;
  const std::uint64_t n = require_unsigned(doc, "n");
  if (n > 64) key_error("n", "out of range");
  c.n = static_cast<int>(n);

  const json& axes = require(doc, "semi_axes");
  if (!axes.is_array()) key_error("semi_axes", "expected an array of numbers");
  c.semi_axes.clear();
  for (std::size_t i = 0; i < axes.size(); ++i) {
    if (!axes[i].is_number()) {
      key_error("semi_axes[" + std::to_string(i) + "]", "expected a number");
    }
    c.semi_axes.push_back(axes[i].get<double>());
  }

  c.delta = auto_or_number(doc, "delta");
  c.epsilon = auto_or_number(doc, "epsilon");
  c.directions = require_unsigned(doc, "directions");
  c.subsphere_samples = require_unsigned(doc, "subsphere_samples");
  c.seed = require_unsigned(doc, "seed");

  const json& suites = require(doc, "suites");
  if (!suites.is_array()) key_error("suites", "expected an array of strings");
  c.suites.clear();
  for (std::size_t i = 0; i < suites.size(); ++i) {
    if (!suites[i].is_string()) {
      key_error("suites[" + std::to_string(i) + "]", "expected a string");
    }
    c.suites.push_back(suites[i].get<std::string>());
  }

  validate_config(c);
  return c;
}

RunConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kConfig, std::string("$: invalid JSON: ") + e.what());
  }
  return parse_config(doc);
}

RunConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kConfig, "cannot read config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str());
}

json config_to_json(const RunConfig& c) {
  return json{{"n", c.n},
              {"semi_axes", c.semi_axes},
              {"delta", auto_or_number(c.delta)},
              {"epsilon", auto_or_number(c.epsilon)},
              {"directions", c.directions},
              {"subsphere_samples", c.subsphere_samples},
              {"seed", c.seed},
              {"suites", c.suites}};
}

json report_to_json(const RunReport& report, bool include_timings) {
  json suites = json::array();
  for (const SuiteReport& s : report.suites) {
    json failures = json::array();
    for (const Failure& f : s.failures) {
      json entry{{"kind", f.kind}, {"message", f.message}};
      entry["xi_index"] = f.xi_index ? json(*f.xi_index) : json(nullptr);
      if (!f.xi.empty()) entry["xi"] = f.xi;
      failures.push_back(std::move(entry));
    }
    json worst = nullptr;
    if (s.worst) {
      worst = json{{"xi_index", s.worst->xi_index}, {"xi", s.worst->xi},
                   {"case", s.worst->case_class},   {"map", s.worst->map},
                   {"det", s.worst->det},           {"residual", s.worst->residual}};
    }
    json entry{{"name", s.name},
               {"pass", s.pass},
               {"tolerance", s.tolerance},
               {"max_residual", s.max_residual},
               {"histogram",
                {{"log10_lo", kHistogramLo}, {"log10_hi", kHistogramHi}, {"counts", s.histogram}}},
               {"case_counts", s.case_counts},
               {"worst", worst},
               {"failures", failures},
               {"metrics", s.metrics}};
    if (include_timings) entry["wall_seconds"] = s.wall_seconds;
    suites.push_back(std::move(entry));
  }
  const ResolvedParams& r = report.resolved;
  return json{{"config", config_to_json(report.config)},
              {"resolved",
               {{"delta", r.delta},
                {"epsilon", r.epsilon},
                {"max_delta", r.max_delta},
                {"halvings", r.halvings},
                {"calibrated", r.calibrated}}},
              {"suites", suites},
              {"pass", report.pass}};
}

void emit_report(const RunReport& report, const std::filesystem::path& path,
                 bool include_timings) {
  write_file(path, report_to_json(report, include_timings).dump(2) + "\n");
}

void write_residuals_csv(const RunReport& report, std::ostream& out) {
  out << "suite,xi_index,case,det,residual\n";
  for (const SuiteReport& s : report.suites) {
    for (const ResidualRow& row : s.rows) {
      out << s.name << ',' << row.xi_index << ',' << row.case_class << ',' << row.det << ','
          << format_double(row.residual) << '\n';
    }
  }
}

void emit_residuals_csv(const RunReport& report, const std::filesystem::path& path) {
  std::ostringstream out;
  write_residuals_csv(report, out);
  write_file(path, out.str());
}

// ---------------------------------------------------------------------------
// Mesh

Mesh icosphere(int level) {
  if (level < 0 || level > 8) throw Error(ErrorKind::kInvalidInput, "level must be in [0, 8]");
  const double p = (1.0 + std::sqrt(5.0)) / 2.0;
  Mesh m;
  m.vertices = {{-1, p, 0}, {1, p, 0}, {-1, -p, 0}, {1, -p, 0}, {0, -1, p}, {0, 1, p},
                {0, -1, -p}, {0, 1, -p}, {p, 0, -1}, {p, 0, 1}, {-p, 0, -1}, {-p, 0, 1}};
  m.faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
             {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
             {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
             {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  auto unit = [](std::array<double, 3> v) {
    const double r = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    return std::array<double, 3>{v[0] / r, v[1] / r, v[2] / r};
  };
  for (auto& v : m.vertices) v = unit(v);

  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
      const auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      const auto& u = m.vertices[static_cast<std::size_t>(a)];
      const auto& v = m.vertices[static_cast<std::size_t>(b)];
      m.vertices.push_back(unit({u[0] + v[0], u[1] + v[1], u[2] + v[2]}));
      const int id = static_cast<int>(m.vertices.size()) - 1;
      midpoint.emplace(key, id);
      return id;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(m.faces.size() * 4);
    for (const auto& f : m.faces) {
      const int ab = mid(f[0], f[1]);
      const int bc = mid(f[1], f[2]);
      const int ca = mid(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    m.faces = std::move(next);
  }
  m.label = "icosphere";
  return m;
}

Mesh body_mesh(const BodySpec& body, int level, std::string label) {
  if (body.dim() != 3) {
    throw Error(ErrorKind::kUnsupportedDimension, "mesh export needs n = 3");
  }
  if (body.flavor() != Flavor::kRadial) {
    throw Error(ErrorKind::kInvalidInput, "mesh export needs a radial-flavor body");
  }
  Mesh m = icosphere(level);
  m.label = std::move(label);
  for (auto& v : m.vertices) {
    const double r = body.value(Vec{v[0], v[1], v[2]});
    v = {r * v[0], r * v[1], r * v[2]};
  }
  return m;
}

void write_off(const Mesh& mesh, std::ostream& out) {
  out << "OFF\n";
  if (!mesh.label.empty()) out << "# " << mesh.label << "\n";
  out << mesh.vertices.size() << ' ' << mesh.faces.size() << " 0\n";
  for (const auto& v : mesh.vertices) {
    out << format_double(v[0]) << ' ' << format_double(v[1]) << ' ' << format_double(v[2])
        << '\n';
  }
  for (const auto& f : mesh.faces) out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
}

void export_mesh(const BodySpec& body, int level, const std::filesystem::path& path,
                 std::string label) {
  const Mesh mesh = body_mesh(body, level, std::move(label));
  std::ostringstream out;
  write_off(mesh, out);
  write_file(path, out.str());
}

}  // namespace congruent
