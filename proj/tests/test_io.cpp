#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "congruent/error.hpp"
#include "congruent/io.hpp"

using namespace congruent;

namespace {

const char* const kHappy =
    R"({"n":3,"semi_axes":[3,2,1],"delta":"auto","epsilon":"auto","directions":1000,)"
    R"("subsphere_samples":10000,"seed":7,"suites":["sections-O"]})";

std::string config_error(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kConfig);
    return e.what();
  }
  FAIL("expected a config error");
  return {};
}

std::string with(const std::string& key, const std::string& value) {
  nlohmann::json doc = nlohmann::json::parse(kHappy);
  doc[key] = nlohmann::json::parse(value);
  return doc.dump();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path temp(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("congruent_test_" + name);
}

}  // namespace

TEST_CASE("happy-path config") {
  const RunConfig c = parse_config_text(kHappy);
  CHECK(c.n == 3);
  CHECK(c.semi_axes == std::vector<double>{3, 2, 1});
  CHECK_FALSE(c.delta.has_value());
  CHECK_FALSE(c.epsilon.has_value());
  CHECK(c.directions == 1000);
  CHECK(c.subsphere_samples == 10000);
  CHECK(c.seed == 7);
  CHECK(c.suites == std::vector<std::string>{"sections-O"});
}

TEST_CASE("config errors name the key") {
  CHECK(config_error(with("semi_axes", "[3,3,1]")) == "semi_axes must be strictly decreasing");
  CHECK(config_error(with("delta", "0.6")) == "delta exceeds max_delta 0.5");
  CHECK(config_error(with("delta", "\"big\"")) == "delta: expected \"auto\" or a number");
  CHECK(config_error(with("semi_axes", "[3,\"2\",1]")) == "semi_axes[1]: expected a number");
  CHECK(config_error(with("seed", "-1")) == "seed: expected a non-negative integer");
  CHECK(config_error(with("suites", "[\"sections-O\", 4]")) == "suites[1]: expected a string");
  CHECK(config_error(with("typo", "1")) == "typo: unknown key");
  nlohmann::json doc = nlohmann::json::parse(kHappy);
  doc.erase("seed");
  CHECK(config_error(doc.dump()) == "seed: missing");
  CHECK(config_error("[1,2]") == "$: expected a JSON object");
  CHECK(config_error("{").rfind("$: invalid JSON", 0) == 0);
}

TEST_CASE("config round trip") {
  RunConfig c = parse_config_text(kHappy);
  CHECK(parse_config(config_to_json(c)) == c);
  c.delta = 0.25;
  c.epsilon = 0.0031;
  c.seed = 0xffffffffffffffffULL;
  c.suites = {"lemmas", "sections-O", "convexity"};
  CHECK(parse_config(config_to_json(c)) == c);
  CHECK(parse_config_text(config_to_json(c).dump()) == c);
}

TEST_CASE("report JSON and residual CSV") {
  RunConfig c = parse_config_text(kHappy);
  c.directions = 10;
  c.subsphere_samples = 200;
  c.epsilon = 0.01;
  c.suites = {"sections-O", "projections-O"};
  const RunReport r = run_suite(c);

  std::ostringstream csv;
  write_residuals_csv(r, csv);
  std::istringstream lines(csv.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == "suite,xi_index,case,det,residual");
  std::map<std::string, std::size_t> rows;
  while (std::getline(lines, line)) ++rows[line.substr(0, line.find(','))];
  CHECK(rows["sections-O"] == 10);
  CHECK(rows["projections-O"] == 10);

  const auto json = report_to_json(r);
  CHECK(json["pass"] == true);
  CHECK(json["suites"].size() == 2);
  CHECK_FALSE(json["suites"][0].contains("wall_seconds"));
  CHECK(report_to_json(r, true)["suites"][0].contains("wall_seconds"));
  CHECK(parse_config(json["config"]) == c);

  const auto path = temp("report.json");
  emit_report(r, path);
  const std::string first = slurp(path);
  emit_report(run_suite(c), path);
  CHECK(slurp(path) == first);
  std::filesystem::remove(path);

  CHECK_THROWS_AS(emit_report(r, "/nonexistent-dir/x.json"), Error);
}

TEST_CASE("icosphere counts and closed orientation") {
  for (int level = 0; level <= 3; ++level) {
    const Mesh m = icosphere(level);
    const std::size_t p = std::size_t{1} << (2 * level);
    CHECK(m.vertices.size() == 10 * p + 2);
    CHECK(m.faces.size() == 20 * p);
    // Every directed edge appears once and its reverse once.
    std::set<std::pair<int, int>> edges;
    for (const auto& f : m.faces) {
      for (int k = 0; k < 3; ++k) CHECK(edges.insert({f[k], f[(k + 1) % 3]}).second);
    }
    for (const auto& [a, b] : edges) CHECK(edges.count({b, a}) == 1);
    // Outward normals.
    for (const auto& f : m.faces) {
      const auto& a = m.vertices[static_cast<std::size_t>(f[0])];
      const auto& b = m.vertices[static_cast<std::size_t>(f[1])];
      const auto& c = m.vertices[static_cast<std::size_t>(f[2])];
      const double u[3] = {b[0] - a[0], b[1] - a[1], b[2] - a[2]};
      const double v[3] = {c[0] - a[0], c[1] - a[1], c[2] - a[2]};
      const double nrm[3] = {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
                             u[0] * v[1] - u[1] * v[0]};
      CHECK(nrm[0] * (a[0] + b[0] + c[0]) + nrm[1] * (a[1] + b[1] + c[1]) +
                nrm[2] * (a[2] + b[2] + c[2]) >
            0.0);
    }
  }
}

TEST_CASE("OFF export") {
  const EllipsoidSpec e({3, 2, 1});
  const BodySpec plain(e, {0.4, 0.0}, Variant::kK, Flavor::kRadial);
  const auto path = temp("e.off");
  export_mesh(plain, 3, path);
  const std::string text = slurp(path);
  std::istringstream in(text);
  std::string header;
  std::size_t nv = 0;
  std::size_t nf = 0;
  std::size_t ne = 0;
  in >> header >> nv >> nf >> ne;
  CHECK(header == "OFF");
  CHECK(nv == 642);
  CHECK(nf == 1280);
  export_mesh(plain, 3, path);
  CHECK(slurp(path) == text);

  // Vertices lie on the ellipsoid.
  const Mesh m = body_mesh(plain, 2, "E");
  for (const auto& v : m.vertices) {
    const double q = v[0] * v[0] / 9 + v[1] * v[1] / 4 + v[2] * v[2];
    CHECK(q == doctest::Approx(1.0).epsilon(1e-12));
  }

  const BodySpec k(e, {0.4, 0.01}, Variant::kK, Flavor::kRadial);
  const BodySpec l(e, {0.4, 0.01}, Variant::kL, Flavor::kRadial);
  const Mesh mk = body_mesh(k, 1, "K");
  const Mesh ml = body_mesh(l, 1, "L");
  CHECK(mk.vertices != ml.vertices);
  std::filesystem::remove(path);

  const BodySpec k4(EllipsoidSpec({4, 3, 2, 1}), {0.4, 0.01}, Variant::kK, Flavor::kRadial);
  try {
    export_mesh(k4, 1, path);
    FAIL("expected an error");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::kUnsupportedDimension);
  }
}
