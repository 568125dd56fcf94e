#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "dirac/cli/commands.hpp"
#include "dirac/cli/scenario.hpp"
#include "dirac/cli/table.hpp"
#include "dirac/cli/verify.hpp"

using namespace dirac;
using namespace dirac::cli;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const fs::path p = fs::temp_directory_path() / ("dirac_test_" + name);
  std::ofstream(p) << text;
  return p.string();
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  FAIL("missing column " << name);
  return 0;
}

const char* kKlauderBrackets = R"({"model": "klauder", "seed": 7, "samples": 20,
  "params": {"alpha": 1.3, "k": 0.5}})";

}  // namespace

TEST_CASE("scenario parsing rejects malformed documents") {
  CHECK_THROWS_AS(parse_scenario("{"), ConfigError);
  CHECK_THROWS_AS(parse_scenario(R"({"model": "klauder", "bogus": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_scenario(R"({"model": "string"})"), ConfigError);
  CHECK_THROWS_AS(parse_scenario(R"({"model": "klauder", "params": {"alpha": -1}})"), ConfigError);
  CHECK_THROWS_AS(parse_scenario(R"({"model": "klauder", "integrator": {"dt": 0}})"), ConfigError);
  CHECK_THROWS_AS(parse_scenario(R"({"model": "maxwell", "params": {"side": 99}})"), ConfigError);
  CHECK_THROWS_AS(parse_scenario(R"({"model": "klauder", "flow": {"kind": "sideways"}})"),
                  ConfigError);
  CHECK_THROWS_AS(load_scenario("/nonexistent/file.json"), ConfigError);
}

TEST_CASE("scenario parsing fills the typed fields") {
  auto s = parse_scenario(R"({"model": "klauder", "seed": 9, "samples": 3,
    "params": {"alpha": 2.0, "k": [1.0, 0.25], "hbar": 0.5,
               "potential": {"type": "poly", "coeffs": [0, 1]}},
    "integrator": {"dt": 0.1, "steps": 7, "projection": {"tol": 1e-10, "max_iter": 3}},
    "quantum": {"m_max": 1, "modes": [[1, 1, 0]], "times": {"start": 0, "stop": 1, "count": 3}}})");
  CHECK(s.model == ModelKind::klauder);
  CHECK(s.seed == 9);
  CHECK(s.klauder.alpha == 2.0);
  CHECK(s.klauder.k1 == 0.25);
  CHECK(s.klauder.potential == std::vector<double>{0, 1});
  CHECK(s.integrator.steps == 7);
  REQUIRE(s.integrator.projection.has_value());
  CHECK(s.integrator.projection->max_iter == 3);
  REQUIRE(s.quantum.has_value());
  CHECK(s.quantum->times == std::vector<double>{0.0, 0.5, 1.0});
  CHECK(s.quantum->state.coeff(1) == std::complex<double>(1, 0));
}

TEST_CASE("table formatting") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(NAN) == "nan");
  CHECK(format_double(-INFINITY) == "-inf");
  Table t;
  t.columns = {"a", "b"};
  t.add_row({1.5, std::string("x")});
  t.footer.push_back({std::string("note"), 2LL});
  std::ostringstream csv, js;
  write_csv(t, csv);
  CHECK(csv.str() == "a,b\n1.5,x\n#note,2\n");
  write_json(t, js);
  auto j = nlohmann::json::parse(js.str());
  CHECK(j["rows"][0][0] == 1.5);
  CHECK(j["footer"][0][1] == 2);
  CHECK_THROWS(t.add_row({1.0}));
}

TEST_CASE("bracket table agrees with the oracle") {
  auto path = write_temp("brackets.json", kKlauderBrackets);
  auto r = run({"brackets", "--config", path});
  REQUIRE(r.code == 0);
  auto rows = csv_rows(r.out);
  CHECK(rows.size() == 1 + 20 * 6);
  const auto diff = column(rows[0], "abs_diff");
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::stod(rows[i][diff]) < 1e-9);
}

TEST_CASE("same seed gives identical output, another seed does not") {
  auto path = write_temp("brackets.json", kKlauderBrackets);
  auto a = run({"brackets", "--config", path});
  auto b = run({"brackets", "--config", path});
  auto c = run({"brackets", "--config", path, "--seed", "8"});
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
}

TEST_CASE("unconstrained custom model: Dirac equals Poisson") {
  auto path = write_temp("custom.json", R"({"model": "custom", "samples": 10,
    "params": {"n_pairs": 2}})");
  auto r = run({"brackets", "--config", path});
  REQUIRE(r.code == 0);
  auto rows = csv_rows(r.out);
  const auto pb = column(rows[0], "poisson"), db = column(rows[0], "dirac");
  CHECK(rows.size() > 1);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][pb] == rows[i][db]);
}

TEST_CASE("evolve with zero steps prints only the start") {
  auto path = write_temp("zero.json", R"({"model": "klauder", "params": {"k": 1.0},
    "flow": {"kind": "dirac", "reduced": [0.3, 1.0]}, "integrator": {"steps": 0}})");
  auto r = run({"evolve", "--config", path});
  REQUIRE(r.code == 0);
  CHECK(csv_rows(r.out).size() == 2);
}

TEST_CASE("gauge flow keeps the first-class constraint") {
  auto path = write_temp("gauge.json", R"({"model": "klauder", "params": {"alpha": 1.0, "k": 1.0},
    "flow": {"kind": "gauge", "x0": [1.0, 0.0, 0.0, 1.0]},
    "integrator": {"dt": 0.001, "steps": 1000, "record_every": 100}})");
  auto r = run({"evolve", "--config", path, "--format", "json"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  std::size_t res = 0;
  for (std::size_t i = 0; i < j["columns"].size(); ++i) {
    if (j["columns"][i] == "res_C") res = i;
  }
  REQUIRE(res > 0);
  for (const auto& row : j["rows"]) CHECK(row[res].get<double>() < 1e-10);
  CHECK(j["rows"].back()[1].get<double>() == doctest::Approx(std::cosh(1.0)));
}

TEST_CASE("degeneracy during evolve exits 3 and keeps the partial table") {
  // Phi1 = q1, Phi2 = p1 q2 with H = p2 drives {Phi1, Phi2} = q2 through zero.
  auto path = write_temp("degenerate.json", R"({"model": "custom",
    "params": {"n_pairs": 2,
      "hamiltonian": {"type": "poly", "terms": [{"coeff": 1, "powers": [0, 0, 0, 1]}]},
      "constraints": [{"type": "poly", "terms": [{"coeff": 1, "powers": [1, 0, 0, 0]}]},
                      {"type": "poly", "terms": [{"coeff": 1, "powers": [0, 1, 1, 0]}]}]},
    "flow": {"kind": "dirac", "x0": [0.0, -0.5, 0.0, 0.0]},
    "integrator": {"dt": 0.1, "steps": 10}})");
  auto r = run({"evolve", "--config", path});
  CHECK(r.code == 3);
  CHECK(csv_rows(r.out).size() >= 5);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("configuration problems exit 2") {
  CHECK(run({"brackets", "--config", write_temp("bad.json", "{ nope")}).code == 2);
  CHECK(run({"brackets"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"verify", "nosuch"}).code == 2);
  CHECK(run({"brackets", "--config", write_temp("ok.json", kKlauderBrackets), "--format", "xml"}).code == 2);
  auto off = write_temp("off.json", R"({"model": "klauder", "params": {"k": 1.0},
    "flow": {"kind": "dirac", "x0": [1.0, 0.0, 5.0, 0.0]}})");
  CHECK(run({"evolve", "--config", off}).code == 2);
}

TEST_CASE("output file option") {
  const auto out = (fs::temp_directory_path() / "dirac_test_out.csv").string();
  fs::remove(out);
  auto r = run({"brackets", "--config", write_temp("ok.json", kKlauderBrackets), "--out", out});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == run({"brackets", "--config", write_temp("ok.json", kKlauderBrackets)}).out);
}

TEST_CASE("quantum table for a single mode") {
  auto path = write_temp("quantum.json", R"({"model": "klauder",
    "params": {"alpha": 1.0, "k": 1.0, "potential": {"type": "poly", "coeffs": [0, 0, 1]}},
    "quantum": {"m_max": 2, "modes": [[1, 1, 0]], "times": [0, 1, 2]}})");
  auto r = run({"quantum", "--config", path});
  REQUIRE(r.code == 0);
  auto rows = csv_rows(r.out);
  CHECK(rows.size() == 4);
  const auto phi = column(rows[0], "phi_mean_analytic");
  const auto norm = column(rows[0], "norm");
  const auto pphi = column(rows[0], "pphi_mean");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(std::stod(rows[i][phi]) == doctest::Approx(3.141592653589793));
    CHECK(std::stod(rows[i][norm]) == doctest::Approx(1.0));
    CHECK(std::stod(rows[i][pphi]) == doctest::Approx(1.0));
  }
}

TEST_CASE("maxwell table") {
  auto path = write_temp("maxwell.json", R"({"model": "maxwell", "params": {"side": 2},
    "flow": {"mode": 1}, "integrator": {"dt": 0.01, "steps": 100, "record_every": 50}})");
  auto r = run({"maxwell", "--config", path});
  REQUIRE(r.code == 0);
  auto rows = csv_rows(r.out);
  CHECK(rows.size() == 4);
  const auto a = column(rows[0], "mode_amplitude"), b = column(rows[0], "mode_amplitude_exact");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(std::stod(rows[i][a]) == doctest::Approx(std::stod(rows[i][b])).epsilon(1e-8));
  }
}

TEST_CASE("verify exit codes") {
  CHECK(run({"verify", "core"}).code == 0);
  auto all = run({"verify"});
  CHECK(all.code == 0);
  CHECK(all.out.find("FAIL") == std::string::npos);
  auto bad = run({"verify", "klauder", "--perturb-oracle", "1e-3"});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("FAIL") != std::string::npos);
}

TEST_CASE("every verify suite runs and passes") {
  for (const auto& s : verify_suites()) {
    if (s == "all") continue;
    auto results = run_verify(s, VerifyOptions{});
    CHECK_FALSE(results.empty());
    for (const auto& r : results) {
      INFO(r.suite << "/" << r.name << " = " << r.value);
      CHECK(r.pass);
    }
  }
  CHECK_THROWS_AS(run_verify("nope", VerifyOptions{}), UsageError);
}
