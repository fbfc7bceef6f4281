#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "mordell/arith.hpp"
#include "mordell/cli.hpp"

using namespace mordell;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("mordell_cli_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

std::string line_with(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (line.rfind(prefix, 0) == 0) return line;
  return {};
}

nlohmann::json without_timings(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  j.erase("timings");
  return j;
}

}  // namespace

TEST_CASE("verify passes and lists each identity") {
  const Run r = run({"verify"});
  CHECK(r.code == 0);
  int passes = 0;
  std::istringstream in(r.out);
  for (std::string line; std::getline(in, line);) passes += line.rfind("PASS", 0) == 0 ? 1 : 0;
  CHECK(passes >= 10);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("verify mutation hook") {
  CHECK(run({"verify", "--mutate", "P3.y"}).code == 1);
  CHECK(run({"verify", "--mutate", "d@3"}).code == 1);
  CHECK(run({"verify", "--mutate", "P9.x"}).code == 2);
  CHECK(run({"verify", "--mutate", "d@999"}).code == 2);
}

TEST_CASE("verify --json") {
  const Run r = run({"verify", "--json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema_version"] == "1");
  CHECK(j["command"] == "verify");
  CHECK(j["results"]["all_passed"] == true);
  CHECK(j["results"]["identities"].size() >= 10);
  CHECK(j["timings"].is_object());
}

TEST_CASE("show --n 3 prints the exact specialization") {
  const Run r = run({"show", "--n", "3"});
  CHECK(r.code == 0);
  CHECK(line_with(r.out, "d = ") == "d = 142945242561/157351936");
  CHECK(line_with(r.out, "P1 = ") == "P1 = (378081/12544, 236300625/1404928)");
  CHECK(line_with(r.out, "P2 = ") == "P2 = (-737/112, -313225/12544)");
  CHECK(line_with(r.out, "P3 = ") == "P3 = (513/112, 397575/12544)");
}

TEST_CASE("show output round-trips through the parser") {
  const Run r = run({"show", "--n", "-7/5", "--json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  const std::string d = j["results"]["d"];
  CHECK(to_string(parse_rational(d)) == d);
  for (const auto& p : j["results"]["points"]) {
    const Rational x = parse_rational(p["x"].get<std::string>());
    const Rational y = parse_rational(p["y"].get<std::string>());
    CHECK(to_string(x) == p["x"]);
    CHECK(y * y == x * x * x + parse_rational(d));
  }
}

TEST_CASE("show on degenerate and malformed input") {
  const Run two = run({"show", "--n", "2"});
  CHECK(two.code == 0);
  CHECK(two.out.find("degenerate") != std::string::npos);
  CHECK(run({"show", "--n", "1.5"}).code == 2);
  CHECK(run({"show", "--n", "1/0"}).code == 2);
  CHECK(run({"show"}).code == 2);
}

TEST_CASE("stages are symbolic-only views") {
  CHECK(run({"show", "--n", "3", "--stage", "k"}).code == 2);
  CHECK(run({"show", "--n", "3", "--stage", "k", "--param", "5"}).code == 2);
  CHECK(run({"show", "--stage", "q"}).code == 2);
  const Run k = run({"show", "--stage", "k"});
  CHECK(k.code == 0);
  CHECK(k.out.find("d(k) = ") != std::string::npos);
  const Run m = run({"show", "--stage", "m", "--json"});
  CHECK(m.code == 0);
  CHECK(nlohmann::json::parse(m.out)["results"]["points"].size() == 1);
}

TEST_CASE("regulator") {
  const Run r = run({"regulator", "--n", "3"});
  CHECK(r.code == 0);
  CHECK(line_with(r.out, "regulator = ").rfind("regulator = 83.3621963770719", 0) == 0);
  CHECK(line_with(r.out, "rank lower bound = ") == "rank lower bound = 3");
  const Run halved = run({"regulator", "--n", "3", "--normalization", "halved"});
  CHECK(line_with(halved.out, "regulator = ").rfind("regulator = 10.42027454713399", 0) == 0);
  CHECK(run({"regulator", "--n", "2"}).code == 2);
  CHECK(run({"regulator", "--n", "-1"}).code == 2);
  CHECK(run({"regulator", "--n", "3", "--precision", "5"}).code == 2);
}

TEST_CASE("precision precedence: flag, then environment, then config") {
  const std::string cfg = temp_file("prec.cfg", "# defaults\nprecision = 30\n");
  auto digits = [](const Run& r) { return line_with(r.out, "precision = "); };
  ::unsetenv("MORDELL_PRECISION");
  CHECK(digits(run({"regulator", "--n", "3"})).rfind("precision = 50 ", 0) == 0);
  CHECK(digits(run({"--config", cfg, "regulator", "--n", "3"})).rfind("precision = 30 ", 0) == 0);
  ::setenv("MORDELL_PRECISION", "35", 1);
  CHECK(digits(run({"--config", cfg, "regulator", "--n", "3"})).rfind("precision = 35 ", 0) == 0);
  CHECK(digits(run({"--config", cfg, "regulator", "--n", "3", "--precision", "40"})).rfind("precision = 40 ", 0) == 0);
  ::unsetenv("MORDELL_PRECISION");
  CHECK(run({"--config", "/nonexistent/mordell.cfg", "regulator", "--n", "3"}).code == 2);
  CHECK(run({"--config", temp_file("bad.cfg", "precision\n"), "regulator", "--n", "3"}).code == 2);
}

TEST_CASE("regulator at higher precision is consistent") {
  const auto a = nlohmann::json::parse(run({"regulator", "--n", "3", "--json"}).out);
  const auto b = nlohmann::json::parse(run({"regulator", "--n", "3", "--precision", "80", "--json"}).out);
  const std::string ra = a["results"]["regulator"], rb = b["results"]["regulator"];
  CHECK(rb.size() > ra.size());
  CHECK(rb.substr(0, 40) == ra.substr(0, 40));
  CHECK(b["results"]["precision"] == 80);
}

TEST_CASE("an exhausted factorization budget exits with 3") {
  const std::string cfg = temp_file("rho.cfg", "rho_budget = 1\n");
  const Run r = run({"--config", cfg, "regulator", "--n", "1000003/999983"});
  CHECK(r.code == 3);
}

TEST_CASE("scan writes CSV rows with per-row errors") {
  const std::string input = temp_file("scan.txt", "# sample\n3\n\n2   # degenerate\nbogus\n");
  const std::string csv = temp_file("scan.csv", "");
  const Run r = run({"scan", "--input", input, "--denom-bound", "2", "--numer-bound", "5000", "--csv", csv});
  CHECK(r.code == 0);
  std::ifstream in(csv);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "n,d,rank_lower_bound,regulator,num_points,error");
  CHECK(lines[1].rfind("3,142945242561/157351936,", 0) == 0);
  CHECK(lines[2] == "2,,,,,degenerate parameter");
  CHECK(lines[3].rfind("bogus,,,,,", 0) == 0);
  CHECK(run({"scan", "--input", "/nonexistent/list.txt"}).code == 2);
}

TEST_CASE("JSON output is deterministic apart from timings") {
  const std::string input = temp_file("det.txt", "3\n1/3\n2\n5/7\n");
  const std::string j1 = temp_file("det1.json", ""), j2 = temp_file("det2.json", "");
  REQUIRE(run({"scan", "--input", input, "--denom-bound", "2", "--numer-bound", "20000", "--jobs", "1", "--json", j1}).code == 0);
  REQUIRE(run({"scan", "--input", input, "--denom-bound", "2", "--numer-bound", "20000", "--jobs", "3", "--json", j2}).code == 0);
  auto slurp = [](const std::string& p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  auto a = without_timings(slurp(j1)), b = without_timings(slurp(j2));
  a["inputs"].erase("jobs");
  b["inputs"].erase("jobs");
  CHECK(a == b);
  CHECK(without_timings(run({"regulator", "--n", "3", "--json"}).out) ==
        without_timings(run({"regulator", "--n", "3", "--json"}).out));
  CHECK(without_timings(run({"show", "--n", "3", "--json"}).out) == without_timings(run({"show", "--n", "3", "--json"}).out));
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"scan"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}
