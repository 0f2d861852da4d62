// Drives the built `profitrec` binary end to end.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Result run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path dir = fs::temp_directory_path() / "profitrec_cli_tests";
  fs::create_directories(dir);
  const auto out = dir / ("out" + std::to_string(counter) + ".txt");
  const auto err = dir / ("err" + std::to_string(counter++) + ".txt");
  const std::string cmd = std::string(PROFITREC_BIN) + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int raw = std::system(cmd.c_str());
  const int status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return {status, slurp(out), slurp(err)};
}

std::string golden(const std::string& name) {
  return (fs::path(GOLDEN_DIR) / name).string();
}

}  // namespace

TEST_CASE("linear fixture matches the golden report byte for byte") {
  const auto r = run_cli("solve --input " + golden("customer_42.csv") +
                         " --format csv --tau 0.9 --model linear --measure dice"
                         " --max-rating 5 --seed 42");
  REQUIRE(r.status == 0);
  CHECK(r.err.empty());
  CHECK(r.out == slurp(golden("linear_tau09.json")));

  const auto doc = nlohmann::json::parse(r.out);
  CHECK(std::abs(doc["achieved_similarity"].get<double>() - 0.9) < 1e-9);
  CHECK(doc["gain_lower_bound"]["weak"].get<double>() == doctest::Approx(0.2222).epsilon(1e-3));
}

TEST_CASE("multinomial fixture matches the golden report") {
  const auto r = run_cli("solve --input " + golden("customer_42.csv") +
                         " --tau 0.9 --model multinomial --epsilon 1e-6 --clamp --seed 42");
  REQUIRE(r.status == 0);
  CHECK(r.out == slurp(golden("multinomial_tau09.json")));
}

TEST_CASE("json input yields the same report as csv") {
  const std::string common = " --tau 0.9 --model linear --seed 42";
  const auto csv = run_cli("solve --input " + golden("customer_42.csv") + common);
  const auto json =
      run_cli("solve --format json --input " + golden("customer_42.json") + common);
  REQUIRE(csv.status == 0);
  CHECK(csv.out == json.out);
}

TEST_CASE("reports are deterministic and --output writes the same bytes") {
  const auto out = fs::temp_directory_path() / "profitrec_cli_tests" / "report.json";
  const std::string args = "solve --input " + golden("customer_4items.csv") +
                           " --tau 0.8 --model multinomial --measure jaccard --seed 3";
  const auto a = run_cli(args);
  const auto b = run_cli(args + " --output " + out.string());
  REQUIRE(a.status == 0);
  REQUIRE(b.status == 0);
  CHECK(b.out.empty());
  CHECK(slurp(out) == a.out);
  const auto doc = nlohmann::json::parse(a.out);
  CHECK(doc["config"]["measure"] == "jaccard");
  CHECK(doc["achieved_similarity"].get<double>() >= 0.8 - 1e-9);
}

TEST_CASE("batch mode keeps input order") {
  const auto r = run_cli("solve --input " + golden("customer_4items.csv") + " --input " +
                         golden("customer_42.csv") + " --tau 0.95");
  REQUIRE(r.status == 0);
  const auto doc = nlohmann::json::parse(r.out);
  REQUIRE(doc["reports"].size() == 2);
  CHECK(doc["reports"][0]["item_ids"][0] == "kettle");
  CHECK(doc["reports"][1]["item_ids"][0] == "A");
}

TEST_CASE("tau = 1 leaves the ratings unchanged") {
  const auto r = run_cli("solve --input " + golden("customer_4items.csv") + " --tau 1");
  REQUIRE(r.status == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["recommendation"] == doc["ratings"]);
  CHECK(doc["gain_ratio"] == 0.0);
}

TEST_CASE("errors go to stderr with a nonzero exit and nothing on stdout") {
  const auto bad = run_cli("solve --input " + golden("bad_rating.csv") + " --tau 0.9");
  CHECK(bad.status != 0);
  CHECK(bad.out.empty());
  CHECK(bad.err.find("ValidationError") != std::string::npos);
  CHECK(bad.err.find("line 3, field rating") != std::string::npos);

  const auto tau = run_cli("solve --input " + golden("customer_42.csv") + " --tau 1.5");
  CHECK(tau.status != 0);
  CHECK(tau.out.empty());
  CHECK(tau.err.find("InvalidTau") != std::string::npos);

  const auto missing = run_cli("solve --input /nonexistent.csv --tau 0.9");
  CHECK(missing.status != 0);
  CHECK(missing.out.empty());

  const auto usage = run_cli("solve --tau 0.9");
  CHECK(usage.status != 0);
}

TEST_CASE("verify passes by default and fails on a corrupted solver") {
  const auto ok = run_cli("verify --resolution 20000 --trials 50000 --seed 5");
  CHECK(ok.status == 0);
  CHECK(ok.out.find("all checks passed") != std::string::npos);
  for (const char* tau : {"0.5", "0.7", "0.9", "0.99"}) {
    CHECK(ok.out.find(std::string("PASS  bound ordering tau=") + tau) != std::string::npos);
  }

  const auto bad = run_cli("verify --resolution 20000 --trials 50000 --seed 5 --inject-fault");
  CHECK(bad.status != 0);
  CHECK(bad.out.find("FAIL") != std::string::npos);
}
