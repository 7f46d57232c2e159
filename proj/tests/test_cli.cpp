#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string kBin = MCRAQR_BIN;
const std::string kScenarioDir = MCRAQR_SCENARIO_DIR;

int run(const std::string& cmd) {
  const int rc = std::system((cmd + " >/dev/null 2>&1").c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& tag) {
  const fs::path d = fs::temp_directory_path() / ("mcraqr_cli_" + tag);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

} // namespace

TEST_CASE("usage errors exit with code 2") {
  CHECK(run(kBin) == 2);
  CHECK(run(kBin + " frobnicate") == 2);
  CHECK(run(kBin + " capacity") == 2); // --scenario is required
  CHECK(run(kBin + " --help") == 0);
}

TEST_CASE("schema errors in the scenario exit with code 2") {
  const fs::path dir = fresh_dir("schema");
  const fs::path bad = dir / "bad.json";
  std::ofstream(bad) << R"({"atomic": {"omega_q_mhz": 1.0}})";
  CHECK(run(kBin + " capacity --scenario " + bad.string() + " --out " +
            (dir / "out").string()) == 2);
  std::ofstream(bad) << R"({"atomic": {"omega_p_mhz": 1.0, "omega_p_khz": 1.0}})";
  CHECK(run(kBin + " capacity --scenario " + bad.string() + " --out " +
            (dir / "out").string()) == 2);
}

TEST_CASE("model errors exit with code 1") {
  const fs::path dir = fresh_dir("model");
  // A missing scenario file is an I/O (model-level) failure.
  CHECK(run(kBin + " capacity --scenario " + (dir / "nope.json").string() +
            " --out " + (dir / "out").string()) == 1);
  // Carriers packed closer than the comb-spacing constraint make every
  // frequency plan infeasible.
  const fs::path tight = dir / "tight.json";
  std::ofstream(tight) << R"({"rf": {"carriers": 4, "carrier_spacing_mhz": 1.0}})";
  CHECK(run(kBin + " validate-envelope --scenario " + tight.string() +
            " --out " + (dir / "out").string()) == 1);
}

TEST_CASE("MCRAQR_THREADS is honored and validated") {
  const fs::path dir = fresh_dir("env");
  const std::string scn = kScenarioDir + "/default.json";
  CHECK(run("MCRAQR_THREADS=zero " + kBin + " capacity --scenario " + scn +
            " --out " + (dir / "a").string()) == 2);
  CHECK(run("MCRAQR_THREADS=2 " + kBin + " capacity --scenario " + scn +
            " --out " + (dir / "b").string()) == 0);
}

TEST_CASE("outputs are byte-identical across thread counts") {
  const fs::path dir = fresh_dir("det");
  const std::string scn = kScenarioDir + "/default.json";
  REQUIRE(run(kBin + " capacity --scenario " + scn + " --threads 1 --out " +
              (dir / "t1").string()) == 0);
  REQUIRE(run(kBin + " capacity --scenario " + scn + " --threads 3 --out " +
              (dir / "t3").string()) == 0);
  for (const auto& name : {"noise_budget.csv", "capacity_vs_carriers.csv"}) {
    CAPTURE(name);
    CHECK(slurp(dir / "t1" / name) == slurp(dir / "t3" / name));
  }
}

TEST_CASE("oracle suite passes on defaults") {
  const fs::path dir = fresh_dir("oracle");
  CHECK(run(kBin + " oracle-suite --out " + dir.string()) == 0);
  CHECK(fs::exists(dir / "oracle_suite.csv"));
}
