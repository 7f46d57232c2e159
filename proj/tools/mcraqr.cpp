// mcraqr: multi-carrier atomic-receiver simulation CLI.
//
// Usage: mcraqr <subcommand> --scenario <path> --out <dir> [--seed N]
//        [--threads N]
//
// Exit codes: 0 success, 1 model/numeric failure, 2 usage/schema error.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mcraqr/errors.hpp"
#include "mcraqr/experiments.hpp"
#include "mcraqr/io/scenario.hpp"

namespace fs = std::filesystem;

namespace {

int thread_default() {
  if (const char* env = std::getenv("MCRAQR_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (...) {
    }
    throw mcraqr::UsageError("MCRAQR_THREADS must be a positive integer");
  }
  return 1;
}

void write_tables(const mcraqr::experiments::TableSet& tables,
                  const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw mcraqr::IoError("cannot create output dir: " + out_dir.string());
  for (const auto& [name, table] : tables) {
    table.write(out_dir / name);
    std::cout << "wrote " << (out_dir / name).string() << "\n";
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-carrier atomic quantum receiver simulator"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir = "out";
  std::uint64_t seed = 1;
  int threads = 0;

  auto add_common = [&](CLI::App* sub, bool need_scenario) {
    auto* opt = sub->add_option("--scenario", scenario_path,
                                "Scenario JSON file");
    if (need_scenario) opt->required();
    sub->add_option("--out", out_dir, "Output directory");
    sub->add_option("--seed", seed, "RNG seed");
    sub->add_option("--threads", threads,
                    "Worker threads (default: MCRAQR_THREADS or 1)");
  };

  auto* c_env = app.add_subcommand("validate-envelope",
                                   "Envelope approximation accuracy");
  auto* c_bw = app.add_subcommand("bandwidth-sweep",
                                  "Modulation response and usable RF span");
  auto* c_kap = app.add_subcommand("kappa-sweep",
                                   "Conversion gain over AUX-field settings");
  auto* c_cap = app.add_subcommand("capacity", "Link SNR and sum rate");
  auto* c_aoa = app.add_subcommand("sense-aoa", "MUSIC angle estimation");
  auto* c_rng = app.add_subcommand("sense-range",
                                   "Beamformed MUSIC range estimation");
  auto* c_ora = app.add_subcommand("oracle-suite",
                                   "Internal analytic cross-checks");
  for (auto* sub : {c_env, c_bw, c_kap, c_cap, c_aoa, c_rng})
    add_common(sub, true);
  add_common(c_ora, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (threads == 0) threads = thread_default();
    mcraqr::experiments::TableSet tables;
    if (c_ora->parsed()) {
      const auto res = mcraqr::experiments::run_oracle_suite(seed, threads);
      write_tables(res.tables, out_dir);
      if (!res.pass) {
        std::cerr << "oracle-suite: FAIL\n";
        return 1;
      }
      std::cout << "oracle-suite: PASS\n";
      return 0;
    }
    const mcraqr::io::Scenario s = mcraqr::io::load_scenario(scenario_path);
    if (c_env->parsed())
      tables = mcraqr::experiments::run_validate_envelope(s, threads);
    else if (c_bw->parsed())
      tables = mcraqr::experiments::run_bandwidth_sweep(s, threads);
    else if (c_kap->parsed())
      tables = mcraqr::experiments::run_kappa_sweep(s, threads);
    else if (c_cap->parsed())
      tables = mcraqr::experiments::run_capacity(s, threads);
    else if (c_aoa->parsed())
      tables = mcraqr::experiments::run_sense_aoa(s, seed, threads);
    else if (c_rng->parsed())
      tables = mcraqr::experiments::run_sense_range(s, seed, threads);
    write_tables(tables, out_dir);
    return 0;
  } catch (const mcraqr::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const mcraqr::ModelError& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
