// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end; talks to the engine exclusively through the
// extern-C shared-library API.
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "curvobstruct/curvobstruct.h"

namespace {

int cmd_list() {
  std::cout << cvo_catalog_json() << std::endl;
  return 0;
}

int cmd_selftest() {
  const int code = cvo_selftest();
  std::cout << (code == 0 ? "selftest: ok" : "selftest: FAILED") << " (exit "
            << code << ")" << std::endl;
  return code;
}

struct RunOptions {
  std::string scenario;
  std::string config_path;
  std::optional<int> dim;
  std::optional<double> c0;
  std::optional<std::uint64_t> seed;
  std::optional<int> points;
  std::string out_path;
  std::string format = "json";
};

int cmd_run(const RunOptions& opt) {
  nlohmann::json config;
  if (!opt.config_path.empty()) {
    std::ifstream in(opt.config_path);
    if (!in) {
      std::cerr << "error: cannot read config file '" << opt.config_path << "'"
                << std::endl;
      return 1;
    }
    try {
      in >> config;
    } catch (const nlohmann::json::exception& e) {
      std::cerr << "error: " << e.what() << std::endl;
      return 1;
    }
  } else if (!opt.scenario.empty()) {
    const auto cat = nlohmann::json::parse(cvo_catalog_json());
    for (const auto& entry : cat)
      if (entry.at("name") == opt.scenario) config = entry;
    if (config.is_null()) {
      std::cerr << "error: unknown scenario '" << opt.scenario << "'"
                << std::endl;
      return 1;
    }
  } else {
    std::cerr << "error: run needs --scenario or --config" << std::endl;
    return 1;
  }

  if (opt.dim) config["dim"] = *opt.dim;
  if (opt.c0) config["c0"] = *opt.c0;
  if (opt.seed) config["seed"] = *opt.seed;
  if (opt.points) config["points"] = *opt.points;

  const auto t0 = std::chrono::steady_clock::now();
  cvo_report* report = nullptr;
  const cvo_status st = cvo_run_scenario(config.dump().c_str(), &report);
  if (st != CVO_OK) {
    std::cerr << "error: " << cvo_last_error() << std::endl;
    return 1;
  }
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();

  const bool csv = opt.format == "csv";
  const char* payload = csv ? cvo_report_csv(report) : cvo_report_json(report);
  if (!opt.out_path.empty()) {
    std::ofstream out(opt.out_path);
    if (!out) {
      std::cerr << "error: cannot write '" << opt.out_path << "'" << std::endl;
      cvo_report_free(report);
      return 1;
    }
    out << payload << '\n';
  } else {
    std::cout << payload << std::endl;
  }
  std::cerr << "run completed in " << ms << " ms" << std::endl;

  const int code = cvo_report_exit_code(report);
  cvo_report_free(report);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical curvature-obstruction checks for almost-complex "
               "structures on constant-curvature charts"};
  app.require_subcommand(1);

  app.add_subcommand("list", "Print the built-in scenario catalog as JSON");
  app.add_subcommand("selftest",
                     "Run the full catalog and apply the exit-code contract");

  RunOptions opt;
  auto* run = app.add_subcommand("run", "Run one scenario and emit a report");
  run->add_option("--scenario", opt.scenario, "Catalog scenario name");
  run->add_option("--config", opt.config_path, "Scenario config JSON file");
  run->add_option("--dim", opt.dim, "Override chart dimension");
  run->add_option("--c0", opt.c0, "Override sectional curvature constant");
  run->add_option("--seed", opt.seed, "Override sampling seed");
  run->add_option("--points", opt.points, "Override sample point count");
  run->add_option("--out", opt.out_path, "Write report to this path");
  run->add_option("--format", opt.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));

  CLI11_PARSE(app, argc, argv);

  if (app.got_subcommand("list")) return cmd_list();
  if (app.got_subcommand("selftest")) return cmd_selftest();
  return cmd_run(opt);
}
