// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "core/obstruction.hpp"

namespace curv {

enum class ACKind { StandardJ0, Perturbed, Custom };

struct ScenarioConfig {
  std::string name;
  int dim{4};
  double c0{1.0};
  ACKind ac_kind{ACKind::StandardJ0};
  std::uint64_t ac_seed{0};
  double epsilon{0.0};
  std::vector<std::vector<std::string>> custom_exprs;  // A_ab expressions
  int points{5};
  std::uint64_t seed{0};
  double identity_tol{kIdentityTol};
  double integrable_tol{kIntegrableTol};
  bool inject_residual{false};  // test hook: forces an identity violation

  void validate() const;  // throws ConfigError naming the offending field
  static ScenarioConfig from_json(const nlohmann::json& j);
  nlohmann::ordered_json to_json() const;
};

struct WitnessRecord {
  int point_index{0};
  int i{0}, j{0}, k{0};
  double brute_sum{0.0};
  double closed_form{0.0};
};

struct RunReport {
  ScenarioConfig config;
  double sigma{0.0};  // 0 when no calibration applies (c0 == 0)
  double max_dnabla{0.0};
  double max_nijenhuis{0.0};
  double res_eq1{0.0};
  double res_eq2{0.0};
  double res_anticommute{0.0};
  double res_cyclic{0.0};  // all residuals scale-normalized maxima
  double max_contraction{0.0};
  double max_brute_closed_gap{0.0};
  std::vector<WitnessRecord> witnesses;  // up to 10 worst contractions
  bool has_verdict{false};
  Verdict verdict;

  nlohmann::ordered_json to_json() const;
  std::string csv_row() const;
  static const char* csv_header();
};

enum class ReportFormat { Json, CsvSummary };

// Built-in scenario catalog (fixed seeds, deterministic reports).
const std::vector<ScenarioConfig>& catalog();
ScenarioConfig catalog_scenario(const std::string& name);

RunReport run_scenario(const ScenarioConfig& config);

void emit_report(const RunReport& report, ReportFormat format,
                 const std::string& path);

// 0 = healthy; 2 = identity residual violation; 3 = verdict inconsistency.
// Config and IO failures surface as exceptions and map to exit code 1 at
// the API boundary.
int exit_code(const RunReport& report);

// Deterministic sample points for a config: uniform in the centered box of
// half-width 0.5, rejection-sampled against the chart guard.
std::vector<ChartPoint> sample_points(const ScenarioConfig& config);

ACStructureField build_ac(const ScenarioConfig& config);

}  // namespace curv
