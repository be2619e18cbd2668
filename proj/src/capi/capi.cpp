// SPDX-License-Identifier: Apache-2.0
#include "curvobstruct/curvobstruct.h"

#include <exception>
#include <string>

#include "core/scenario.hpp"

struct cvo_report {
  curv::RunReport report;
  std::string json;
  std::string csv;
};

namespace {

thread_local std::string g_last_error = "no error";
thread_local std::string g_catalog_buffer;

cvo_status fail(cvo_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

cvo_status run_config(const curv::ScenarioConfig& config, cvo_report** out) {
  curv::RunReport rep = curv::run_scenario(config);
  auto* handle = new cvo_report;
  handle->report = std::move(rep);
  handle->json = handle->report.to_json().dump(2);
  handle->csv = std::string(curv::RunReport::csv_header()) + "\n" +
                handle->report.csv_row();
  *out = handle;
  return CVO_OK;
}

}  // namespace

extern "C" {

const char* cvo_last_error(void) { return g_last_error.c_str(); }

const char* cvo_catalog_json(void) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const curv::ScenarioConfig& c : curv::catalog()) arr.push_back(c.to_json());
  g_catalog_buffer = arr.dump(2);
  return g_catalog_buffer.c_str();
}

cvo_status cvo_run_scenario(const char* config_json, cvo_report** out) {
  if (!config_json || !out)
    return fail(CVO_ERR_CONFIG, "null argument to cvo_run_scenario");
  *out = nullptr;
  try {
    const auto j = nlohmann::json::parse(config_json);
    return run_config(curv::ScenarioConfig::from_json(j), out);
  } catch (const nlohmann::json::exception& e) {
    return fail(CVO_ERR_CONFIG, std::string("config JSON parse error: ") + e.what());
  } catch (const curv::ConfigError& e) {
    return fail(CVO_ERR_CONFIG, e.what());
  } catch (const curv::IoError& e) {
    return fail(CVO_ERR_CONFIG, e.what());
  } catch (const std::exception& e) {
    return fail(CVO_ERR_INTERNAL, e.what());
  }
}

cvo_status cvo_run_named(const char* name, cvo_report** out) {
  if (!name || !out) return fail(CVO_ERR_CONFIG, "null argument to cvo_run_named");
  *out = nullptr;
  try {
    return run_config(curv::catalog_scenario(name), out);
  } catch (const curv::ConfigError& e) {
    return fail(CVO_ERR_CONFIG, e.what());
  } catch (const std::exception& e) {
    return fail(CVO_ERR_INTERNAL, e.what());
  }
}

const char* cvo_report_json(const cvo_report* report) {
  return report ? report->json.c_str() : "";
}

const char* cvo_report_csv(const cvo_report* report) {
  return report ? report->csv.c_str() : "";
}

int cvo_report_exit_code(const cvo_report* report) {
  if (!report) return CVO_ERR_CONFIG;
  return curv::exit_code(report->report);
}

void cvo_report_free(cvo_report* report) { delete report; }

int cvo_selftest(void) {
  for (const curv::ScenarioConfig& c : curv::catalog()) {
    cvo_report* rep = nullptr;
    const cvo_status st = cvo_run_named(c.name.c_str(), &rep);
    if (st != CVO_OK) return 1;
    const int code = cvo_report_exit_code(rep);
    cvo_report_free(rep);
    if (code != 0) return code;
  }
  return 0;
}

}  // extern "C"
