// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "core/scenario.hpp"
#include "test_util.hpp"

using namespace curv;

TEST_CASE("catalog contents") {
  const auto& cat = catalog();
  CHECK(cat.size() == 8);
  for (const char* name :
       {"flat-2", "flat-4", "surface-control", "round-4-standard",
        "round-6-standard", "hyperbolic-4", "perturbed-4", "perturbed-6"}) {
    CHECK_NOTHROW(catalog_scenario(name));
  }
  CHECK(catalog_scenario("round-4-standard").dim == 4);
  CHECK(catalog_scenario("round-6-standard").c0 == 1.0);
  CHECK(catalog_scenario("hyperbolic-4").c0 == -1.0);
  CHECK(catalog_scenario("perturbed-4").epsilon == doctest::Approx(0.05));
  CHECK_THROWS_AS(catalog_scenario("no-such-scenario"), ConfigError);
}

TEST_CASE("config validation names the offending field") {
  ScenarioConfig c = catalog_scenario("flat-4");
  c.dim = 3;
  try {
    c.validate();
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("dim") != std::string::npos);
  }
  c = catalog_scenario("flat-4");
  c.epsilon = 0.5;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = catalog_scenario("flat-4");
  c.points = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("config json round trip") {
  const ScenarioConfig c = catalog_scenario("perturbed-6");
  const ScenarioConfig back = ScenarioConfig::from_json(c.to_json());
  CHECK(back.name == c.name);
  CHECK(back.dim == c.dim);
  CHECK(back.c0 == c.c0);
  CHECK(back.ac_seed == c.ac_seed);
  CHECK(back.epsilon == c.epsilon);
  CHECK(back.seed == c.seed);
  CHECK_THROWS_AS(ScenarioConfig::from_json(nlohmann::json{{"dim", 4}}),
                  ConfigError);
}

TEST_CASE("sample points are deterministic and inside the box") {
  const ScenarioConfig c = catalog_scenario("round-4-standard");
  const auto a = sample_points(c);
  const auto b = sample_points(c);
  REQUIRE(a.size() == 5);
  REQUIRE(b.size() == 5);
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].coords() == b[i].coords());
    CHECK(a[i].coords().cwiseAbs().maxCoeff() <= 0.5);
  }
}

TEST_CASE("flat chart run: no verdict, everything quiet") {
  const RunReport rep = run_scenario(catalog_scenario("flat-4"));
  CHECK(!rep.has_verdict);
  CHECK(rep.sigma == 0.0);
  CHECK(rep.max_dnabla < 1e-10);
  CHECK(rep.max_nijenhuis < 1e-12);
  CHECK(rep.res_eq1 < 1e-6);
  CHECK(rep.res_eq2 < 1e-6);
  CHECK(rep.res_anticommute < 1e-6);
  CHECK(rep.res_cyclic < 1e-6);
  CHECK(rep.to_json()["verdict"] == "NONE");
  CHECK(exit_code(rep) == 0);
}

TEST_CASE("surface control run: curved but integrable, no verdict in dim 2") {
  const RunReport rep = run_scenario(catalog_scenario("surface-control"));
  CHECK(!rep.has_verdict);
  CHECK(rep.sigma != 0.0);
  CHECK(rep.max_dnabla < 1e-8);
  CHECK(rep.max_nijenhuis < 1e-8);
  CHECK(exit_code(rep) == 0);
}

TEST_CASE("round chart runs are obstructed with healthy exit code") {
  for (const char* name : {"round-4-standard", "round-6-standard",
                           "hyperbolic-4"}) {
    CAPTURE(name);
    const RunReport rep = run_scenario(catalog_scenario(name));
    REQUIRE(rep.has_verdict);
    CHECK(rep.verdict.status == VerdictStatus::Obstructed);
    CHECK(rep.max_contraction > 10 * kIdentityTol);
    CHECK(rep.max_brute_closed_gap < 1e-6);
    CHECK(rep.max_dnabla > kIntegrableTol);
    CHECK(!rep.witnesses.empty());
    CHECK(exit_code(rep) == 0);
    const auto j = rep.to_json();
    CHECK(j["verdict"] == "OBSTRUCTED");
    CHECK(j.contains("witness_triple"));
  }
}

TEST_CASE("perturbed runs: identities hold while both failure measures are large") {
  for (const char* name : {"perturbed-4", "perturbed-6"}) {
    CAPTURE(name);
    const RunReport rep = run_scenario(catalog_scenario(name));
    CHECK(rep.res_eq1 < kIdentityTol);
    CHECK(rep.res_eq2 < kIdentityTol);
    CHECK(rep.res_anticommute < kIdentityTol);
    CHECK(rep.res_cyclic < kIdentityTol);
    CHECK(rep.max_nijenhuis > 1e-2);
    CHECK(rep.max_dnabla > 1e-2);
    CHECK(exit_code(rep) == 0);
  }
}

TEST_CASE("reports are byte-identical across repeated runs") {
  const ScenarioConfig c = catalog_scenario("round-4-standard");
  const std::string a = run_scenario(c).to_json().dump(2);
  const std::string b = run_scenario(c).to_json().dump(2);
  CHECK(a == b);
}

TEST_CASE("report emission") {
  const RunReport rep = run_scenario(catalog_scenario("flat-2"));
  SUBCASE("json file parses and carries the schema's required keys") {
    const std::string path = "scenario_report_test.json";
    emit_report(rep, ReportFormat::Json, path);
    std::ifstream in(path);
    REQUIRE(in.good());
    const nlohmann::json j = nlohmann::json::parse(in);
    for (const char* key :
         {"config", "sign", "max_dnabla", "max_nijenhuis", "residuals",
          "max_contraction", "max_brute_closed_gap", "witnesses", "verdict",
          "tolerances"}) {
      CAPTURE(key);
      CHECK(j.contains(key));
    }
    for (const char* key : {"eq1", "eq2", "anticommute", "cyclic"})
      CHECK(j["residuals"].contains(key));
    std::remove(path.c_str());
  }
  SUBCASE("csv summary has a header and one data row") {
    const std::string path = "scenario_report_test.csv";
    emit_report(rep, ReportFormat::CsvSummary, path);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string header, row, extra;
    CHECK(std::getline(in, header));
    CHECK(std::getline(in, row));
    CHECK(!std::getline(in, extra));
    CHECK(header == RunReport::csv_header());
    CHECK(row.rfind("flat-2,2,", 0) == 0);
    std::remove(path.c_str());
  }
  SUBCASE("unwritable path raises IoError") {
    CHECK_THROWS_AS(
        emit_report(rep, ReportFormat::Json, "/nonexistent-dir/report.json"),
        IoError);
  }
}

TEST_CASE("exit code ladder") {
  SUBCASE("injected identity violation maps to 2") {
    ScenarioConfig c = catalog_scenario("round-4-standard");
    c.inject_residual = true;
    const RunReport rep = run_scenario(c);
    CHECK(rep.res_eq1 >= 1.0);
    CHECK(exit_code(rep) == 2);
  }
  SUBCASE("invalid configs raise before any run") {
    ScenarioConfig c = catalog_scenario("round-4-standard");
    c.dim = 3;
    CHECK_THROWS_AS(run_scenario(c), ConfigError);
  }
}
