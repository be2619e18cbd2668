// SPDX-License-Identifier: Apache-2.0
#include "core/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace curv {

namespace {

// Portable uniform double in [lo, hi) from the top 53 bits of mt19937_64.
double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = (rng() >> 11) * 0x1.0p-53;
  return lo + u * (hi - lo);
}

const char* ac_kind_name(ACKind k) {
  switch (k) {
    case ACKind::StandardJ0: return "standard_J0";
    case ACKind::Perturbed: return "perturbed";
    case ACKind::Custom: return "custom";
  }
  return "standard_J0";
}

ACKind ac_kind_from_name(const std::string& s) {
  if (s == "standard_J0") return ACKind::StandardJ0;
  if (s == "perturbed") return ACKind::Perturbed;
  if (s == "custom") return ACKind::Custom;
  throw ConfigError("unknown ac_kind '" + s + "'");
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

void ScenarioConfig::validate() const {
  if (name.empty()) throw ConfigError("config field 'name' must be non-empty");
  if (dim < 2 || dim > 8 || dim % 2 != 0)
    throw ConfigError("config field 'dim' must be even and in [2, 8], got " +
                      std::to_string(dim));
  if (points < 1) throw ConfigError("config field 'points' must be >= 1");
  if (epsilon < 0.0 || epsilon > 0.2)
    throw ConfigError("config field 'epsilon' must lie in [0, 0.2]");
  if (!std::isfinite(c0)) throw ConfigError("config field 'c0' must be finite");
  if (identity_tol <= 0.0 || integrable_tol <= 0.0)
    throw ConfigError("config field 'tolerances' must be positive");
  if (ac_kind == ACKind::Custom && custom_exprs.empty())
    throw ConfigError("config field 'custom_exprs' required for custom ac_kind");
}

ScenarioConfig ScenarioConfig::from_json(const nlohmann::json& j) {
  ScenarioConfig c;
  try {
    c.name = j.at("name").get<std::string>();
    c.dim = j.at("dim").get<int>();
    c.c0 = j.at("c0").get<double>();
    c.ac_kind = ac_kind_from_name(j.value("ac_kind", "standard_J0"));
    c.ac_seed = j.value("ac_seed", std::uint64_t{0});
    c.epsilon = j.value("epsilon", 0.0);
    c.points = j.value("points", 5);
    c.seed = j.value("seed", std::uint64_t{0});
    c.identity_tol = j.value("identity_tol", kIdentityTol);
    c.integrable_tol = j.value("integrable_tol", kIntegrableTol);
    c.inject_residual = j.value("inject_residual", false);
    if (j.contains("custom_exprs"))
      c.custom_exprs =
          j.at("custom_exprs").get<std::vector<std::vector<std::string>>>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed scenario config: ") + e.what());
  }
  c.validate();
  return c;
}

nlohmann::ordered_json ScenarioConfig::to_json() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["dim"] = dim;
  j["c0"] = c0;
  j["ac_kind"] = ac_kind_name(ac_kind);
  j["ac_seed"] = ac_seed;
  j["epsilon"] = epsilon;
  if (!custom_exprs.empty()) j["custom_exprs"] = custom_exprs;
  j["points"] = points;
  j["seed"] = seed;
  j["identity_tol"] = identity_tol;
  j["integrable_tol"] = integrable_tol;
  return j;
}

const std::vector<ScenarioConfig>& catalog() {
  static const std::vector<ScenarioConfig> cat = [] {
    auto mk = [](std::string name, int dim, double c0, ACKind kind,
                 std::uint64_t ac_seed, double eps, std::uint64_t seed) {
      ScenarioConfig c;
      c.name = std::move(name);
      c.dim = dim;
      c.c0 = c0;
      c.ac_kind = kind;
      c.ac_seed = ac_seed;
      c.epsilon = eps;
      c.points = 5;
      c.seed = seed;
      return c;
    };
    std::vector<ScenarioConfig> v;
    v.push_back(mk("flat-2", 2, 0.0, ACKind::StandardJ0, 0, 0.0, 1001));
    v.push_back(mk("flat-4", 4, 0.0, ACKind::StandardJ0, 0, 0.0, 1002));
    v.push_back(mk("surface-control", 2, 1.0, ACKind::StandardJ0, 0, 0.0, 1003));
    v.push_back(mk("round-4-standard", 4, 1.0, ACKind::StandardJ0, 0, 0.0, 1004));
    v.push_back(mk("round-6-standard", 6, 1.0, ACKind::StandardJ0, 0, 0.0, 1005));
    v.push_back(mk("hyperbolic-4", 4, -1.0, ACKind::StandardJ0, 0, 0.0, 1006));
    v.push_back(mk("perturbed-4", 4, 1.0, ACKind::Perturbed, 42, 0.05, 1007));
    v.push_back(mk("perturbed-6", 6, 1.0, ACKind::Perturbed, 43, 0.05, 1008));
    return v;
  }();
  return cat;
}

ScenarioConfig catalog_scenario(const std::string& name) {
  for (const ScenarioConfig& c : catalog())
    if (c.name == name) return c;
  throw ConfigError("unknown catalog scenario '" + name + "'");
}

ACStructureField build_ac(const ScenarioConfig& config) {
  switch (config.ac_kind) {
    case ACKind::StandardJ0:
      return standard_j0(config.dim);
    case ACKind::Perturbed:
      return perturbed_ac_field(config.dim, config.ac_seed, config.epsilon);
    case ACKind::Custom:
      return custom_ac_field(config.dim, config.custom_exprs);
  }
  throw ConfigError("unknown ac_kind");
}

std::vector<ChartPoint> sample_points(const ScenarioConfig& config) {
  const MetricField g = model_metric({config.c0, config.dim});
  std::mt19937_64 rng(config.seed);
  std::vector<ChartPoint> pts;
  int attempts = 0;
  while (static_cast<int>(pts.size()) < config.points) {
    if (++attempts > 1000 * config.points)
      throw ConfigError("point sampling failed to satisfy the chart guard");
    Eigen::VectorXd x(config.dim);
    for (int i = 0; i < config.dim; ++i) x[i] = uniform(rng, -0.5, 0.5);
    ChartPoint p(x);
    if (g.valid_at(p)) pts.push_back(std::move(p));
  }
  return pts;
}

RunReport run_scenario(const ScenarioConfig& config) {
  config.validate();
  RunReport rep;
  rep.config = config;

  const ModelMetricSpec spec{config.c0, config.dim};
  const MetricField g = model_metric(spec);
  const ACStructureField A = build_ac(config);
  const std::vector<ChartPoint> pts = sample_points(config);

  std::mt19937_64 rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
  auto random_vec = [&](int n) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = uniform(rng, -1.0, 1.0);
    return v;
  };

  for (const ChartPoint& p : pts) {
    A.validate_at(p);
    rep.max_dnabla = std::max(rep.max_dnabla, max_dnabla_norm(A, g, p));
    rep.max_nijenhuis = std::max(rep.max_nijenhuis, max_nijenhuis_norm(A, p));

    const VectorFieldSpec X = VectorFieldSpec::constant(random_vec(config.dim));
    const VectorFieldSpec Y = VectorFieldSpec::constant(random_vec(config.dim));
    rep.res_eq1 = std::max(rep.res_eq1, check_eq1(A, g, p, X, Y).normalized());
    rep.res_eq2 = std::max(rep.res_eq2, check_eq2(A, g, p, X, Y).normalized());
    rep.res_anticommute = std::max(
        rep.res_anticommute,
        check_anticommute(A, g, p, X.value(p), Y.value(p)).normalized());

    const int ci = static_cast<int>(rng() % config.dim);
    const int cj = static_cast<int>(rng() % config.dim);
    const int ck = static_cast<int>(rng() % config.dim);
    const CyclicSumSides sides = cyclic_curvature_sum(A, g, p, ci, cj, ck);
    rep.res_cyclic =
        std::max(rep.res_cyclic,
                 (sides.lhs - sides.rhs).cwiseAbs().maxCoeff() / sides.scale);
  }

  if (config.inject_residual) rep.res_eq1 = std::max(rep.res_eq1, 1.0);

  if (config.c0 != 0.0 && config.dim >= 4) {
    rep.sigma = calibrate_sign(spec, pts);
    rep.has_verdict = true;
    rep.verdict = obstruction_verdict(A, spec, pts);

    std::vector<WitnessRecord> all;
    for (size_t pi = 0; pi < pts.size(); ++pi)
      for (const ContractionRecord& rec :
           contraction_sweep(A, spec, pts[pi], rep.sigma)) {
        const double scale =
            1.0 + std::abs(config.c0) * A.action(pts[pi]).cwiseAbs().maxCoeff();
        rep.max_brute_closed_gap =
            std::max(rep.max_brute_closed_gap,
                     std::abs(rec.brute_sum - rec.closed_form) / scale);
        all.push_back({static_cast<int>(pi), rec.i, rec.j, rec.k,
                       rec.brute_sum, rec.closed_form});
      }
    std::stable_sort(all.begin(), all.end(),
                     [](const WitnessRecord& a, const WitnessRecord& b) {
                       return std::abs(a.closed_form) > std::abs(b.closed_form);
                     });
    if (all.size() > 10) all.resize(10);
    rep.witnesses = std::move(all);
    rep.max_contraction = rep.verdict.max_contraction;
  } else if (config.c0 != 0.0 && config.dim == 2) {
    rep.sigma = calibrate_sign(spec, pts);
  }

  return rep;
}

nlohmann::ordered_json RunReport::to_json() const {
  nlohmann::ordered_json j;
  j["config"] = config.to_json();
  j["sign"] = sigma;
  j["max_dnabla"] = max_dnabla;
  j["max_nijenhuis"] = max_nijenhuis;
  j["residuals"] = {{"eq1", res_eq1},
                    {"eq2", res_eq2},
                    {"anticommute", res_anticommute},
                    {"cyclic", res_cyclic}};
  j["max_contraction"] = max_contraction;
  j["max_brute_closed_gap"] = max_brute_closed_gap;
  nlohmann::ordered_json ws = nlohmann::ordered_json::array();
  for (const WitnessRecord& w : witnesses) {
    nlohmann::ordered_json e;
    e["point_index"] = w.point_index;
    e["i"] = w.i;
    e["j"] = w.j;
    e["k"] = w.k;
    e["brute_sum"] = w.brute_sum;
    e["closed_form"] = w.closed_form;
    ws.push_back(std::move(e));
  }
  j["witnesses"] = std::move(ws);
  j["verdict"] = has_verdict ? to_string(verdict.status) : "NONE";
  if (has_verdict && verdict.status == VerdictStatus::Obstructed)
    j["witness_triple"] = {verdict.witness_i, verdict.witness_j,
                           verdict.witness_k};
  j["tolerances"] = {{"identity", config.identity_tol},
                     {"integrable", config.integrable_tol},
                     {"obstruction", kObstructionFactor * config.identity_tol}};
  return j;
}

const char* RunReport::csv_header() {
  return "scenario,dim,c0,sign,max_dnabla,max_nijenhuis,max_contraction,verdict";
}

std::string RunReport::csv_row() const {
  std::ostringstream os;
  os << config.name << ',' << config.dim << ',' << format_double(config.c0)
     << ',' << format_double(sigma) << ',' << format_double(max_dnabla) << ','
     << format_double(max_nijenhuis) << ',' << format_double(max_contraction)
     << ',' << (has_verdict ? to_string(verdict.status) : "NONE");
  return os.str();
}

void emit_report(const RunReport& report, ReportFormat format,
                 const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  if (format == ReportFormat::Json) {
    out << report.to_json().dump(2) << '\n';
  } else {
    out << RunReport::csv_header() << '\n' << report.csv_row() << '\n';
  }
  if (!out) throw IoError("failed writing report to '" + path + "'");
}

int exit_code(const RunReport& report) {
  const double tol = report.config.identity_tol;
  if (report.res_eq1 > tol || report.res_eq2 > tol ||
      report.res_anticommute > tol || report.res_cyclic > tol ||
      report.max_brute_closed_gap > tol)
    return 2;
  if (report.has_verdict &&
      report.verdict.status == VerdictStatus::Obstructed &&
      report.max_dnabla < report.config.integrable_tol)
    return 3;  // nonzero contraction cannot coexist with d^nabla A = 0
  return 0;
}

}  // namespace curv
