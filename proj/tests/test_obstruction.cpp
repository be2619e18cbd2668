// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "core/obstruction.hpp"
#include "test_util.hpp"

using namespace curv;
using testutil::random_point;
using testutil::random_vector;

namespace {

std::vector<ChartPoint> sample(std::mt19937_64& rng, int dim, int count) {
  std::vector<ChartPoint> pts;
  for (int i = 0; i < count; ++i) pts.push_back(random_point(rng, dim));
  return pts;
}

}  // namespace

TEST_CASE("eq3 contraction on degenerate inputs") {
  std::mt19937_64 rng(3);
  SUBCASE("flat metric: curvature term vanishes identically") {
    const MetricField g = testutil::flat_metric(4);
    const ACStructureField A = perturbed_ac_field(4, 7, 0.1);
    for (int trial = 0; trial < 5; ++trial) {
      const ChartPoint p = random_point(rng, 4);
      CHECK(std::abs(eq3_residual(A, g, p, random_vector(rng, 4),
                                  random_vector(rng, 4), random_vector(rng, 4))) <
            1e-12);
    }
  }
  SUBCASE("dimension-2 model chart: integrable, residual below 1e-8") {
    const MetricField g = model_metric({1.0, 2});
    const ACStructureField A = standard_j0(2);
    for (int trial = 0; trial < 5; ++trial) {
      const ChartPoint p = random_point(rng, 2);
      CHECK(std::abs(eq3_residual(A, g, p, random_vector(rng, 2),
                                  random_vector(rng, 2), random_vector(rng, 2))) <
            1e-8);
    }
  }
}

TEST_CASE("contraction values for the standard structure, n = 4") {
  std::mt19937_64 rng(11);
  const ModelMetricSpec spec{1.0, 4};
  const std::vector<ChartPoint> pts = sample(rng, 4, 5);
  const double sigma = calibrate_sign(spec, pts);
  const ACStructureField A = standard_j0(4);

  SUBCASE("triple spanning one J0 block: closed form is -2 sigma c0") {
    for (const ChartPoint& p : pts) {
      const ContractionRecord rec = contract_obstruction(A, spec, p, 0, 2, 3, sigma);
      CHECK(rec.closed_form == doctest::Approx(-2.0 * sigma).epsilon(1e-6));
      CHECK(std::abs(rec.brute_sum - rec.closed_form) < 1e-6);
    }
  }
  SUBCASE("triple with j, k in different blocks: contraction vanishes") {
    for (const ChartPoint& p : pts) {
      const ContractionRecord rec = contract_obstruction(A, spec, p, 0, 1, 2, sigma);
      CHECK(std::abs(rec.closed_form) < 1e-9);
      CHECK(std::abs(rec.brute_sum) < 1e-6);
    }
  }
}

TEST_CASE("brute-force contraction equals the closed form on all triples") {
  std::mt19937_64 rng(13);
  for (int dim : {4, 6}) {
    for (double c0 : {1.0, -1.0}) {
      const ModelMetricSpec spec{c0, dim};
      const std::vector<ChartPoint> pts = sample(rng, dim, 3);
      const double sigma = calibrate_sign(spec, pts);
      const ACStructureField A = perturbed_ac_field(dim, 17 + dim, 0.05);
      for (const ChartPoint& p : pts)
        for (const ContractionRecord& rec : contraction_sweep(A, spec, p, sigma))
          CHECK(std::abs(rec.brute_sum - rec.closed_form) < 1e-6);
    }
  }
}

TEST_CASE("the brute sum does not depend on the auxiliary index i") {
  std::mt19937_64 rng(19);
  const ModelMetricSpec spec{1.0, 6};
  const std::vector<ChartPoint> pts = sample(rng, 6, 2);
  const double sigma = calibrate_sign(spec, pts);
  const ACStructureField A = perturbed_ac_field(6, 23, 0.05);
  for (const ChartPoint& p : pts) {
    const int j = 1, k = 4;
    double ref = 0.0;
    bool first = true;
    for (int i = 0; i < 6; ++i) {
      if (i == j || i == k) continue;
      const double v = contract_obstruction(A, spec, p, i, j, k, sigma).brute_sum;
      if (first) {
        ref = v;
        first = false;
      } else {
        CHECK(std::abs(v - ref) < 1e-6);
      }
    }
  }
}

TEST_CASE("contraction rejects bad indices and dimensions") {
  const ModelMetricSpec spec{1.0, 4};
  const ACStructureField A = standard_j0(4);
  std::mt19937_64 rng(29);
  const ChartPoint p = random_point(rng, 4);
  CHECK_THROWS_AS(contract_obstruction(A, spec, p, 0, 0, 1, 1.0), IndexError);
  CHECK_THROWS_AS(contract_obstruction(A, spec, p, 0, 1, 7, 1.0), IndexError);
  const ModelMetricSpec spec2{1.0, 2};
  const ACStructureField A2 = standard_j0(2);
  const ChartPoint p2 = random_point(rng, 2);
  CHECK_THROWS_AS(contract_obstruction(A2, spec2, p2, 0, 1, 0, 1.0),
                  DimensionError);
}

TEST_CASE("verdict for round model charts with the standard structure") {
  std::mt19937_64 rng(31);
  for (int dim : {4, 6}) {
    const ModelMetricSpec spec{1.0, dim};
    const std::vector<ChartPoint> pts = sample(rng, dim, 5);
    const Verdict v = obstruction_verdict(standard_j0(dim), spec, pts);
    CHECK(v.status == VerdictStatus::Obstructed);
    CHECK(v.max_contraction > kObstructionFactor * kIdentityTol);
    CHECK(v.witness_i >= 0);
    CHECK(v.witness_j >= 0);
    CHECK(v.witness_k >= 0);
    CHECK(v.witness_point >= 0);
    // Chart-constant structures have identically vanishing Nijenhuis tensor,
    // but the covariant derivative obstruction is visible.
    CHECK(v.max_nijenhuis < 1e-12);
    CHECK(v.max_dnabla > kIntegrableTol);
  }
}

TEST_CASE("verdict is stable under the sign of c0") {
  std::mt19937_64 rng(37);
  const ModelMetricSpec spec{-1.0, 4};
  const std::vector<ChartPoint> pts = sample(rng, 4, 5);
  const Verdict v = obstruction_verdict(standard_j0(4), spec, pts);
  CHECK(v.status == VerdictStatus::Obstructed);
}

TEST_CASE("verdict preconditions") {
  std::mt19937_64 rng(41);
  const std::vector<ChartPoint> pts = sample(rng, 4, 2);
  CHECK_THROWS_AS(obstruction_verdict(standard_j0(4), {0.0, 4}, pts), ConfigError);
  const std::vector<ChartPoint> pts2 = sample(rng, 2, 2);
  CHECK_THROWS_AS(obstruction_verdict(standard_j0(2), {1.0, 2}, pts2), ConfigError);
  CHECK_THROWS_AS(obstruction_verdict(standard_j0(4), {1.0, 4}, {}), ConfigError);
}

TEST_CASE("no real symmetric matrix squares to -Id") {
  CHECK(symmetric_spectral_check(Eigen::MatrixXd::Zero(3, 3)) ==
        doctest::Approx(1.0).epsilon(1e-14));
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(2, 2);
  D(0, 0) = 3.0;
  D(1, 1) = -2.0;
  CHECK(symmetric_spectral_check(D) == doctest::Approx(5.0).epsilon(1e-12));

  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    const int dim = 2 + static_cast<int>(rng() % 5);
    Eigen::MatrixXd S(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) S(i, j) = testutil::uniform(rng, -2.0, 2.0);
    S = 0.5 * (S + S.transpose()).eval();
    CHECK(symmetric_spectral_check(S) >= 1.0 - 1e-10);
  }
  CHECK_THROWS_AS(symmetric_spectral_check(
                      (Eigen::MatrixXd(2, 2) << 0, 1, -1, 0).finished()),
                  DomainError);
}

TEST_CASE("AC action matrices stay non-symmetric in the orthonormal frame") {
  std::mt19937_64 rng(47);
  const ModelMetricSpec spec{1.0, 4};
  const MetricField g = model_metric(spec);
  const ACStructureField A = perturbed_ac_field(4, 53, 0.1);
  for (int trial = 0; trial < 5; ++trial) {
    const ChartPoint p = random_point(rng, 4);
    const Eigen::MatrixXd G = g.value(p);
    const Eigen::MatrixXd E = orthonormal_frame(G);
    const Eigen::MatrixXd act = E.inverse() * A.action(p) * E;
    CHECK((act - act.transpose()).cwiseAbs().maxCoeff() > 1e-8);
  }
}

TEST_CASE("pointwise norms distinguish parallel and non-parallel structures") {
  std::mt19937_64 rng(53);
  SUBCASE("dimension 2: J0 is parallel and integrable") {
    const MetricField g = model_metric({1.0, 2});
    const ACStructureField A = standard_j0(2);
    for (int trial = 0; trial < 5; ++trial) {
      const ChartPoint p = random_point(rng, 2);
      CHECK(max_dnabla_norm(A, g, p) < 1e-8);
      CHECK(max_nijenhuis_norm(A, p) < 1e-12);
    }
  }
  SUBCASE("dimension 4: J0 fails to be parallel away from the origin") {
    const MetricField g = model_metric({1.0, 4});
    const ACStructureField A = standard_j0(4);
    Eigen::VectorXd x(4);
    x << 0.3, -0.2, 0.4, 0.1;
    CHECK(max_dnabla_norm(A, g, ChartPoint(x)) > 1e-3);
    CHECK(max_nijenhuis_norm(A, ChartPoint(x)) < 1e-12);
  }
}
