// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "core/jet.hpp"
#include "test_util.hpp"

using namespace curv;
using testutil::random_point;
using testutil::random_poly;

namespace {

ChartPoint pt(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) v[i++] = x;
  return ChartPoint(v);
}

}  // namespace

TEST_CASE("jet of x1^2 + 3 x2") {
  ScalarField f{[](std::span<const Dual> x) { return x[0] * x[0] + 3.0 * x[1]; },
                nullptr};
  const JetValue jv = jet(f, pt({1.0, 2.0}));
  CHECK(jv.value == doctest::Approx(7.0).epsilon(1e-14));
  CHECK(jv.grad[0] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(jv.grad[1] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(jv.hess(0, 0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(jv.hess(0, 1) == 0.0);
  CHECK(jv.hess(1, 1) == 0.0);
}

TEST_CASE("jet of a constant field") {
  const JetValue jv = jet(constant_field(5.0), pt({0.3, -0.4}));
  CHECK(jv.value == 5.0);
  CHECK(jv.grad.cwiseAbs().maxCoeff() == 0.0);
  CHECK(jv.hess.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("jet of the conformal factor at the origin, n = 4") {
  ScalarField f{[](std::span<const Dual> x) {
                  Dual r2(0.0);
                  for (const Dual& xi : x) r2 = r2 + xi * xi;
                  return pow(1.0 + r2 / 4.0, -2.0);
                },
                nullptr};
  const ChartPoint origin = pt({0.0, 0.0, 0.0, 0.0});
  const JetValue jv = jet(f, origin);
  CHECK(jv.value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(jv.grad.cwiseAbs().maxCoeff() < 1e-14);
  CHECK((jv.hess + Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() <
        1e-12);

  // Oracle: central finite differences at h = 1e-5.
  const JetValue fd = jet_fd(f, origin, 1e-5);
  CHECK((jv.grad - fd.grad).cwiseAbs().maxCoeff() < 1e-7);
  CHECK((jv.hess - fd.hess).cwiseAbs().maxCoeff() < 1e-5);
}

TEST_CASE("jet_fd of sin(x1) at the origin") {
  ScalarField f{[](std::span<const Dual> x) { return sin(x[0]); }, nullptr};
  const JetValue fd = jet_fd(f, pt({0.0, 0.0}), 1e-5);
  CHECK(std::abs(fd.grad[0] - 1.0) < 1e-9);
}

TEST_CASE("jet_fd of a constant field") {
  const JetValue fd = jet_fd(constant_field(2.5), pt({0.1, 0.2}), 1e-5);
  CHECK(fd.grad.cwiseAbs().maxCoeff() < 1e-10);
  CHECK(fd.hess.cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("jet vs jet_fd agreement on random polynomial fields") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = (trial % 2 == 0) ? 2 : 4;
    const ScalarField f = random_poly(rng, dim);
    const ChartPoint p = random_point(rng, dim);
    const JetValue a = jet(f, p);
    const JetValue b = jet_fd(f, p);
    const double gscale = 1.0 + a.grad.cwiseAbs().maxCoeff();
    const double hscale = 1.0 + a.hess.cwiseAbs().maxCoeff();
    CHECK((a.grad - b.grad).cwiseAbs().maxCoeff() / gscale < 1e-4);
    CHECK((a.hess - b.hess).cwiseAbs().maxCoeff() / hscale < 1e-3);
    CHECK(std::abs(a.value - b.value) < 1e-12 * (1.0 + std::abs(a.value)));
  }
}

TEST_CASE("jet is linear") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int dim = 4;
    const ScalarField f = random_poly(rng, dim);
    const ScalarField g = random_poly(rng, dim);
    const double a = testutil::uniform(rng, -2.0, 2.0);
    const double b = testutil::uniform(rng, -2.0, 2.0);
    const ScalarField combo = a * f + b * g;
    const ChartPoint p = random_point(rng, dim);

    const JetValue jc = jet(combo, p);
    const JetValue jf = jet(f, p);
    const JetValue jg = jet(g, p);
    CHECK(std::abs(jc.value - (a * jf.value + b * jg.value)) < 1e-12);
    CHECK((jc.grad - (a * jf.grad + b * jg.grad)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((jc.hess - (a * jf.hess + b * jg.hess)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("Hessian symmetry is exact after symmetrization") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const ScalarField f = random_poly(rng, 6);
    const JetValue jv = jet(f, random_point(rng, 6));
    CHECK((jv.hess - jv.hess.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("guard violations are hard errors") {
  ScalarField f{[](std::span<const Dual> x) { return x[0]; },
                [](const ChartPoint& p) { return p[0] > 0.0; }};
  CHECK_THROWS_AS(jet(f, pt({-1.0, 0.0})), DomainError);
  CHECK_NOTHROW(jet(f, pt({1.0, 0.0})));
  // jet_fd stencil crossing the guard boundary also fails.
  CHECK_THROWS_AS(jet_fd(f, pt({0.5e-5, 0.0}), 1e-5), DomainError);
}

TEST_CASE("non-finite outputs are reported") {
  ScalarField f{[](std::span<const Dual> x) { return log(x[0]); }, nullptr};
  CHECK_THROWS_AS(jet(f, pt({-1.0, 0.0})), NonFiniteError);
}
