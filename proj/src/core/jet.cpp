// SPDX-License-Identifier: Apache-2.0
#include "core/jet.hpp"

#include <cmath>
#include <vector>

namespace curv {

namespace {

std::vector<Dual> lift(const ChartPoint& p) {
  std::vector<Dual> x(p.dim());
  for (int i = 0; i < p.dim(); ++i) x[i] = Dual(p[i]);
  return x;
}

void require_valid(const ScalarField& f, const ChartPoint& p) {
  if (!f.valid_at(p)) throw DomainError("point outside field domain guard");
}

}  // namespace

JetValue jet(const ScalarField& f, const ChartPoint& p) {
  require_valid(f, p);
  const int n = p.dim();
  JetValue out;
  out.grad = Eigen::VectorXd::Zero(n);
  out.hess = Eigen::MatrixXd::Zero(n, n);

  auto x = lift(p);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      x[i].d1 = 1.0;
      x[j].d2 = 1.0;
      const Dual r = f.eval(x);
      x[i].d1 = 0.0;
      x[j].d2 = 0.0;
      out.value = r.f;
      out.grad[i] = r.d1;
      out.grad[j] = r.d2;
      out.hess(i, j) = r.d12;
      out.hess(j, i) = r.d12;
    }
  }
  out.hess = 0.5 * (out.hess + out.hess.transpose()).eval();

  if (!std::isfinite(out.value) || !out.grad.allFinite() ||
      !out.hess.allFinite())
    throw NonFiniteError("jet produced non-finite output");
  return out;
}

Eigen::VectorXd jet_grad(const ScalarField& f, const ChartPoint& p) {
  require_valid(f, p);
  const int n = p.dim();
  Eigen::VectorXd g(n);
  auto x = lift(p);
  for (int i = 0; i < n; ++i) {
    x[i].d1 = 1.0;
    g[i] = f.eval(x).d1;
    x[i].d1 = 0.0;
  }
  if (!g.allFinite()) throw NonFiniteError("gradient is non-finite");
  return g;
}

JetValue jet_fd(const ScalarField& f, const ChartPoint& p, double h) {
  const int n = p.dim();

  auto shifted = [&](int i, double si, int j, double sj) {
    Eigen::VectorXd c = p.coords();
    if (i >= 0) c[i] += si * h;
    if (j >= 0) c[j] += sj * h;
    return ChartPoint(c);
  };
  auto value_at = [&](const ChartPoint& q) {
    require_valid(f, q);
    std::vector<Dual> x(q.dim());
    for (int i = 0; i < q.dim(); ++i) x[i] = Dual(q[i]);
    return f.eval(x).f;
  };

  JetValue out;
  out.value = value_at(p);
  out.grad = Eigen::VectorXd::Zero(n);
  out.hess = Eigen::MatrixXd::Zero(n, n);

  for (int i = 0; i < n; ++i) {
    const double fp = value_at(shifted(i, +1, -1, 0));
    const double fm = value_at(shifted(i, -1, -1, 0));
    out.grad[i] = (fp - fm) / (2.0 * h);
    out.hess(i, i) = (fp - 2.0 * out.value + fm) / (h * h);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double fpp = value_at(shifted(i, +1, j, +1));
      const double fpm = value_at(shifted(i, +1, j, -1));
      const double fmp = value_at(shifted(i, -1, j, +1));
      const double fmm = value_at(shifted(i, -1, j, -1));
      const double v = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
      out.hess(i, j) = v;
      out.hess(j, i) = v;
    }
  }
  return out;
}

}  // namespace curv
