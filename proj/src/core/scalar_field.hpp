// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "core/chart.hpp"
#include "core/hyperdual.hpp"

namespace curv {

// Smooth scalar coefficient function on a chart, evaluable in hyper-dual
// arithmetic so first and second derivatives come out exactly.  The guard
// marks the open set where the supplier promises twice-differentiability.
struct ScalarField {
  std::function<Dual(std::span<const Dual>)> eval;
  std::function<bool(const ChartPoint&)> guard;  // empty = whole chart

  bool valid_at(const ChartPoint& p) const { return !guard || guard(p); }

  double value(const ChartPoint& p) const {
    std::vector<Dual> x(p.coords().data(), p.coords().data() + p.dim());
    return eval(x).f;
  }
};

inline ScalarField constant_field(double c) {
  return {[c](std::span<const Dual>) { return Dual(c); }, nullptr};
}

inline ScalarField coordinate_field(int i) {
  return {[i](std::span<const Dual> x) { return x[i]; }, nullptr};
}

inline ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  auto guard = [ga = a.guard, gb = b.guard](const ChartPoint& p) {
    return (!ga || ga(p)) && (!gb || gb(p));
  };
  return {[ea = a.eval, eb = b.eval](std::span<const Dual> x) {
            return ea(x) + eb(x);
          },
          guard};
}

inline ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  auto guard = [ga = a.guard, gb = b.guard](const ChartPoint& p) {
    return (!ga || ga(p)) && (!gb || gb(p));
  };
  return {[ea = a.eval, eb = b.eval](std::span<const Dual> x) {
            return ea(x) * eb(x);
          },
          guard};
}

inline ScalarField operator*(double c, const ScalarField& a) {
  return {[c, ea = a.eval](std::span<const Dual> x) { return c * ea(x); },
          a.guard};
}

inline ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  return a + (-1.0) * b;
}

}  // namespace curv
