// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include "core/chart.hpp"
#include "core/scalar_field.hpp"

namespace curv {

// Value, gradient and (symmetrized) Hessian of a scalar field at a point.
struct JetValue {
  double value{0.0};
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
};

// Exact-to-roundoff jet via hyper-dual evaluation, one pass per (i, j)
// direction pair.  Throws DomainError outside the field's guard and
// NonFiniteError if any output fails to be finite.
JetValue jet(const ScalarField& f, const ChartPoint& p);

// Central finite differences; cross-check oracle only, never used by the
// main pipeline.  The guard must hold at every stencil point.
JetValue jet_fd(const ScalarField& f, const ChartPoint& p, double h = 1e-5);

// Gradient only (n hyper-dual passes instead of n(n+1)/2).
Eigen::VectorXd jet_grad(const ScalarField& f, const ChartPoint& p);

}  // namespace curv
