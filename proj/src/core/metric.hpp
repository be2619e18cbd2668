// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "core/chart.hpp"
#include "core/jet.hpp"
#include "core/scalar_field.hpp"
#include "core/tensor.hpp"

namespace curv {

// Symmetric positive-definite (0,2)-tensor field given by coefficient
// functions g_ij in chart coordinates.
struct MetricField {
  int dim{0};
  std::vector<std::vector<ScalarField>> g;  // g[i][j], symmetric

  Eigen::MatrixXd value(const ChartPoint& p) const;
  bool valid_at(const ChartPoint& p) const;
};

// Constant-curvature model family: g_ij(x) = delta_ij (1 + (c0/4)|x|^2)^-2,
// with chart domain restricted to |x|^2 < 4/|c0| when c0 < 0.
struct ModelMetricSpec {
  double c0{0.0};
  int dim{0};
};

enum class FrameTag { Coordinate, Orthonormal };

enum class DiffMethod { HyperDual, FiniteDifference };

// Metric value together with first and second coordinate derivatives at a
// point; the raw material for Christoffel symbols and curvature.
struct MetricJets {
  Eigen::MatrixXd g;
  Eigen::MatrixXd g_inv;
  Tensor3 dg;   // dg(m, i, j)     = d_m g_ij
  Tensor4 d2g;  // d2g(m, l, i, j) = d_m d_l g_ij
};

struct ConnectionAtPoint {
  Tensor3 gamma;   // gamma(k, i, j)     = Gamma^k_ij (symmetric in i, j)
  Tensor4 dgamma;  // dgamma(m, k, i, j) = d_m Gamma^k_ij
};

struct CurvatureAtPoint {
  Tensor4 r_mixed;  // r_mixed(i, j, k, l): component l of R(e_i, e_j) e_k
  Tensor4 rm;       // rm(i, j, k, l) = Rm(e_i, e_j, e_k, e_l)
  FrameTag frame{FrameTag::Coordinate};
};

MetricJets metric_jets(const MetricField& g, const ChartPoint& p,
                       DiffMethod method = DiffMethod::HyperDual,
                       double fd_step = 1e-5);

ConnectionAtPoint christoffel_from_jets(const MetricJets& mj);
ConnectionAtPoint christoffel(const MetricField& g, const ChartPoint& p);

CurvatureAtPoint riemann_from_jets(const MetricJets& mj);
CurvatureAtPoint riemann(const MetricField& g, const ChartPoint& p);

// Curvature components in a frame given by the columns of E (coordinate
// components of the frame vectors).
CurvatureAtPoint riemann_in_frame(const CurvatureAtPoint& coord,
                                  const Eigen::MatrixXd& g_value,
                                  const Eigen::MatrixXd& frame);

double sectional_curvature(const MetricField& g, const ChartPoint& p,
                           const Eigen::VectorXd& X, const Eigen::VectorXd& Y);

// h owedge k evaluated on four vectors; h, k symmetric bilinear forms.
double kulkarni_nomizu(const Eigen::MatrixXd& h, const Eigen::MatrixXd& k,
                       const Eigen::VectorXd& X, const Eigen::VectorXd& Y,
                       const Eigen::VectorXd& Z, const Eigen::VectorXd& W);

MetricField model_metric(const ModelMetricSpec& spec);

// Modified Gram-Schmidt on the coordinate basis in index order; column i of
// the result holds the coordinate components of the frame vector E_i, so
// E^T [g] E = I.
Eigen::MatrixXd orthonormal_frame(const MetricField& g, const ChartPoint& p);
Eigen::MatrixXd orthonormal_frame(const Eigen::MatrixXd& g_value);

// Global sign sigma with sigma * R_ijji = c0 in the orthonormal frame of the
// numerically computed curvature; must be consistent across the supplied
// sample points and index pairs.
double calibrate_sign(const ModelMetricSpec& spec,
                      const std::vector<ChartPoint>& points);

}  // namespace curv
