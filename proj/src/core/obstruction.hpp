// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "core/ac_structure.hpp"
#include "core/chart.hpp"
#include "core/metric.hpp"

namespace curv {

// Tolerance ladder shared by the verdict logic: identity residuals at
// kIdentityTol * scale, integrability calls at kIntegrableTol * scale, and
// the obstruction cut a decade above the identity tolerance.
constexpr double kIdentityTol = 1e-6;
constexpr double kIntegrableTol = 1e-8;
constexpr double kObstructionFactor = 10.0;

// One (point, triple) evaluation of the distinct-index contraction.
struct ContractionRecord {
  Eigen::VectorXd point;
  int i{0}, j{0}, k{0};
  double brute_sum{0.0};    // sum_b [A_kb R_ijbi + A_ib R_jkbi + A_jb R_kibi]
  double closed_form{0.0};  // sigma * c0 * (A_kj - A_jk)
  Eigen::MatrixXd frame;    // orthonormal frame used (columns)
};

enum class VerdictStatus { IntegrableConsistent, Obstructed, Inconclusive };

struct Verdict {
  VerdictStatus status{VerdictStatus::Inconclusive};
  double max_dnabla{0.0};
  double max_nijenhuis{0.0};
  double max_contraction{0.0};
  double tolerance{kIdentityTol};
  // Witnessing triple for the largest contraction, when obstructed.
  int witness_i{-1}, witness_j{-1}, witness_k{-1};
  int witness_point{-1};
};

const char* to_string(VerdictStatus s);

// Left-hand side of the X = W contraction:
// Rm(X,Y,AZ,X) + Rm(Y,Z,AX,X) + Rm(Z,X,AY,X).
double eq3_residual(const ACStructureField& A, const MetricField& g,
                    const ChartPoint& p, const Eigen::VectorXd& X,
                    const Eigen::VectorXd& Y, const Eigen::VectorXd& Z);

// Brute-force vs closed-form contraction for a model metric, in the
// orthonormal frame at p.  Requires n >= 4 and distinct i, j, k (the
// reduction needs an index i distinct from both j and k).
ContractionRecord contract_obstruction(const ACStructureField& A,
                                       const ModelMetricSpec& spec,
                                       const ChartPoint& p, int i, int j, int k,
                                       double sigma);

// All distinct-triple records at one point, sharing the frame curvature
// assembly across triples.
std::vector<ContractionRecord> contraction_sweep(const ACStructureField& A,
                                                 const ModelMetricSpec& spec,
                                                 const ChartPoint& p,
                                                 double sigma);

// Sweeps all distinct triples over the sample points and classifies the
// scenario.  Requires n >= 4 and c0 != 0.
Verdict obstruction_verdict(const ACStructureField& A, const ModelMetricSpec& spec,
                         const std::vector<ChartPoint>& points);

// lambda_min(S^2 + I) for symmetric S; always >= 1, certifying that no real
// symmetric matrix squares to -Id.
double symmetric_spectral_check(const Eigen::MatrixXd& S);

// Scale-normalized max over coordinate-frame pairs of |d^nabla A| at p.
double max_dnabla_norm(const ACStructureField& A, const MetricField& g,
                       const ChartPoint& p);

// Scale-normalized max over coordinate-frame pairs of |N_A| at p.
double max_nijenhuis_norm(const ACStructureField& A, const ChartPoint& p);

}  // namespace curv
