// SPDX-License-Identifier: Apache-2.0
#include "core/obstruction.hpp"

#include <cmath>

namespace curv {

const char* to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::IntegrableConsistent: return "INTEGRABLE_CONSISTENT";
    case VerdictStatus::Obstructed: return "OBSTRUCTED";
    case VerdictStatus::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

double eq3_residual(const ACStructureField& A, const MetricField& g,
                    const ChartPoint& p, const Eigen::VectorXd& X,
                    const Eigen::VectorXd& Y, const Eigen::VectorXd& Z) {
  const CurvatureAtPoint cv = riemann(g, p);
  return curvature_cyclic_contraction(cv, A.action(p), X, Y, Z, X);
}

namespace {

struct FramePointData {
  Eigen::MatrixXd frame;
  CurvatureAtPoint cv;        // orthonormal-frame curvature
  Eigen::MatrixXd act_frame;  // A's action matrix in the frame
};

FramePointData frame_point_data(const ACStructureField& A,
                                const ModelMetricSpec& spec,
                                const ChartPoint& p) {
  const MetricField g = model_metric(spec);
  FramePointData d;
  const Eigen::MatrixXd G = g.value(p);
  d.frame = orthonormal_frame(G);
  d.cv = riemann_in_frame(riemann(g, p), G, d.frame);
  d.act_frame = d.frame.inverse() * A.action(p) * d.frame;
  return d;
}

// Basis-expansion components A_ab (A(E_a) = sum_b A_ab E_b) are the
// transpose of the frame action matrix.
ContractionRecord record_for(const FramePointData& d, const ChartPoint& p,
                             int i, int j, int k, double c0, double sigma) {
  const int n = static_cast<int>(d.frame.rows());
  auto A_ab = [&d](int a, int b) { return d.act_frame(b, a); };
  ContractionRecord rec;
  rec.point = p.coords();
  rec.i = i;
  rec.j = j;
  rec.k = k;
  rec.frame = d.frame;
  for (int b = 0; b < n; ++b)
    rec.brute_sum += A_ab(k, b) * d.cv.rm(i, j, b, i) +
                     A_ab(i, b) * d.cv.rm(j, k, b, i) +
                     A_ab(j, b) * d.cv.rm(k, i, b, i);
  rec.closed_form = sigma * c0 * (A_ab(k, j) - A_ab(j, k));
  return rec;
}

void check_triple(int n, int i, int j, int k) {
  if (n < 4)
    throw DimensionError(
        "the distinct-index reduction needs dimension at least 4");
  if (i == j || j == k || i == k)
    throw IndexError("contraction indices must be distinct");
  if (i < 0 || j < 0 || k < 0 || i >= n || j >= n || k >= n)
    throw IndexError("contraction index out of range");
}

}  // namespace

ContractionRecord contract_obstruction(const ACStructureField& A,
                                       const ModelMetricSpec& spec,
                                       const ChartPoint& p, int i, int j, int k,
                                       double sigma) {
  check_triple(spec.dim, i, j, k);
  const FramePointData d = frame_point_data(A, spec, p);
  return record_for(d, p, i, j, k, spec.c0, sigma);
}

std::vector<ContractionRecord> contraction_sweep(const ACStructureField& A,
                                                 const ModelMetricSpec& spec,
                                                 const ChartPoint& p,
                                                 double sigma) {
  const int n = spec.dim;
  if (n < 4)
    throw DimensionError(
        "the distinct-index reduction needs dimension at least 4");
  const FramePointData d = frame_point_data(A, spec, p);
  std::vector<ContractionRecord> out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (i == j || j == k || i == k) continue;
        out.push_back(record_for(d, p, i, j, k, spec.c0, sigma));
      }
  return out;
}

Verdict obstruction_verdict(const ACStructureField& A, const ModelMetricSpec& spec,
                         const std::vector<ChartPoint>& points) {
  const int n = spec.dim;
  if (n < 4) throw ConfigError("obstruction_verdict requires dimension >= 4");
  if (spec.c0 == 0.0)
    throw ConfigError("obstruction_verdict requires non-zero c0");
  if (points.empty()) throw ConfigError("obstruction_verdict needs sample points");

  const double sigma = calibrate_sign(spec, points);
  const MetricField g = model_metric(spec);

  Verdict v;
  for (size_t pi = 0; pi < points.size(); ++pi) {
    const ChartPoint& p = points[pi];
    A.validate_at(p);
    v.max_dnabla = std::max(v.max_dnabla, max_dnabla_norm(A, g, p));
    v.max_nijenhuis = std::max(v.max_nijenhuis, max_nijenhuis_norm(A, p));
    for (const ContractionRecord& rec : contraction_sweep(A, spec, p, sigma)) {
      if (std::abs(rec.closed_form) > v.max_contraction) {
        v.max_contraction = std::abs(rec.closed_form);
        v.witness_i = rec.i;
        v.witness_j = rec.j;
        v.witness_k = rec.k;
        v.witness_point = static_cast<int>(pi);
      }
    }
  }

  if (v.max_contraction > kObstructionFactor * kIdentityTol)
    v.status = VerdictStatus::Obstructed;
  else if (v.max_dnabla < kIntegrableTol && v.max_nijenhuis < kIntegrableTol)
    v.status = VerdictStatus::IntegrableConsistent;
  else
    v.status = VerdictStatus::Inconclusive;
  return v;
}

double symmetric_spectral_check(const Eigen::MatrixXd& S) {
  if ((S - S.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + S.cwiseAbs().maxCoeff()))
    throw DomainError("spectral check input is not symmetric");
  const Eigen::MatrixXd M =
      S * S + Eigen::MatrixXd::Identity(S.rows(), S.cols());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  return es.eigenvalues().minCoeff();
}

double max_dnabla_norm(const ACStructureField& A, const MetricField& g,
                       const ChartPoint& p) {
  const DnablaAData d = dnabla_a_data(A, g, p);
  const int n = A.dim;
  double m = 0.0;
  double opmax = d.aj.a.cwiseAbs().maxCoeff();
  for (int i = 0; i < n; ++i)
    opmax = std::max(opmax, d.nabla[i].cwiseAbs().maxCoeff());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      m = std::max(m, d.beta(i, j).cwiseAbs().maxCoeff());
  return m / (1.0 + opmax);
}

double max_nijenhuis_norm(const ACStructureField& A, const ChartPoint& p) {
  const int n = A.dim;
  double m = 0.0;
  const double opmax = A.action(p).cwiseAbs().maxCoeff();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      VectorFieldSpec ei = VectorFieldSpec::constant(Eigen::VectorXd::Unit(n, i));
      VectorFieldSpec ej = VectorFieldSpec::constant(Eigen::VectorXd::Unit(n, j));
      m = std::max(m, nijenhuis(A, ei, ej, p).cwiseAbs().maxCoeff());
    }
  return m / (1.0 + opmax);
}

}  // namespace curv
