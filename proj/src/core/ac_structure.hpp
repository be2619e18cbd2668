// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "core/chart.hpp"
#include "core/metric.hpp"
#include "core/scalar_field.hpp"
#include "core/tensor.hpp"

namespace curv {

// Almost-complex structure field: a (1,1)-tensor with A(p) A(p) = -Id
// pointwise.  Components are stored as the action matrix in the coordinate
// frame, comp[r][c] = output component r of A applied to e_c, so that
// A(v) = [comp] v for column vectors of coordinate components.  In the
// basis-expansion convention A(e_a) = sum_b A_ab e_b this means
// A_ab = comp[b][a].
struct ACStructureField {
  int dim{0};
  std::vector<std::vector<ScalarField>> comp;

  Eigen::MatrixXd action(const ChartPoint& p) const;
  bool valid_at(const ChartPoint& p) const;

  // Throws DomainError if A(p)A(p) deviates from -Id by more than tol.
  void validate_at(const ChartPoint& p, double tol = 1e-10) const;
};

// Vector field given by n coefficient ScalarFields in the coordinate frame.
struct VectorFieldSpec {
  std::vector<ScalarField> comps;

  int dim() const { return static_cast<int>(comps.size()); }
  Eigen::VectorXd value(const ChartPoint& p) const;

  static VectorFieldSpec constant(const Eigen::VectorXd& v);
};

// Tangent-bundle-valued k-form given by its coordinate-frame component
// fields: component(frame indices, output index) is a scalar field on the
// chart.  A itself is the degree-1 case.
struct VectorValuedForm {
  int degree{0};
  int dim{0};
  std::function<ScalarField(const std::vector<int>&, int)> component;

  static VectorValuedForm from_ac(const ACStructureField& A);
  static VectorValuedForm identity(int dim);
  static VectorValuedForm from_vector_field(const VectorFieldSpec& Z);
};

// Action matrix together with first and second coordinate derivatives.
struct ACJets {
  Eigen::MatrixXd a;
  Tensor3 da;   // da(m, r, c)     = d_m comp[r][c]
  Tensor4 d2a;  // d2a(m, l, r, c) = d_m d_l comp[r][c]
};

ACJets ac_jets(const ACStructureField& A, const ChartPoint& p);

// Standard block-diagonal structure J0: e_{2i} -> e_{2i+1} -> -e_{2i}.
ACStructureField standard_j0(int dim);

// Conjugated field A(x) = B(x) J0 B(x)^{-1} with B = I + eps * P(x) and P a
// seeded quadratic polynomial matrix; A A = -Id holds analytically.
ACStructureField perturbed_ac_field(int dim, std::uint64_t seed, double eps);

// A with user-supplied component expressions a[a][b] = A_ab (row = input
// index, per the basis-expansion convention); validated A A = -Id at use.
ACStructureField custom_ac_field(int dim,
                                 const std::vector<std::vector<std::string>>& exprs);

Eigen::VectorXd lie_bracket(const VectorFieldSpec& X, const VectorFieldSpec& Y,
                            const ChartPoint& p);

// N_A(X, Y) = [AX, AY] - A([AX, Y] + [X, AY]) - [X, Y].
Eigen::VectorXd nijenhuis(const ACStructureField& A, const VectorFieldSpec& X,
                          const VectorFieldSpec& Y, const ChartPoint& p);

// Applies A to a vector field, producing the component fields of A(X).
VectorFieldSpec apply_ac(const ACStructureField& A, const VectorFieldSpec& X);

// Covariant exterior derivative of a degree-k form (k <= 2) evaluated on
// coordinate frame indices; idx.size() == degree + 1.
Eigen::VectorXd dnabla(const VectorValuedForm& alpha, const MetricField& g,
                       const ChartPoint& p, const std::vector<int>& idx);

// Pointwise data for the d^nabla A identity suite: the matrices
// M_i = (nabla_i A) and the 2-form components beta(i, j) = M_i e_j - M_j e_i.
struct DnablaAData {
  ACJets aj;
  ConnectionAtPoint conn;
  std::vector<Eigen::MatrixXd> nabla;  // nabla[i] = covariant derivative of A
                                       // in direction e_i, as action matrix
  Eigen::VectorXd beta(int i, int j) const { return nabla[i].col(j) - nabla[j].col(i); }
  Eigen::VectorXd beta(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;
};

DnablaAData dnabla_a_data(const ACStructureField& A, const MetricField& g,
                          const ChartPoint& p);

// (d^nabla)^2 A on frame indices (i, j, k), assembled from second
// derivatives of A and first derivatives of the connection.
Eigen::VectorXd dnabla_squared_a(const ACStructureField& A, const MetricField& g,
                                 const ChartPoint& p, int i, int j, int k);

struct Residual {
  double residual{0.0};
  double scale{1.0};
  double normalized() const { return residual / scale; }
};

// N_A(X,Y) = A o (d^nabla A(AX, AY) - d^nabla A(X, Y)).
Residual check_eq1(const ACStructureField& A, const MetricField& g,
                   const ChartPoint& p, const VectorFieldSpec& X,
                   const VectorFieldSpec& Y);

// -A o N_A = A^T o d^nabla A o A - d^nabla A, with A^T the matrix transpose
// in the coordinate frame.
Residual check_eq2(const ACStructureField& A, const MetricField& g,
                   const ChartPoint& p, const VectorFieldSpec& X,
                   const VectorFieldSpec& Y);

// d^nabla A o A + A o d^nabla A = 0.
Residual check_anticommute(const ACStructureField& A, const MetricField& g,
                           const ChartPoint& p, const Eigen::VectorXd& X,
                           const Eigen::VectorXd& Y);

struct CyclicSumSides {
  Eigen::VectorXd lhs;  // (d^nabla)^2 A (e_i, e_j, e_k)
  Eigen::VectorXd rhs;  // R(e_i,e_j)(A e_k) + R(e_j,e_k)(A e_i) + R(e_k,e_i)(A e_j)
  double scale{1.0};
};

CyclicSumSides cyclic_curvature_sum(const ACStructureField& A,
                                    const MetricField& g, const ChartPoint& p,
                                    int i, int j, int k);

// Rm(X,Y,AZ,W) + Rm(Y,Z,AX,W) + Rm(Z,X,AY,W) from coordinate components.
double curvature_cyclic_contraction(const CurvatureAtPoint& cv,
                                    const Eigen::MatrixXd& a_action,
                                    const Eigen::VectorXd& X,
                                    const Eigen::VectorXd& Y,
                                    const Eigen::VectorXd& Z,
                                    const Eigen::VectorXd& W);

}  // namespace curv
