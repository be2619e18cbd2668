// SPDX-License-Identifier: Apache-2.0
#include "core/ac_structure.hpp"

#include <cmath>
#include <memory>
#include <random>

#include "core/expression.hpp"
#include "core/jet.hpp"

namespace curv {

namespace {

using DualMatrix = std::vector<std::vector<Dual>>;

// Solves M X = RHS by Gaussian elimination with partial pivoting on the
// value parts; M and RHS are consumed.
DualMatrix dual_solve(DualMatrix M, DualMatrix rhs) {
  const int n = static_cast<int>(M.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(M[r][col].f) > std::abs(M[piv][col].f)) piv = r;
    if (std::abs(M[piv][col].f) < 1e-12)
      throw DomainError("perturbation matrix B is numerically singular");
    std::swap(M[piv], M[col]);
    std::swap(rhs[piv], rhs[col]);
    const Dual inv = inverse(M[col][col]);
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const Dual factor = M[r][col] * inv;
      for (int c = col; c < n; ++c) M[r][c] = M[r][c] - factor * M[col][c];
      for (int c = 0; c < n; ++c) rhs[r][c] = rhs[r][c] - factor * rhs[col][c];
    }
    for (int c = col; c < n; ++c) M[col][c] = M[col][c] * inv;
    for (int c = 0; c < n; ++c) rhs[col][c] = rhs[col][c] * inv;
  }
  return rhs;
}

Eigen::MatrixXd j0_matrix(int n) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int b = 0; b < n; b += 2) {
    J(b + 1, b) = 1.0;
    J(b, b + 1) = -1.0;
  }
  return J;
}

// Quadratic polynomial with seeded coefficients; scaled so entries stay
// O(1) on the sampling box regardless of dimension.
struct Poly2 {
  double c0{0.0};
  Eigen::VectorXd lin;
  Eigen::MatrixXd quad;

  Dual eval(std::span<const Dual> x) const {
    Dual v(c0);
    const int n = static_cast<int>(lin.size());
    for (int i = 0; i < n; ++i) {
      v = v + lin[i] * x[i];
      for (int j = i; j < n; ++j) v = v + quad(i, j) * (x[i] * x[j]);
    }
    return v;
  }
};

}  // namespace

Eigen::MatrixXd ACStructureField::action(const ChartPoint& p) const {
  Eigen::MatrixXd M(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) M(r, c) = comp[r][c].value(p);
  return M;
}

bool ACStructureField::valid_at(const ChartPoint& p) const {
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c)
      if (!comp[r][c].valid_at(p)) return false;
  return true;
}

void ACStructureField::validate_at(const ChartPoint& p, double tol) const {
  const Eigen::MatrixXd M = action(p);
  const double dev =
      (M * M + Eigen::MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff();
  if (dev > tol)
    throw DomainError("A o A deviates from -Id by " + std::to_string(dev));
}

Eigen::VectorXd VectorFieldSpec::value(const ChartPoint& p) const {
  Eigen::VectorXd v(dim());
  for (int i = 0; i < dim(); ++i) v[i] = comps[i].value(p);
  return v;
}

VectorFieldSpec VectorFieldSpec::constant(const Eigen::VectorXd& v) {
  VectorFieldSpec out;
  for (int i = 0; i < v.size(); ++i) out.comps.push_back(constant_field(v[i]));
  return out;
}

VectorValuedForm VectorValuedForm::from_ac(const ACStructureField& A) {
  return {1, A.dim, [&A](const std::vector<int>& idx, int out) {
            return A.comp[out][idx[0]];
          }};
}

VectorValuedForm VectorValuedForm::identity(int dim) {
  return {1, dim, [](const std::vector<int>& idx, int out) {
            return constant_field(idx[0] == out ? 1.0 : 0.0);
          }};
}

VectorValuedForm VectorValuedForm::from_vector_field(const VectorFieldSpec& Z) {
  return {0, Z.dim(), [Z](const std::vector<int>&, int out) {
            return Z.comps[out];
          }};
}

ACJets ac_jets(const ACStructureField& A, const ChartPoint& p) {
  const int n = A.dim;
  ACJets out;
  out.a = Eigen::MatrixXd::Zero(n, n);
  out.da = Tensor3(n);
  out.d2a = Tensor4(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const JetValue jv = jet(A.comp[r][c], p);
      out.a(r, c) = jv.value;
      for (int m = 0; m < n; ++m) {
        out.da(m, r, c) = jv.grad[m];
        for (int l = 0; l < n; ++l) out.d2a(m, l, r, c) = jv.hess(m, l);
      }
    }
  return out;
}

ACStructureField standard_j0(int dim) {
  if (dim < 2 || dim % 2 != 0)
    throw DimensionError("J0 requires even dimension >= 2");
  const Eigen::MatrixXd J = j0_matrix(dim);
  ACStructureField A;
  A.dim = dim;
  A.comp.assign(dim, std::vector<ScalarField>(dim));
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) A.comp[r][c] = constant_field(J(r, c));
  return A;
}

ACStructureField perturbed_ac_field(int dim, std::uint64_t seed, double eps) {
  if (dim < 2 || dim % 2 != 0)
    throw DimensionError("AC field requires even dimension >= 2");
  if (eps < 0.0 || eps > 0.2)
    throw ConfigError("perturbation epsilon must lie in [0, 0.2]");

  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() {
    // Portable uniform in [-1, 1): top 53 bits of the generator output.
    return 2.0 * ((rng() >> 11) * 0x1.0p-53) - 1.0;
  };

  // B(x) = I + eps * P(x); coefficients shrink with dimension so that
  // ||eps P|| stays well below 1 on the sampling box (cond(B) < 10).
  auto P = std::make_shared<std::vector<std::vector<Poly2>>>(
      dim, std::vector<Poly2>(dim));
  const double lin_scale = 1.0 / std::sqrt(double(dim));
  const double quad_scale = 1.0 / double(dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) {
      Poly2& q = (*P)[r][c];
      q.c0 = uniform();
      q.lin = Eigen::VectorXd(dim);
      q.quad = Eigen::MatrixXd::Zero(dim, dim);
      for (int i = 0; i < dim; ++i) {
        q.lin[i] = lin_scale * uniform();
        for (int j = i; j < dim; ++j) q.quad(i, j) = quad_scale * uniform();
      }
    }

  const Eigen::MatrixXd J = j0_matrix(dim);
  auto action_at = [P, J, eps, dim](std::span<const Dual> x) {
    DualMatrix B(dim, std::vector<Dual>(dim));
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) {
        B[r][c] = eps * (*P)[r][c].eval(x);
        if (r == c) B[r][c] = B[r][c] + 1.0;
      }
    // C = B J0, then A = C B^{-1} solved as B^T A^T = C^T.
    DualMatrix Bt(dim, std::vector<Dual>(dim));
    DualMatrix Ct(dim, std::vector<Dual>(dim));
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) {
        Bt[r][c] = B[c][r];
        Dual v(0.0);
        for (int m = 0; m < dim; ++m) v = v + B[c][m] * J(m, r);
        Ct[r][c] = v;
      }
    DualMatrix At = dual_solve(std::move(Bt), std::move(Ct));
    DualMatrix A(dim, std::vector<Dual>(dim));
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) A[r][c] = At[c][r];
    return A;
  };

  ACStructureField A;
  A.dim = dim;
  A.comp.assign(dim, std::vector<ScalarField>(dim));
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c)
      A.comp[r][c] = ScalarField{
          [action_at, r, c](std::span<const Dual> x) { return action_at(x)[r][c]; },
          nullptr};
  return A;
}

ACStructureField custom_ac_field(
    int dim, const std::vector<std::vector<std::string>>& exprs) {
  if (static_cast<int>(exprs.size()) != dim)
    throw ConfigError("custom A needs a " + std::to_string(dim) + "x" +
                      std::to_string(dim) + " expression matrix");
  ACStructureField A;
  A.dim = dim;
  A.comp.assign(dim, std::vector<ScalarField>(dim));
  for (int a = 0; a < dim; ++a) {
    if (static_cast<int>(exprs[a].size()) != dim)
      throw ConfigError("custom A expression matrix is not square");
    for (int b = 0; b < dim; ++b)
      A.comp[b][a] = parse_expression(exprs[a][b], dim);  // A_ab -> action(b, a)
  }
  return A;
}

Eigen::VectorXd lie_bracket(const VectorFieldSpec& X, const VectorFieldSpec& Y,
                            const ChartPoint& p) {
  const int n = p.dim();
  const Eigen::VectorXd xv = X.value(p);
  const Eigen::VectorXd yv = Y.value(p);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (int k = 0; k < n; ++k) {
    const Eigen::VectorXd dy = jet_grad(Y.comps[k], p);
    const Eigen::VectorXd dx = jet_grad(X.comps[k], p);
    out[k] = xv.dot(dy) - yv.dot(dx);
  }
  return out;
}

VectorFieldSpec apply_ac(const ACStructureField& A, const VectorFieldSpec& X) {
  VectorFieldSpec out;
  for (int r = 0; r < A.dim; ++r) {
    ScalarField acc = A.comp[r][0] * X.comps[0];
    for (int c = 1; c < A.dim; ++c) acc = acc + A.comp[r][c] * X.comps[c];
    out.comps.push_back(acc);
  }
  return out;
}

Eigen::VectorXd nijenhuis(const ACStructureField& A, const VectorFieldSpec& X,
                          const VectorFieldSpec& Y, const ChartPoint& p) {
  const VectorFieldSpec AX = apply_ac(A, X);
  const VectorFieldSpec AY = apply_ac(A, Y);
  const Eigen::MatrixXd Ap = A.action(p);
  return lie_bracket(AX, AY, p) -
         Ap * (lie_bracket(AX, Y, p) + lie_bracket(X, AY, p)) -
         lie_bracket(X, Y, p);
}

Eigen::VectorXd dnabla(const VectorValuedForm& alpha, const MetricField& g,
                       const ChartPoint& p, const std::vector<int>& idx) {
  const int n = alpha.dim;
  const int k = alpha.degree;
  if (k > 2) throw DimensionError("dnabla supports degree <= 2 inputs");
  if (static_cast<int>(idx.size()) != k + 1)
    throw IndexError("dnabla needs degree + 1 frame indices");

  const ConnectionAtPoint conn = christoffel(g, p);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);

  for (int t = 0; t <= k; ++t) {
    const int m = idx[t];
    std::vector<int> rest;
    for (int u = 0; u <= k; ++u)
      if (u != t) rest.push_back(idx[u]);

    // (nabla_m alpha)(rest)^l = d_m alpha_rest^l + Gamma^l_ms alpha_rest^s
    //                           - sum_slots Gamma^s_{m rest_t} alpha_{...s...}^l
    Eigen::VectorXd term(n);
    Eigen::VectorXd val(n);
    for (int l = 0; l < n; ++l) {
      const ScalarField f = alpha.component(rest, l);
      val[l] = f.value(p);
      term[l] = jet_grad(f, p)[m];
    }
    for (int l = 0; l < n; ++l)
      for (int s = 0; s < n; ++s) term[l] += conn.gamma(l, m, s) * val[s];
    for (size_t slot = 0; slot < rest.size(); ++slot) {
      for (int s = 0; s < n; ++s) {
        const double gms = conn.gamma(s, m, rest[slot]);
        if (gms == 0.0) continue;
        std::vector<int> sub = rest;
        sub[slot] = s;
        for (int l = 0; l < n; ++l)
          term[l] -= gms * alpha.component(sub, l).value(p);
      }
    }
    out += (t % 2 == 0 ? 1.0 : -1.0) * term;
  }
  return out;
}

Eigen::VectorXd DnablaAData::beta(const Eigen::VectorXd& u,
                                  const Eigen::VectorXd& v) const {
  const int n = static_cast<int>(nabla.size());
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out += u[i] * v[j] * beta(i, j);
  return out;
}

DnablaAData dnabla_a_data(const ACStructureField& A, const MetricField& g,
                          const ChartPoint& p) {
  const int n = A.dim;
  DnablaAData d;
  d.aj = ac_jets(A, p);
  d.conn = christoffel(g, p);
  d.nabla.resize(n);
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXd Gi(n, n);  // (Gamma_i)(l, s) = Gamma^l_is
    Eigen::MatrixXd dAi(n, n);
    for (int l = 0; l < n; ++l)
      for (int s = 0; s < n; ++s) {
        Gi(l, s) = d.conn.gamma(l, i, s);
        dAi(l, s) = d.aj.da(i, l, s);
      }
    d.nabla[i] = dAi + Gi * d.aj.a - d.aj.a * Gi;
  }
  return d;
}

Eigen::VectorXd dnabla_squared_a(const ACStructureField& A, const MetricField& g,
                                 const ChartPoint& p, int i, int j, int k) {
  const int n = A.dim;
  const MetricJets mj = metric_jets(g, p);
  const ConnectionAtPoint conn = christoffel_from_jets(mj);
  const ACJets aj = ac_jets(A, p);

  // Components of beta = d^nabla A; the torsion terms cancel for a
  // symmetric connection, leaving
  // beta_jk^l = d_j A_k^l - d_k A_j^l + Gamma^l_js A_k^s - Gamma^l_ks A_j^s.
  auto beta_val = [&](int a, int b, int l) {
    double v = aj.da(a, l, b) - aj.da(b, l, a);
    for (int s = 0; s < n; ++s)
      v += conn.gamma(l, a, s) * aj.a(s, b) - conn.gamma(l, b, s) * aj.a(s, a);
    return v;
  };
  auto dbeta = [&](int m, int a, int b, int l) {
    double v = aj.d2a(m, a, l, b) - aj.d2a(m, b, l, a);
    for (int s = 0; s < n; ++s)
      v += conn.dgamma(m, l, a, s) * aj.a(s, b) +
           conn.gamma(l, a, s) * aj.da(m, s, b) -
           conn.dgamma(m, l, b, s) * aj.a(s, a) -
           conn.gamma(l, b, s) * aj.da(m, s, a);
    return v;
  };
  auto cov_beta = [&](int m, int a, int b, int l) {
    double v = dbeta(m, a, b, l);
    for (int s = 0; s < n; ++s)
      v += conn.gamma(l, m, s) * beta_val(a, b, s) -
           conn.gamma(s, m, a) * beta_val(s, b, l) -
           conn.gamma(s, m, b) * beta_val(a, s, l);
    return v;
  };

  Eigen::VectorXd out(n);
  for (int l = 0; l < n; ++l)
    out[l] = cov_beta(i, j, k, l) - cov_beta(j, i, k, l) + cov_beta(k, i, j, l);
  return out;
}

namespace {

double operand_scale(std::initializer_list<double> magnitudes) {
  double m = 0.0;
  for (double v : magnitudes) m = std::max(m, v);
  return 1.0 + m;
}

}  // namespace

Residual check_eq1(const ACStructureField& A, const MetricField& g,
                   const ChartPoint& p, const VectorFieldSpec& X,
                   const VectorFieldSpec& Y) {
  const DnablaAData d = dnabla_a_data(A, g, p);
  const Eigen::MatrixXd Ap = d.aj.a;
  const Eigen::VectorXd xv = X.value(p);
  const Eigen::VectorXd yv = Y.value(p);

  const Eigen::VectorXd lhs = nijenhuis(A, X, Y, p);
  const Eigen::VectorXd b1 = d.beta(Ap * xv, Ap * yv);
  const Eigen::VectorXd b2 = d.beta(xv, yv);
  const Eigen::VectorXd rhs = Ap * (b1 - b2);

  Residual r;
  r.residual = (lhs - rhs).cwiseAbs().maxCoeff();
  r.scale = operand_scale({lhs.cwiseAbs().maxCoeff(), b1.cwiseAbs().maxCoeff(),
                           b2.cwiseAbs().maxCoeff(), Ap.cwiseAbs().maxCoeff(),
                           xv.cwiseAbs().maxCoeff(), yv.cwiseAbs().maxCoeff()});
  return r;
}

Residual check_eq2(const ACStructureField& A, const MetricField& g,
                   const ChartPoint& p, const VectorFieldSpec& X,
                   const VectorFieldSpec& Y) {
  const int n = A.dim;
  const DnablaAData d = dnabla_a_data(A, g, p);
  const Eigen::MatrixXd Ap = d.aj.a;
  const Eigen::VectorXd xv = X.value(p);
  const Eigen::VectorXd yv = Y.value(p);

  const Eigen::VectorXd lhs = -(Ap * nijenhuis(A, X, Y, p));

  // Matrix route: [beta_l](a, b) = component l of beta(e_a, e_b), then
  // rhs_l = X^T A^T [beta_l] A Y - X^T [beta_l] Y.
  Eigen::VectorXd rhs(n);
  double bmax = 0.0;
  for (int l = 0; l < n; ++l) {
    Eigen::MatrixXd Bl(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) Bl(a, b) = d.beta(a, b)[l];
    bmax = std::max(bmax, Bl.cwiseAbs().maxCoeff());
    rhs[l] = xv.transpose() * Ap.transpose() * Bl * Ap * yv;
    rhs[l] -= xv.transpose() * Bl * yv;
  }

  Residual r;
  r.residual = (lhs - rhs).cwiseAbs().maxCoeff();
  r.scale = operand_scale({lhs.cwiseAbs().maxCoeff(), bmax,
                           Ap.cwiseAbs().maxCoeff(), xv.cwiseAbs().maxCoeff(),
                           yv.cwiseAbs().maxCoeff()});
  return r;
}

Residual check_anticommute(const ACStructureField& A, const MetricField& g,
                           const ChartPoint& p, const Eigen::VectorXd& X,
                           const Eigen::VectorXd& Y) {
  const int n = A.dim;
  const DnablaAData d = dnabla_a_data(A, g, p);
  const Eigen::MatrixXd Ap = d.aj.a;

  Eigen::MatrixXd MX = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd MY = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    MX += X[i] * d.nabla[i];
    MY += Y[i] * d.nabla[i];
  }

  // (d^nabla A o A)(X, Y) + (A o d^nabla A)(X, Y)
  const Eigen::VectorXd res =
      (MX * (Ap * Y) - MY * (Ap * X)) + Ap * (MX * Y - MY * X);

  Residual r;
  r.residual = res.cwiseAbs().maxCoeff();
  r.scale = operand_scale(
      {Ap.cwiseAbs().maxCoeff(), MX.cwiseAbs().maxCoeff(),
       MY.cwiseAbs().maxCoeff(), X.cwiseAbs().maxCoeff(),
       Y.cwiseAbs().maxCoeff()});
  return r;
}

CyclicSumSides cyclic_curvature_sum(const ACStructureField& A,
                                    const MetricField& g, const ChartPoint& p,
                                    int i, int j, int k) {
  const int n = A.dim;
  CyclicSumSides out;
  out.lhs = dnabla_squared_a(A, g, p, i, j, k);

  const CurvatureAtPoint cv = riemann(g, p);
  const Eigen::MatrixXd Ap = A.action(p);
  out.rhs = Eigen::VectorXd::Zero(n);
  for (int l = 0; l < n; ++l)
    for (int m = 0; m < n; ++m)
      out.rhs[l] += cv.r_mixed(i, j, m, l) * Ap(m, k) +
                    cv.r_mixed(j, k, m, l) * Ap(m, i) +
                    cv.r_mixed(k, i, m, l) * Ap(m, j);

  out.scale = 1.0 + std::max({out.lhs.cwiseAbs().maxCoeff(),
                              out.rhs.cwiseAbs().maxCoeff(),
                              cv.r_mixed.max_abs() * Ap.cwiseAbs().maxCoeff()});
  return out;
}

double curvature_cyclic_contraction(const CurvatureAtPoint& cv,
                                    const Eigen::MatrixXd& a_action,
                                    const Eigen::VectorXd& X,
                                    const Eigen::VectorXd& Y,
                                    const Eigen::VectorXd& Z,
                                    const Eigen::VectorXd& W) {
  const int n = static_cast<int>(X.size());
  const Eigen::VectorXd AX = a_action * X;
  const Eigen::VectorXd AY = a_action * Y;
  const Eigen::VectorXd AZ = a_action * Z;
  double sum = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int e = 0; e < n; ++e)
          sum += cv.rm(a, b, c, e) *
                 (X[a] * Y[b] * AZ[c] + Y[a] * Z[b] * AX[c] +
                  Z[a] * X[b] * AY[c]) * W[e];
  return sum;
}

}  // namespace curv
