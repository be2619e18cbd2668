// SPDX-License-Identifier: Apache-2.0
#include "core/metric.hpp"

#include <cmath>

namespace curv {

namespace {

void check_spd(const Eigen::MatrixXd& G) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
  const double lo = es.eigenvalues().minCoeff();
  if (lo <= 1e-10 * G.trace())
    throw SingularMetricError("metric fails positive-definiteness (lambda_min " +
                              std::to_string(lo) + ")");
}

}  // namespace

Eigen::MatrixXd MetricField::value(const ChartPoint& p) const {
  Eigen::MatrixXd G(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) G(i, j) = g[i][j].value(p);
  return G;
}

bool MetricField::valid_at(const ChartPoint& p) const {
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      if (!g[i][j].valid_at(p)) return false;
  return true;
}

MetricJets metric_jets(const MetricField& gf, const ChartPoint& p,
                       DiffMethod method, double fd_step) {
  const int n = gf.dim;
  if (p.dim() != n) throw DimensionError("point/metric dimension mismatch");

  MetricJets mj;
  mj.g = Eigen::MatrixXd::Zero(n, n);
  mj.dg = Tensor3(n);
  mj.d2g = Tensor4(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const JetValue jv = method == DiffMethod::HyperDual
                              ? jet(gf.g[i][j], p)
                              : jet_fd(gf.g[i][j], p, fd_step);
      mj.g(i, j) = jv.value;
      mj.g(j, i) = jv.value;
      for (int m = 0; m < n; ++m) {
        mj.dg(m, i, j) = jv.grad[m];
        mj.dg(m, j, i) = jv.grad[m];
        for (int l = 0; l < n; ++l) {
          mj.d2g(m, l, i, j) = jv.hess(m, l);
          mj.d2g(m, l, j, i) = jv.hess(m, l);
        }
      }
    }
  }
  check_spd(mj.g);
  mj.g_inv = mj.g.inverse();
  return mj;
}

ConnectionAtPoint christoffel_from_jets(const MetricJets& mj) {
  const int n = static_cast<int>(mj.g.rows());
  ConnectionAtPoint c;
  c.gamma = Tensor3(n);
  c.dgamma = Tensor4(n);

  // S(l, i, j) = d_i g_jl + d_j g_il - d_l g_ij
  Tensor3 S(n);
  Tensor4 dS(n);  // dS(m, l, i, j) = d_m S(l, i, j)
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        S(l, i, j) = mj.dg(i, j, l) + mj.dg(j, i, l) - mj.dg(l, i, j);
        for (int m = 0; m < n; ++m)
          dS(m, l, i, j) =
              mj.d2g(m, i, j, l) + mj.d2g(m, j, i, l) - mj.d2g(m, l, i, j);
      }

  // d_m g^{kl} = -g^{ka} (d_m g_ab) g^{bl}
  Tensor3 dginv(n);
  for (int m = 0; m < n; ++m) {
    Eigen::MatrixXd dG(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) dG(a, b) = mj.dg(m, a, b);
    const Eigen::MatrixXd d = -mj.g_inv * dG * mj.g_inv;
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) dginv(m, k, l) = d(k, l);
  }

  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double v = 0.0;
        for (int l = 0; l < n; ++l) v += mj.g_inv(k, l) * S(l, i, j);
        c.gamma(k, i, j) = 0.5 * v;
        for (int m = 0; m < n; ++m) {
          double dv = 0.0;
          for (int l = 0; l < n; ++l)
            dv += dginv(m, k, l) * S(l, i, j) + mj.g_inv(k, l) * dS(m, l, i, j);
          c.dgamma(m, k, i, j) = 0.5 * dv;
        }
      }
  return c;
}

ConnectionAtPoint christoffel(const MetricField& g, const ChartPoint& p) {
  return christoffel_from_jets(metric_jets(g, p));
}

CurvatureAtPoint riemann_from_jets(const MetricJets& mj) {
  const int n = static_cast<int>(mj.g.rows());
  const ConnectionAtPoint c = christoffel_from_jets(mj);

  CurvatureAtPoint out;
  out.frame = FrameTag::Coordinate;
  out.r_mixed = Tensor4(n);
  out.rm = Tensor4(n);

  // R^l_ijk = d_i Gamma^l_jk - d_j Gamma^l_ik
  //           + Gamma^l_im Gamma^m_jk - Gamma^l_jm Gamma^m_ik
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double v = c.dgamma(i, l, j, k) - c.dgamma(j, l, i, k);
          for (int m = 0; m < n; ++m)
            v += c.gamma(l, i, m) * c.gamma(m, j, k) -
                 c.gamma(l, j, m) * c.gamma(m, i, k);
          out.r_mixed(i, j, k, l) = v;
        }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double v = 0.0;
          for (int m = 0; m < n; ++m)
            v += out.r_mixed(i, j, k, m) * mj.g(m, l);
          out.rm(i, j, k, l) = v;
        }
  return out;
}

CurvatureAtPoint riemann(const MetricField& g, const ChartPoint& p) {
  return riemann_from_jets(metric_jets(g, p));
}

CurvatureAtPoint riemann_in_frame(const CurvatureAtPoint& coord,
                                  const Eigen::MatrixXd& g_value,
                                  const Eigen::MatrixXd& frame) {
  const int n = static_cast<int>(frame.rows());
  CurvatureAtPoint out;
  out.frame = FrameTag::Orthonormal;
  out.rm = Tensor4(n);
  out.r_mixed = Tensor4(n);

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double v = 0.0;
          for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
              for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d)
                  v += coord.rm(a, b, c, d) * frame(a, i) * frame(b, j) *
                       frame(c, k) * frame(d, l);
          out.rm(i, j, k, l) = v;
        }
  // In an orthonormal frame lowering is the identity.
  out.r_mixed = out.rm;
  (void)g_value;
  return out;
}

double sectional_curvature(const MetricField& g, const ChartPoint& p,
                           const Eigen::VectorXd& X, const Eigen::VectorXd& Y) {
  const MetricJets mj = metric_jets(g, p);
  const double gxx = X.dot(mj.g * X);
  const double gyy = Y.dot(mj.g * Y);
  const double gxy = X.dot(mj.g * Y);
  const double denom = gxx * gyy - gxy * gxy;
  if (denom < 1e-12 * X.squaredNorm() * Y.squaredNorm())
    throw DegeneratePlaneError("X, Y do not span a 2-plane");

  const CurvatureAtPoint cv = riemann_from_jets(mj);
  const int n = g.dim;
  double num = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          num += cv.rm(i, j, k, l) * X[i] * Y[j] * X[k] * Y[l];
  return num / denom;
}

double kulkarni_nomizu(const Eigen::MatrixXd& h, const Eigen::MatrixXd& k,
                       const Eigen::VectorXd& X, const Eigen::VectorXd& Y,
                       const Eigen::VectorXd& Z, const Eigen::VectorXd& W) {
  auto ev = [](const Eigen::MatrixXd& m, const Eigen::VectorXd& u,
               const Eigen::VectorXd& v) { return u.dot(m * v); };
  return ev(h, X, Z) * ev(k, Y, W) + ev(h, Y, W) * ev(k, X, Z) -
         ev(h, X, W) * ev(k, Y, Z) - ev(h, Y, Z) * ev(k, X, W);
}

MetricField model_metric(const ModelMetricSpec& spec) {
  const int n = spec.dim;
  if (n < 2 || n % 2 != 0)
    throw DimensionError("model metric dimension must be even and >= 2");
  const double c0 = spec.c0;

  std::function<bool(const ChartPoint&)> guard;
  if (c0 < 0.0) {
    const double r2max = 4.0 / std::abs(c0);
    guard = [r2max](const ChartPoint& p) {
      return p.coords().squaredNorm() < r2max;
    };
  }

  auto factor = [c0](std::span<const Dual> x) {
    Dual r2(0.0);
    for (const Dual& xi : x) r2 = r2 + xi * xi;
    return pow(1.0 + (c0 / 4.0) * r2, -2.0);
  };

  MetricField g;
  g.dim = n;
  g.g.assign(n, std::vector<ScalarField>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j)
        g.g[i][j] = ScalarField{factor, guard};
      else
        g.g[i][j] = ScalarField{
            [](std::span<const Dual>) { return Dual(0.0); }, guard};
    }
  return g;
}

Eigen::MatrixXd orthonormal_frame(const Eigen::MatrixXd& G) {
  const int n = static_cast<int>(G.rows());
  check_spd(G);
  Eigen::MatrixXd E = Eigen::MatrixXd::Identity(n, n);
  // Modified Gram-Schmidt in index order against the inner product G.
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd v = E.col(i);
    for (int j = 0; j < i; ++j) {
      const double proj = E.col(j).dot(G * v);
      v -= proj * E.col(j);
    }
    const double norm2 = v.dot(G * v);
    if (norm2 <= 0.0) throw SingularMetricError("Gram-Schmidt breakdown");
    E.col(i) = v / std::sqrt(norm2);
  }
  return E;
}

Eigen::MatrixXd orthonormal_frame(const MetricField& g, const ChartPoint& p) {
  return orthonormal_frame(g.value(p));
}

double calibrate_sign(const ModelMetricSpec& spec,
                      const std::vector<ChartPoint>& points) {
  if (spec.c0 == 0.0)
    throw CalibrationError("sign calibration requires c0 != 0");
  const MetricField g = model_metric(spec);
  double sigma = 0.0;
  for (const ChartPoint& p : points) {
    const Eigen::MatrixXd G = g.value(p);
    const Eigen::MatrixXd E = orthonormal_frame(G);
    const CurvatureAtPoint cv = riemann_in_frame(riemann(g, p), G, E);
    for (int i = 0; i < spec.dim; ++i)
      for (int j = 0; j < spec.dim; ++j) {
        if (i == j) continue;
        const double r = cv.rm(i, j, j, i);
        const double s = (r / spec.c0 > 0.0) ? 1.0 : -1.0;
        if (std::abs(s * r - spec.c0) > 1e-6 * std::max(1.0, std::abs(spec.c0)))
          throw CalibrationError("R_ijji does not match +/- c0 at a sample");
        if (sigma == 0.0)
          sigma = s;
        else if (sigma != s)
          throw CalibrationError("inconsistent curvature sign across samples");
      }
  }
  if (sigma == 0.0) throw CalibrationError("no index pairs sampled");
  return sigma;
}

}  // namespace curv
