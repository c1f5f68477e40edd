#include "eink/curvature.hpp"

#include <stdexcept>

#include <Eigen/Cholesky>

namespace eink {

namespace {

inline std::size_t idx3(int n, int i, int j, int k) {
  return (static_cast<std::size_t>(i) * n + j) * n + k;
}

}  // namespace

CurvatureData curvature_at(const MetricField& field, const VecXd& x) {
  const int n = field.chart.dim();
  const MetricJet jet = metric_derivatives(field, x, 2);

  CurvatureData c;
  c.n = n;
  c.g = jet.g;
  Eigen::LLT<MatXd> llt(jet.g);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("curvature_at: singular or non-SPD metric");
  c.ginv = llt.solve(MatXd::Identity(n, n));

  // Christoffel symbols of the second kind.
  c.gamma.assign(static_cast<std::size_t>(n) * n * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k) {
        double s = 0.0;
        for (int m = 0; m < n; ++m)
          s += c.ginv(i, m) * (jet.d1[j](m, k) + jet.d1[k](m, j) - jet.d1[m](j, k));
        s *= 0.5;
        c.gamma[idx3(n, i, j, k)] = s;
        c.gamma[idx3(n, i, k, j)] = s;
      }

  // d_k Gamma^i_lj: product rule through g^-1 (d g^-1 = -g^-1 dg g^-1).
  std::vector<MatXd> dginv(n);
  for (int k = 0; k < n; ++k) dginv[k] = -c.ginv * jet.d1[k] * c.ginv;

  std::vector<double> dgamma(static_cast<std::size_t>(n) * n * n * n, 0.0);
  auto dg_at = [&](int k, int i, int l, int j) -> double& {
    return dgamma[((static_cast<std::size_t>(k) * n + i) * n + l) * n + j];
  };
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l)
        for (int j = l; j < n; ++j) {
          double s = 0.0;
          for (int m = 0; m < n; ++m) {
            s += dginv[k](i, m) * (jet.d1[l](m, j) + jet.d1[j](m, l) - jet.d1[m](l, j));
            s += c.ginv(i, m) * (jet.second(k, l, n)(m, j) + jet.second(k, j, n)(m, l) -
                                 jet.second(k, m, n)(l, j));
          }
          s *= 0.5;
          dg_at(k, i, l, j) = s;
          dg_at(k, i, j, l) = s;
        }

  // Mixed Riemann, then lower the first index.
  Tensor4 rm;  // R^i_jkl
  rm.resize(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = dg_at(k, i, l, j) - dg_at(l, i, k, j);
          for (int m = 0; m < n; ++m)
            s += c.gamma[idx3(n, i, k, m)] * c.gamma[idx3(n, m, l, j)] -
                 c.gamma[idx3(n, i, l, m)] * c.gamma[idx3(n, m, k, j)];
          rm.at(i, j, k, l) = s;
        }

  c.riemann.resize(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = 0.0;
          for (int m = 0; m < n; ++m) s += jet.g(i, m) * rm.at(m, j, k, l);
          c.riemann.at(i, j, k, l) = s;
        }

  c.ricci = MatXd::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += rm.at(i, j, i, l);
      c.ricci(j, l) = s;
    }
  c.ricci = 0.5 * (c.ricci + c.ricci.transpose().eval());
  c.scal = (c.ginv * c.ricci).trace();

  c.weyl.resize(n);
  if (n >= 4) {
    const SymBilinear a = schouten({c.g, c.ricci, c.scal});
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            const double kn = c.g(i, k) * a.m(j, l) + c.g(j, l) * a.m(i, k) -
                              c.g(i, l) * a.m(j, k) - c.g(j, k) * a.m(i, l);
            c.weyl.at(i, j, k, l) = c.riemann.at(i, j, k, l) - kn;
          }
  }
  return c;
}

double tensor4_norm_sq(const Tensor4& t0, const MatXd& ginv) {
  const int n = t0.n;
  // Raise one index per pass: O(n^5) instead of the naive n^8 contraction.
  Tensor4 t = t0, u;
  u.resize(n);
  for (int slot = 0; slot < 4; ++slot) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            double s = 0.0;
            for (int m = 0; m < n; ++m) {
              switch (slot) {
                case 0: s += ginv(i, m) * t.at(m, j, k, l); break;
                case 1: s += ginv(j, m) * t.at(i, m, k, l); break;
                case 2: s += ginv(k, m) * t.at(i, j, m, l); break;
                default: s += ginv(l, m) * t.at(i, j, k, m); break;
              }
            }
            u.at(i, j, k, l) = s;
          }
    std::swap(t, u);
  }
  double total = 0.0;
  const std::size_t count = t0.v.size();
  for (std::size_t p = 0; p < count; ++p) total += t0.v[p] * t.v[p];
  return total;
}

double weyl_norm_sq(const CurvatureData& c, const MatXd& g) {
  if (c.n < 4) throw std::invalid_argument("weyl_norm_sq: requires dim >= 4");
  const MatXd ginv = g.llt().solve(MatXd::Identity(c.n, c.n));
  return 0.25 * tensor4_norm_sq(c.weyl, ginv);
}

double weyl_norm_sq(const CurvatureData& c) {
  if (c.n < 4) throw std::invalid_argument("weyl_norm_sq: requires dim >= 4");
  return 0.25 * tensor4_norm_sq(c.weyl, c.ginv);
}

PointData point_data(const CurvatureData& c) { return {c.g, c.ricci, c.scal}; }

}  // namespace eink
