#include "eink/field.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "eink/parallel.hpp"

namespace eink {

MatXd evaluate_metric(const MetricField& field, const VecXd& x) {
  if (!field.chart.contains(x)) throw std::domain_error("evaluate_metric: point outside chart");
  MatXd g = field.eval(x);
  if (g.rows() != g.cols() || g.rows() != field.chart.dim())
    throw std::invalid_argument("evaluate_metric: bad matrix shape");
  const double asym = (g - g.transpose()).cwiseAbs().maxCoeff();
  if (asym != 0.0) throw std::invalid_argument("evaluate_metric: metric not symmetric");
  Eigen::SelfAdjointEigenSolver<MatXd> es(g, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= 1e-12)
    throw std::invalid_argument("evaluate_metric: metric not positive definite");
  return g;
}

MetricJet metric_derivatives(const TensorField& field, const VecXd& x, int order) {
  if (order != 1 && order != 2)
    throw std::invalid_argument("metric_derivatives: order must be 1 or 2");
  if (!field.differentiable())
    throw std::invalid_argument("metric_derivatives: field has no derivative evaluator");
  const int n = field.chart.dim();
  MetricJet jet;
  jet.d1.assign(n, MatXd::Zero(n, n));
  if (order == 2) jet.d2.assign(static_cast<std::size_t>(n) * n, MatXd::Zero(n, n));

  VecXhd xh(n);
  for (int i = 0; i < n; ++i) xh[i] = HyperDual(x[i]);

  if (order == 1) {
    // Two first partials per evaluation.
    for (int k = 0; k < n; k += 2) {
      const int l = (k + 1 < n) ? k + 1 : k;
      xh[k].f1 = 1.0;
      xh[l].f2 = 1.0;
      const MatXhd m = field.eval_hd(xh);
      if (k == 0) {
        jet.g.resize(n, n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) jet.g(i, j) = m(i, j).f;
      }
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          jet.d1[k](i, j) = m(i, j).f1;
          jet.d1[l](i, j) = m(i, j).f2;
        }
      xh[k].f1 = 0.0;
      xh[l].f2 = 0.0;
    }
    return jet;
  }

  for (int k = 0; k < n; ++k) {
    for (int l = k; l < n; ++l) {
      xh[k].f1 = 1.0;
      xh[l].f2 = 1.0;
      const MatXhd m = field.eval_hd(xh);
      if (k == 0 && l == 0) {
        jet.g.resize(n, n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) jet.g(i, j) = m(i, j).f;
      }
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const HyperDual& v = m(i, j);
          if (l == k) jet.d1[k](i, j) = v.f1;
          jet.d2[k * n + l](i, j) = v.f12;
          if (l != k) jet.d2[l * n + k](i, j) = v.f12;
        }
      xh[k].f1 = 0.0;
      xh[l].f2 = 0.0;
    }
  }
  return jet;
}

double integrate(const MetricField& field, const GridSample& grid,
                 const std::function<double(const VecXd&)>& density) {
  const std::size_t count = grid.size();
  std::vector<double> terms(count);
  parallel_for_chunked(count, [&](std::size_t begin, std::size_t end) {
    VecXd x;
    for (std::size_t i = begin; i < end; ++i) {
      grid.point_at(i, x);
      const MatXd g = field.eval(x);
      double term = grid.weight_at(i) * density(x) * std::sqrt(g.determinant());
      if (field.chart.measure_weight) term *= field.chart.measure_weight(x);
      terms[i] = term;
    }
  });
  return field.chart.measure_scale * pairwise_sum(terms);
}

TensorField field_sum(const TensorField& a, const TensorField& b, double s) {
  TensorField out;
  out.chart = a.chart;
  auto ea = a.eval, eb = b.eval;
  out.eval = [ea, eb, s](const VecXd& x) -> MatXd { return ea(x) + s * eb(x); };
  if (a.differentiable() && b.differentiable()) {
    auto ha = a.eval_hd, hb = b.eval_hd;
    out.eval_hd = [ha, hb, s](const VecXhd& x) -> MatXhd {
      MatXhd m = ha(x);
      const MatXhd n = hb(x);
      for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) += HyperDual(s) * n(i, j);
      return m;
    };
  }
  return out;
}

TensorField field_product(const TensorField& a, const TensorField& b) {
  TensorField out;
  out.chart.axes = a.chart.axes;
  out.chart.axes.insert(out.chart.axes.end(), b.chart.axes.begin(), b.chart.axes.end());
  out.chart.measure_scale = a.chart.measure_scale * b.chart.measure_scale;
  const int na = a.chart.dim(), nb = b.chart.dim();
  if (a.chart.measure_weight || b.chart.measure_weight) {
    auto wa = a.chart.measure_weight, wb = b.chart.measure_weight;
    out.chart.measure_weight = [wa, wb, na, nb](const VecXd& x) {
      double w = 1.0;
      if (wa) w *= wa(x.head(na));
      if (wb) w *= wb(x.tail(nb));
      return w;
    };
  }
  auto ea = a.eval, eb = b.eval;
  out.eval = [ea, eb, na, nb](const VecXd& x) -> MatXd {
    MatXd g = MatXd::Zero(na + nb, na + nb);
    g.topLeftCorner(na, na) = ea(x.head(na));
    g.bottomRightCorner(nb, nb) = eb(x.tail(nb));
    return g;
  };
  if (a.differentiable() && b.differentiable()) {
    auto ha = a.eval_hd, hb = b.eval_hd;
    out.eval_hd = [ha, hb, na, nb](const VecXhd& x) -> MatXhd {
      MatXhd g(na + nb, na + nb);
      for (int i = 0; i < na + nb; ++i)
        for (int j = 0; j < na + nb; ++j) g(i, j) = HyperDual(0.0);
      const MatXhd ga = ha(x.head(na));
      const MatXhd gb = hb(x.tail(nb));
      for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j) g(i, j) = ga(i, j);
      for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nb; ++j) g(na + i, na + j) = gb(i, j);
      return g;
    };
  }
  return out;
}

}  // namespace eink
