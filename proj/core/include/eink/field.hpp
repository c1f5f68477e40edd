#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "eink/chart.hpp"
#include "eink/hyperdual.hpp"

namespace eink {

/// Smooth symmetric-matrix-valued field on a chart. eval_hd runs the same formula on
/// hyper-dual scalars, which is how all metric derivatives are produced; combinator-
/// built fields (embedding pullbacks) may leave eval_hd empty and then support
/// evaluation and integration but not curvature.
struct TensorField {
  Chart chart;
  std::function<MatXd(const VecXd&)> eval;
  std::function<MatXhd(const VecXhd&)> eval_hd;

  bool differentiable() const { return static_cast<bool>(eval_hd); }
};

/// A TensorField whose values are positive definite everywhere on the chart.
using MetricField = TensorField;

template <typename F>
TensorField make_field(Chart chart, F f) {
  TensorField out;
  out.chart = std::move(chart);
  out.eval = [f](const VecXd& x) -> MatXd { return f(x); };
  out.eval_hd = [f](const VecXhd& x) -> MatXhd { return f(x); };
  return out;
}

/// Value + derivative jet of the metric components at a point.
struct MetricJet {
  MatXd g;                  // g_ij
  std::vector<MatXd> d1;    // d1[k](i,j)       = d g_ij / dx_k
  std::vector<MatXd> d2;    // d2[k*n + l](i,j) = d^2 g_ij / dx_k dx_l (full, symmetric)

  const MatXd& second(int k, int l, int n) const { return d2[k * n + l]; }
};

/// Evaluates g(x) with domain, symmetry and positive-definiteness checks
/// (eigenvalues must exceed 1e-12). Throws std::domain_error / std::invalid_argument.
MatXd evaluate_metric(const MetricField& field, const VecXd& x);

/// Exact partials of the metric components via hyper-dual evaluation.
/// order must be 1 or 2; order 1 leaves d2 empty.
MetricJet metric_derivatives(const TensorField& field, const VecXd& x, int order);

/// Sum of w_p * density(p) * sqrt(det g(p)) over the grid, times the chart's
/// measure_scale and optional measure_weight. Deterministic pairwise reduction;
/// density evaluations may run concurrently.
double integrate(const MetricField& field, const GridSample& grid,
                 const std::function<double(const VecXd&)>& density);

/// Pointwise sum a + s*b of two fields on the same chart.
TensorField field_sum(const TensorField& a, const TensorField& b, double s);

/// Block-diagonal product field on the concatenated chart.
TensorField field_product(const TensorField& a, const TensorField& b);

}  // namespace eink
