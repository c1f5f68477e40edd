#include "eink/chart.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace eink {

bool Chart::contains(const VecXd& x) const {
  if (x.size() != dim()) return false;
  for (int i = 0; i < dim(); ++i) {
    if (axes[i].periodic) continue;  // periodic coordinates wrap
    if (x[i] < axes[i].lo || x[i] > axes[i].hi) return false;
  }
  return true;
}

void validate(const Chart& chart) {
  if (chart.dim() < 2) throw std::invalid_argument("chart: dim must be >= 2");
  for (const auto& ax : chart.axes) {
    if (!(ax.hi > ax.lo)) throw std::invalid_argument("chart: empty coordinate range");
  }
  if (!(chart.measure_scale > 0.0))
    throw std::invalid_argument("chart: measure_scale must be positive");
}

void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  // Newton iteration on Legendre P_n, standard Chebyshev initial guess.
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    nodes[i] = mid + half * nodes[i];
    weights[i] *= half;
  }
}

double sin_power_cap_scale(int m, double delta) {
  std::vector<double> xs, ws;
  auto integral = [&](double a, double b) {
    gauss_legendre(200, a, b, xs, ws);
    double s = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) s += ws[i] * std::pow(std::sin(xs[i]), m);
    return s;
  };
  return integral(0.0, std::numbers::pi) / integral(delta, std::numbers::pi - delta);
}

GridSample::GridSample(Chart chart, GridKind kind, int points_per_axis)
    : chart_(std::move(chart)), kind_(kind) {
  validate(chart_);
  if (points_per_axis < 2)
    throw std::invalid_argument("grid: need at least 2 points per axis");
  per_axis_.assign(chart_.dim(), points_per_axis);
  requested_ = points_per_axis;
  build();
}

GridSample::GridSample(Chart chart, GridKind kind, std::vector<int> per_axis_points)
    : chart_(std::move(chart)), kind_(kind), per_axis_(std::move(per_axis_points)) {
  validate(chart_);
  if (static_cast<int>(per_axis_.size()) != chart_.dim())
    throw std::invalid_argument("grid: per-axis point count mismatch");
  for (int n : per_axis_)
    if (n < 2) throw std::invalid_argument("grid: need at least 2 points per axis");
  requested_ = *std::max_element(per_axis_.begin(), per_axis_.end());
  build();
}

void GridSample::build() {
  nodes_.clear();
  node_w_.clear();
  total_ = 1;
  for (int ax = 0; ax < chart_.dim(); ++ax) {
    const AxisRange& r = chart_.axes[ax];
    const int n = per_axis_[ax];
    std::vector<double> xs, ws;
    if (kind_ == GridKind::Quadrature) {
      if (r.periodic) {
        // Trapezoid == rectangle rule on a full period; spectrally accurate.
        const double h = r.length() / n;
        for (int i = 0; i < n; ++i) {
          xs.push_back(r.lo + i * h);
          ws.push_back(h);
        }
      } else {
        // Default 32 Gauss-Legendre nodes at the reference resolution of 48,
        // scaled proportionally so refinement studies refine both axis kinds.
        const int gl = std::max(2, (n * 32 + 24) / 48);
        gauss_legendre(gl, r.lo, r.hi, xs, ws);
      }
    } else {
      if (r.periodic) {
        const double h = r.length() / n;
        for (int i = 0; i < n; ++i) {
          xs.push_back(r.lo + i * h);
          ws.push_back(h);
        }
      } else {
        // Inclusive lattice inset by 5% per side: curvature at pole-margin corner
        // points of sphere-style charts is numerically ill-conditioned, and extrema
        // scans must not be dominated by that noise. The lattice at 2n contains the
        // lattice at n, so scan extrema move monotonically under refinement.
        const double inset = 0.05 * r.length();
        const double lo = r.lo + inset, hi = r.hi - inset;
        const double h = (hi - lo) / n;
        for (int i = 0; i <= n; ++i) {
          xs.push_back(lo + i * h);
          ws.push_back((i == 0 || i == n) ? 0.5 * h : h);
        }
      }
    }
    total_ *= xs.size();
    nodes_.push_back(std::move(xs));
    node_w_.push_back(std::move(ws));
  }
}

void GridSample::point_at(std::size_t idx, VecXd& x) const {
  x.resize(chart_.dim());
  for (int ax = chart_.dim() - 1; ax >= 0; --ax) {
    const std::size_t n = nodes_[ax].size();
    x[ax] = nodes_[ax][idx % n];
    idx /= n;
  }
}

VecXd GridSample::point_at(std::size_t idx) const {
  VecXd x;
  point_at(idx, x);
  return x;
}

double GridSample::weight_at(std::size_t idx) const {
  double w = 1.0;
  for (int ax = chart_.dim() - 1; ax >= 0; --ax) {
    const std::size_t n = nodes_[ax].size();
    w *= node_w_[ax][idx % n];
    idx /= n;
  }
  return w;
}

GridSample GridSample::refined() const {
  std::vector<int> doubled = per_axis_;
  for (int& n : doubled) n *= 2;
  return {chart_, kind_, std::move(doubled)};
}

GridSample make_quadrature_grid(const Chart& chart, int points_per_axis) {
  return {chart, GridKind::Quadrature, points_per_axis};
}

GridSample make_scan_grid(const Chart& chart, int points_per_axis) {
  return {chart, GridKind::Scan, points_per_axis};
}

}  // namespace eink
