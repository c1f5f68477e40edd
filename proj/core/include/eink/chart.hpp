#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "eink/hyperdual.hpp"

namespace eink {

struct AxisRange {
  double lo = 0.0;
  double hi = 1.0;
  bool periodic = false;

  double length() const { return hi - lo; }
};

/// A single coordinate domain. Built-in families exclude coordinate singularities
/// (sphere poles) by a fixed margin; the measure lost to the excluded caps is folded
/// back through measure_scale, computed per family from the known 1-d cap integrals.
struct Chart {
  std::vector<AxisRange> axes;
  double measure_scale = 1.0;
  std::function<double(const VecXd&)> measure_weight;  // optional extra density

  int dim() const { return static_cast<int>(axes.size()); }
  bool contains(const VecXd& x) const;
};

/// Margin by which sphere-style charts stay away from coordinate poles.
inline constexpr double kPoleMargin = 1e-3;

/// Throws std::invalid_argument unless dim >= 2 and every range is nonempty.
void validate(const Chart& chart);

enum class GridKind {
  Quadrature,  // trapezoid on periodic axes, Gauss-Legendre on bounded axes
  Scan         // inclusive uniform lattice, nested under 2x refinement
};

/// Product lattice over the chart, stored in factored per-axis form. weight_at is the
/// product of 1-d quadrature weights; the metric volume factor enters in integrate().
class GridSample {
 public:
  GridSample(Chart chart, GridKind kind, int points_per_axis);
  GridSample(Chart chart, GridKind kind, std::vector<int> per_axis_points);

  std::size_t size() const { return total_; }
  int axis_count(int axis) const { return static_cast<int>(nodes_[axis].size()); }
  GridKind kind() const { return kind_; }
  const Chart& chart() const { return chart_; }
  int requested_points() const { return requested_; }

  void point_at(std::size_t idx, VecXd& x) const;
  VecXd point_at(std::size_t idx) const;
  double weight_at(std::size_t idx) const;

  /// Same chart and kind at twice the per-axis resolution. Scan lattices are nested
  /// under this refinement, so grid extrema move monotonically.
  GridSample refined() const;

 private:
  void build();

  Chart chart_;
  GridKind kind_;
  std::vector<int> per_axis_;
  int requested_ = 0;
  std::size_t total_ = 1;
  std::vector<std::vector<double>> nodes_;
  std::vector<std::vector<double>> node_w_;
};

GridSample make_quadrature_grid(const Chart& chart, int points_per_axis = 48);
GridSample make_scan_grid(const Chart& chart, int points_per_axis = 16);

/// Gauss-Legendre nodes/weights on [a, b].
void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights);

/// Ratio of int_0^pi sin^m to its truncation to [delta, pi - delta]: the per-axis
/// cap-compensation factor for pole-excluded sphere charts.
double sin_power_cap_scale(int m, double delta);

}  // namespace eink
