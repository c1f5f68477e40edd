#include "eink/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include "eink/parallel.hpp"

namespace eink {

std::string ExtendedReal::str() const {
  if (neg_inf_) return "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value_);
  return buf;
}

double ein_pointwise(const PointData& p) {
  if (p.scal <= kSignTol) return 0.0;
  const int n = p.dim();
  const VecXd rho = spectrum_rel({p.ric}, p.g);
  const double rho_max = rho[n - 1];
  if (rho_max <= 0.0) return static_cast<double>(n);
  return std::clamp(p.scal / rho_max, 0.0, static_cast<double>(n));
}

ExtendedReal ein_lower_pointwise(const PointData& p) {
  if (p.scal <= kSignTol) return ExtendedReal(0.0);
  const VecXd rho = spectrum_rel({p.ric}, p.g);
  const double rho_min = rho[0];
  if (rho_min < -kSignTol) return ExtendedReal(p.scal / rho_min);
  return ExtendedReal::neg_infinity();
}

namespace {

struct ScanResult {
  double ein_upper;
  ExtendedReal ein_lower;
  double scal_min, scal_max, rho_min, rho_max;
};

ScanResult scan(const MetricField& field, const GridSample& grid) {
  const std::size_t count = grid.size();
  const int n = field.chart.dim();
  std::vector<double> ups(count), scals(count), rmins(count), rmaxs(count);
  std::vector<ExtendedReal> lows(count);
  parallel_for_chunked(count, [&](std::size_t begin, std::size_t end) {
    VecXd x;
    for (std::size_t i = begin; i < end; ++i) {
      grid.point_at(i, x);
      const CurvatureData c = curvature_at(field, x);
      const PointData p = point_data(c);
      const VecXd rho = spectrum_rel({p.ric}, p.g);
      ups[i] = ein_pointwise(p);
      lows[i] = ein_lower_pointwise(p);
      scals[i] = p.scal;
      rmins[i] = rho[0];
      rmaxs[i] = rho[n - 1];
    }
  });
  ScanResult r{ups[0], lows[0], scals[0], scals[0], rmins[0], rmaxs[0]};
  for (std::size_t i = 1; i < count; ++i) {
    r.ein_upper = std::min(r.ein_upper, ups[i]);
    r.ein_lower = max(r.ein_lower, lows[i]);
    r.scal_min = std::min(r.scal_min, scals[i]);
    r.scal_max = std::max(r.scal_max, scals[i]);
    r.rho_min = std::min(r.rho_min, rmins[i]);
    r.rho_max = std::max(r.rho_max, rmaxs[i]);
  }
  if (r.scal_min <= kSignTol) {
    r.ein_upper = 0.0;
    r.ein_lower = ExtendedReal(0.0);
  }
  return r;
}

}  // namespace

InvariantReport invariant_report(const MetricField& field, const GridSample& grid,
                                 bool with_refinement) {
  const ScanResult base = scan(field, grid);
  InvariantReport rep;
  rep.ein_upper = base.ein_upper;
  rep.ein_lower = base.ein_lower;
  rep.scal_min = base.scal_min;
  rep.scal_max = base.scal_max;
  rep.rho_min = base.rho_min;
  rep.rho_max = base.rho_max;
  rep.grid = grid.requested_points();
  if (with_refinement) {
    const ScanResult fine = scan(field, grid.refined());
    rep.delta_upper = std::abs(fine.ein_upper - base.ein_upper);
    if (!fine.ein_lower.is_neg_inf() && !base.ein_lower.is_neg_inf())
      rep.delta_lower = std::abs(fine.ein_lower.value() - base.ein_lower.value());
    else if (fine.ein_lower.is_neg_inf() && base.ein_lower.is_neg_inf())
      rep.delta_lower = 0.0;
  }
  return rep;
}

std::pair<double, double> cylinder_model_eigs(int q, int n, double k) {
  if (q < 2 || q > n) throw std::invalid_argument("cylinder_model_eigs: need 2 <= q <= n");
  return {(q - 2.0) * (q - 1.0 - k), (q - 1.0) * (q - 2.0)};
}

bool mkl_admissible(int k, int l) {
  if (k < 0 || l < 0) throw std::invalid_argument("mkl_admissible: k, l must be >= 0");
  return 2 * (k + l + 2) > 3 * std::abs(k - l);
}

}  // namespace eink
