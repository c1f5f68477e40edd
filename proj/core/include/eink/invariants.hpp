#pragma once

#include <optional>
#include <string>
#include <utility>

#include "eink/curvature.hpp"
#include "eink/field.hpp"
#include "eink/tensors.hpp"

namespace eink {

/// Real line extended by -infinity, the value ein(g) takes on nonnegative-Ricci data.
class ExtendedReal {
 public:
  ExtendedReal() = default;
  explicit ExtendedReal(double v) : value_(v), neg_inf_(false) {}
  static ExtendedReal neg_infinity() { return ExtendedReal(0.0, true); }

  bool is_neg_inf() const { return neg_inf_; }
  double value() const { return value_; }  // meaningful only when finite

  friend bool operator<(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.neg_inf_) return !b.neg_inf_;
    if (b.neg_inf_) return false;
    return a.value_ < b.value_;
  }
  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.neg_inf_ || b.neg_inf_) return a.neg_inf_ == b.neg_inf_;
    return a.value_ == b.value_;
  }

  std::string str() const;

 private:
  ExtendedReal(double v, bool inf) : value_(v), neg_inf_(inf) {}
  double value_ = 0.0;
  bool neg_inf_ = false;
};

inline ExtendedReal max(const ExtendedReal& a, const ExtendedReal& b) { return a < b ? b : a; }

/// Pointwise version of the upper invariant: Scal/rho_max clamped to [0, n] when the
/// scalar curvature is positive, n when Ricci has no positive direction, 0 otherwise.
double ein_pointwise(const PointData& p);

/// Pointwise lower invariant: Scal/rho_min (negative) when Scal > 0 and Ricci has a
/// strictly negative direction; -infinity when Scal > 0 and Ricci >= 0; else 0.
ExtendedReal ein_lower_pointwise(const PointData& p);

/// Grid extrema of the pointwise invariants plus convergence bookkeeping.
struct InvariantReport {
  double ein_upper = 0.0;
  ExtendedReal ein_lower;
  double scal_min = 0.0, scal_max = 0.0;
  double rho_min = 0.0, rho_max = 0.0;  // extremes of the Ricci eigenvalue range
  int grid = 0;
  // |change| of each extremum under one 2x grid refinement; the lower delta is empty
  // when the two estimates are not both finite.
  double delta_upper = 0.0;
  std::optional<double> delta_lower;
};

/// Scans the grid: ein_upper = inf of ein_pointwise, ein_lower = sup of
/// ein_lower_pointwise; if min Scal <= tolerance both collapse to 0.
InvariantReport invariant_report(const MetricField& field, const GridSample& grid,
                                 bool with_refinement = true);

/// Ein_k eigenvalues of the unit model cylinder (sphere and flat directions):
/// ((q-2)(q-1-k), (q-1)(q-2)). Both positive iff q > 2 and q > k+1.
std::pair<double, double> cylinder_model_eigs(int q, int n, double k);

/// Connected-sum admissibility arithmetic: 2(k+l+2) > 3|k-l|.
bool mkl_admissible(int k, int l);

}  // namespace eink
