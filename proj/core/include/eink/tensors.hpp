#pragma once

#include "eink/hyperdual.hpp"

namespace eink {

/// Sign tolerance shared by every positivity decision; samples within the band of a
/// decision boundary are resampled rather than judged.
inline constexpr double kSignTol = 1e-9;

/// The (g, Ric, Scal) triple at a point. The algebra below never requires scal to be
/// the trace of ric, but the curvature-derived constructor guarantees it.
struct PointData {
  MatXd g;     // positive definite
  MatXd ric;   // symmetric
  double scal = 0.0;

  int dim() const { return static_cast<int>(g.rows()); }
};

/// Symmetric bilinear form expressed in the same basis as g.
struct SymBilinear {
  MatXd m;

  int dim() const { return static_cast<int>(m.rows()); }
};

/// trace_g h = tr(g^-1 h).
double trace_rel(const MatXd& h, const MatXd& g);

/// |h|^2_g = tr((g^-1 h)^2) for symmetric h.
double norm_sq_rel(const MatXd& h, const MatXd& g);

/// Scal*g - k*Ric.  trace_g Ein_k = (n-k)*Scal when scal = trace_g ric.
SymBilinear ein_k(const PointData& p, double k);

/// Ric - k*Scal*g; equals (n-2)*A at k = 1/(2(n-1)).
SymBilinear sch_k(const PointData& p, double k);

/// Schouten tensor (Ric - Scal/(2(n-1)) g)/(n-2); requires n >= 3.
SymBilinear schouten(const PointData& p);

/// (2-n)/n Scal*g + (n-1) Ric: same sigma_1, sigma_2 as B = Ein_{n-1}.
SymBilinear aux_bbar(const PointData& p);

/// (3n-4)/(2n(n-1)(n-2)) * Ein_{2n(n-1)/(3n-4)}: same sigma_1, sigma_2 as A; n >= 4.
SymBilinear aux_abar(const PointData& p);

/// Ascending eigenvalues of h v = nu g v.
VecXd spectrum_rel(const SymBilinear& h, const MatXd& g);

/// Sum of the k smallest g-relative eigenvalues exceeds zero. 1 <= k <= n.
bool k_positive(const SymBilinear& h, const MatXd& g, int k);

/// Minimum g-relative eigenvalue exceeds kSignTol.
bool positive_definite(const SymBilinear& h, const MatXd& g);

/// First Newton transformation sigma_1(h) g - h.
SymBilinear newton_t1(const SymBilinear& h, const MatXd& g);

/// Elementary symmetric functions of the g-relative spectrum, i = 1 or 2,
/// computed from traces (no eigensolve).
double sigma_i(const SymBilinear& h, const MatXd& g, int i);

/// sigma_1 > 0 and sigma_2 > 0.
bool gamma2_positive(const SymBilinear& h, const MatXd& g);

}  // namespace eink
