#pragma once

#include <functional>

#include "eink/curvature.hpp"
#include "eink/families.hpp"
#include "eink/field.hpp"

namespace eink {

/// Sum of w_p * f(curvature(p)) * sqrt(det g) over the grid (deterministic reduction).
double integrate_curvature(const MetricField& field, const GridSample& grid,
                           const std::function<double(const CurvatureData&)>& f);

/// Total scalar curvature functional F(g).
double total_scalar(const MetricField& field, const GridSample& grid);

/// Modified pairing <h1, h2>_alpha = int { g(h1,h2) - alpha tr_g(h1) tr_g(h2) } mu_g.
/// Positive definite for alpha < 1/n.
double modified_inner(const TensorField& h1, const TensorField& h2,
                      const MetricField& field, double alpha, const GridSample& grid);

/// alpha(k) = (k-2)/(2(k-n)): strictly decreasing on (0, n), range (-inf, 1/n).
double gradient_alpha(double k, int n);

/// An epsilon-family g + eps*h validated to stay positive definite for |eps| <= eps_max.
struct PerturbedFamily {
  MetricField base;
  TensorField h;
  double eps_max = 0.0;
};

/// Checks SPD of base + eps*h at +-eps_max over a scan lattice; throws if violated.
PerturbedFamily make_perturbed_family(MetricField base, TensorField h, double eps_max,
                                      int scan_points = 8);

struct GradientCheckResult {
  double derivative = 0.0;  // central finite difference of F, one Richardson step
  double pairing = 0.0;     // (1/k) <Ein_k, h>_alpha at the base metric
  double alpha = 0.0;
  double residual = 0.0;    // |derivative - pairing| / max(1, |derivative|)
};

/// Verifies that Ein_k is the gradient of the total scalar functional in the
/// alpha(k)-modified pairing. Requires 0 < k < n and a closed (fully periodic) chart.
GradientCheckResult gradient_check(const PerturbedFamily& pf, double k,
                                   const GridSample& grid);

/// (1/8pi^2) int (|W|^2 + sigma_2(Ein_3)/9) mu_g; equals Euler characteristic for
/// closed 4-manifolds. Requires dim 4.
double gauss_bonnet_chi(const MetricField& field, const GridSample& grid);

struct SignatureReport {
  double weyl_integral = 0.0;    // int |W|^2
  double p1_bound = 0.0;         // weyl_integral / (4 pi^2)
  double sigma2_integral = 0.0;  // int sigma_2(Ein_3)
  double chi = 0.0;
  double two_chi_minus_bound = 0.0;  // 2 chi - p1_bound
  double sigma2_term = 0.0;          // sigma2_integral / (36 pi^2); equals the above
};

/// Pontryagin-number bound and the Euler/signature inequality data, one sweep.
SignatureReport signature_bound_report(const MetricField& field, const GridSample& grid);

/// (1/4) R_ijkl R^ijkl (curvature-operator normalization).
double riemann_norm_sq_op(const CurvatureData& c);

enum class TubeAmbient { sphere3, flat3, sphere5 };

/// Tube of radius r around a great circle (sphere ambients) or a round circle of the
/// same radius (flat model). The curve has length 2*pi*radius.
struct TubeSpec {
  TubeAmbient ambient = TubeAmbient::sphere3;
  double radius = 1.0;  // ambient sphere radius / flat circle radius
  double r = 0.1;       // tube radius; must stay below the focal radius
};

double focal_radius(const TubeSpec& spec);

struct TubeVolumeReport {
  // Distance-hypersurface convention (boundary of the tube) and solid-tube
  // convention are both computed; the flat references are omega_{n-2}(r) L and
  // ball_{n-1}(r) L respectively.
  double hyp_numeric = 0.0;
  double hyp_flat = 0.0;
  double solid_numeric = 0.0;
  double solid_flat = 0.0;
  // omega_{n-2}(r) (L - r^2/(6(n+1)) int Ein_{-1}(c', c') dt), curve integral
  // evaluated numerically on the ambient chart.
  double hotelling_prediction = 0.0;
};

/// Fermi-coordinate quadrature of the tube measure, via the embedding pullback.
/// Supports sphere3 and flat3 ambients.
TubeVolumeReport tube_volume(const TubeSpec& spec, int grid = 48);

struct TubeScalarReport {
  double numeric = 0.0;         // total intrinsic Scal of the distance hypersurface
  double flat_reference = 0.0;  // (n-2)(n-3) r^{n-4} omega_{n-2}(1) L
  double solid_numeric = 0.0;   // ambient Scal integrated over the solid tube
  double solid_flat = 0.0;      // 0 in the flat model
};

/// Total scalar curvature comparison for tubes in the round 5-sphere.
TubeScalarReport tube_total_scalar(const TubeSpec& spec, int grid = 16);

/// Closed-form Fermi metric of the distance hypersurface (curvature-capable) and the
/// embedding-pullback version (evaluation only); the two agree pointwise.
TensorField tube_fermi_hypersurface_field(const TubeSpec& spec);
TensorField tube_pullback_hypersurface_field(const TubeSpec& spec);

/// Volume of the k-sphere of radius r in R^{k+1}.
double sphere_volume(int k, double r);
/// Volume of the k-ball of radius r.
double ball_volume(int k, double r);

}  // namespace eink
