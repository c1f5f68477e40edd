#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eink/field.hpp"
#include "eink/invariants.hpp"
#include "eink/tensors.hpp"

namespace eink {

enum class Family {
  sphere,
  torus,
  hyperbolic,
  berger,
  product,
  cylinder_model,
  spaceform_product,
};

const char* family_name(Family f);
Family family_from_name(const std::string& name);

/// Family + parameter map, the unit of configuration shared with the CLI and the
/// JSON descriptor format. Parameter names:
///   sphere:            n, radius
///   torus:             n, period
///   hyperbolic:        n, radius (coordinate box radius, <= 0.9)
///   berger:            n (base complex dimension, sphere dim is 2n+1), t
///   product:           p, lambda (S^p(lambda) factor), q, mu (> 0: second factor
///                      S^q(mu), otherwise T^q), period
///   cylinder_model:    q, n
///   spaceform_product: p, q (unit curvature +1 / -1 factors)
struct FamilyDescriptor {
  Family name = Family::sphere;
  std::map<std::string, double> params;
};

struct RefEigen {
  double value = 0.0;
  int mult = 0;
};

/// Closed-form curvature of a homogeneous family: Ricci spectrum with multiplicities
/// and the scalar curvature, enough to evaluate every pointwise invariant exactly.
struct ReferenceData {
  int dim = 0;
  std::vector<RefEigen> ric_spectrum;
  double scal = 0.0;

  /// Diagonal model triple: g = I, ric = diag(spectrum), scal.
  PointData point() const;
  /// Ein_k spectrum: scal - k * rho over the Ricci spectrum.
  std::vector<RefEigen> ein_spectrum(double k) const;
  double ein_min_eig(double k) const;
  double ein_upper() const { return ein_pointwise(point()); }
  ExtendedReal ein_lower() const { return ein_lower_pointwise(point()); }
};

struct FamilyInstance {
  FamilyDescriptor descriptor;
  std::optional<MetricField> field;  // absent for closed-form-only families
  ReferenceData ref;
};

/// Validates parameters and builds the chart (when a numerical chart exists) plus the
/// closed-form reference. Throws std::invalid_argument on bad parameters.
FamilyInstance make_family(const FamilyDescriptor& d);

MetricField make_sphere_chart(int n, double radius);
MetricField make_torus_chart(int n, double period = 0.0);  // 0 -> 2*pi
MetricField make_hyperbolic_chart(int n, double coord_radius = 0.9);

/// Hopf canonical variation of the round 3-sphere: fiber direction of the metric
/// scaled by t. t = 1 is the round unit sphere.
MetricField canonical_variation_s3(double t);

/// Flat torus with a fixed smooth bump: g = I + amplitude*sin(x0)*cos(x1)*B, the
/// closed base metric used by the variational and scaling checks. SPD for
/// amplitude <= 0.3.
MetricField make_bump_torus(int n, double amplitude = 0.2);

/// The fixed bump direction matrix B above.
MatXd bump_pattern(int n);

}  // namespace eink
