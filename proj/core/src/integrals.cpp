#include "eink/integrals.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "eink/parallel.hpp"

namespace eink {

namespace {

constexpr double kPi = std::numbers::pi;

double measured_weight(const MetricField& field, const VecXd& x, double det) {
  double w = std::sqrt(det);
  if (field.chart.measure_weight) w *= field.chart.measure_weight(x);
  return w;
}

/// Evaluation-only field whose values are the pullback J^T J of an embedding,
/// with J obtained from hyper-dual first derivatives.
template <typename F>
TensorField make_pullback_field(Chart chart, F embed, int ambient_dim) {
  TensorField f;
  f.chart = std::move(chart);
  const int n = f.chart.dim();
  f.eval = [embed, ambient_dim, n](const VecXd& x) -> MatXd {
    VecXhd xh(n);
    for (int i = 0; i < n; ++i) xh[i] = HyperDual(x[i]);
    MatXd jac(ambient_dim, n);
    for (int k = 0; k < n; k += 2) {
      const int l = (k + 1 < n) ? k + 1 : k;
      xh[k].f1 = 1.0;
      xh[l].f2 = 1.0;
      const VecXhd X = embed(xh);
      for (int a = 0; a < ambient_dim; ++a) {
        jac(a, k) = X[a].f1;
        jac(a, l) = X[a].f2;
      }
      xh[k].f1 = 0.0;
      xh[l].f2 = 0.0;
    }
    return jac.transpose() * jac;
  };
  return f;
}

// Great-circle tube in the round 3-sphere of radius R, Fermi coordinates
// (s, rho, omega); the normal frame along the circle is parallel.
struct SphereTubeEmbed3 {
  double R;
  double rho_fixed;
  bool hypersurface;
  template <typename T>
  VecX<T> operator()(const VecX<T>& u) const {
    using std::cos;
    using std::sin;
    const T s = u[0];
    const T rho = hypersurface ? T(rho_fixed) : u[1];
    const T om = hypersurface ? u[1] : u[2];
    const T ang = rho * T(1.0 / R);
    const T cr = cos(ang), sr = sin(ang);
    VecX<T> X(4);
    X[0] = T(R) * cr * cos(s);
    X[1] = T(R) * cr * sin(s);
    X[2] = T(R) * sr * cos(om);
    X[3] = T(R) * sr * sin(om);
    return X;
  }
};

// Tube around a circle of radius R in flat R^3.
struct FlatTubeEmbed3 {
  double R;
  double rho_fixed;
  bool hypersurface;
  template <typename T>
  VecX<T> operator()(const VecX<T>& u) const {
    using std::cos;
    using std::sin;
    const T s = u[0];
    const T rho = hypersurface ? T(rho_fixed) : u[1];
    const T om = hypersurface ? u[1] : u[2];
    const T w = T(R) + rho * cos(om);
    VecX<T> X(3);
    X[0] = w * cos(s);
    X[1] = w * sin(s);
    X[2] = rho * sin(om);
    return X;
  }
};

// Great-circle tube in the round 5-sphere; normal directions parameterized by the
// unit 3-sphere (chi1, chi2, phi).
struct SphereTubeEmbed5 {
  double R;
  double rho_fixed;
  bool hypersurface;  // solid variant inserts rho as coordinate 1
  template <typename T>
  VecX<T> operator()(const VecX<T>& u) const {
    using std::cos;
    using std::sin;
    const T s = u[0];
    const T rho = hypersurface ? T(rho_fixed) : u[1];
    const int off = hypersurface ? 1 : 2;
    const T chi1 = u[off], chi2 = u[off + 1], phi = u[off + 2];
    const T ang = rho * T(1.0 / R);
    const T cr = cos(ang), sr = sin(ang);
    VecX<T> X(6);
    X[0] = T(R) * cr * cos(s);
    X[1] = T(R) * cr * sin(s);
    X[2] = T(R) * sr * cos(chi1);
    X[3] = T(R) * sr * sin(chi1) * cos(chi2);
    X[4] = T(R) * sr * sin(chi1) * sin(chi2) * cos(phi);
    X[5] = T(R) * sr * sin(chi1) * sin(chi2) * sin(phi);
    return X;
  }
};

// Closed-form Fermi metric of the distance hypersurface. Sphere ambients give a
// product of the shortened base circle with the normal distance sphere; the flat
// model keeps the (R + rho cos w)^2 base coefficient of the rotating normal frame.
struct FermiHypMetric {
  int n;  // hypersurface dimension: 2 (sphere3/flat3) or 4 (sphere5)
  double R;
  double rho;
  bool flat;
  template <typename T>
  MatX<T> operator()(const VecX<T>& x) const {
    using std::cos;
    using std::sin;
    MatX<T> g = MatX<T>::Zero(n, n);
    if (flat) {
      const T w = T(R) + T(rho) * cos(x[1]);
      g(0, 0) = w * w;
      g(1, 1) = T(rho * rho);
      return g;
    }
    const double ang = rho / R;
    const double cr = std::cos(ang), sr = std::sin(ang);
    g(0, 0) = T(R * R * cr * cr);
    T cum = T(R * R * sr * sr);
    g(1, 1) = cum;
    for (int i = 2; i < n; ++i) {
      const T s = sin(x[i - 1]);
      cum = cum * s * s;
      g(i, i) = cum;
    }
    return g;
  }
};

Chart tube_chart(int n_coords, double r, bool hypersurface) {
  Chart chart;
  chart.axes.push_back({0.0, 2.0 * kPi, true});  // s
  if (!hypersurface) chart.axes.push_back({0.0, r, false});
  const int normal_angles = n_coords - 1 - (hypersurface ? 0 : 1);
  for (int i = 0; i < normal_angles - 1; ++i)
    chart.axes.push_back({kPoleMargin, kPi - kPoleMargin, false});
  chart.axes.push_back({0.0, 2.0 * kPi, true});
  double scale = 1.0;
  for (int i = 0; i < normal_angles - 1; ++i)
    scale *= sin_power_cap_scale(normal_angles - 1 - i, kPoleMargin);
  chart.measure_scale = scale;
  return chart;
}

}  // namespace

double integrate_curvature(const MetricField& field, const GridSample& grid,
                           const std::function<double(const CurvatureData&)>& f) {
  const std::size_t count = grid.size();
  std::vector<double> terms(count);
  parallel_for_chunked(count, [&](std::size_t begin, std::size_t end) {
    VecXd x;
    for (std::size_t i = begin; i < end; ++i) {
      grid.point_at(i, x);
      const CurvatureData c = curvature_at(field, x);
      terms[i] = grid.weight_at(i) * f(c) * measured_weight(field, x, c.g.determinant());
    }
  });
  return field.chart.measure_scale * pairwise_sum(terms);
}

double total_scalar(const MetricField& field, const GridSample& grid) {
  return integrate_curvature(field, grid, [](const CurvatureData& c) { return c.scal; });
}

double modified_inner(const TensorField& h1, const TensorField& h2,
                      const MetricField& field, double alpha, const GridSample& grid) {
  const std::size_t count = grid.size();
  std::vector<double> terms(count);
  parallel_for_chunked(count, [&](std::size_t begin, std::size_t end) {
    VecXd x;
    for (std::size_t i = begin; i < end; ++i) {
      grid.point_at(i, x);
      const MatXd g = field.eval(x);
      Eigen::LLT<MatXd> llt(g);
      const MatXd a = llt.solve(h1.eval(x));
      const MatXd b = llt.solve(h2.eval(x));
      const double dot = (a * b).trace() - alpha * a.trace() * b.trace();
      terms[i] = grid.weight_at(i) * dot * measured_weight(field, x, g.determinant());
    }
  });
  return field.chart.measure_scale * pairwise_sum(terms);
}

double gradient_alpha(double k, int n) { return (k - 2.0) / (2.0 * (k - n)); }

PerturbedFamily make_perturbed_family(MetricField base, TensorField h, double eps_max,
                                      int scan_points) {
  if (!(eps_max > 0.0)) throw std::invalid_argument("perturbed family: eps_max must be > 0");
  const GridSample scan = make_scan_grid(base.chart, scan_points);
  VecXd x;
  for (std::size_t i = 0; i < scan.size(); ++i) {
    scan.point_at(i, x);
    const MatXd g = base.eval(x);
    const MatXd dh = h.eval(x);
    for (double eps : {eps_max, -eps_max}) {
      Eigen::SelfAdjointEigenSolver<MatXd> es(g + eps * dh, Eigen::EigenvaluesOnly);
      if (es.eigenvalues().minCoeff() <= 1e-12)
        throw std::invalid_argument("perturbed family: not SPD at |eps| = eps_max");
    }
  }
  return {std::move(base), std::move(h), eps_max};
}

GradientCheckResult gradient_check(const PerturbedFamily& pf, double k,
                                   const GridSample& grid) {
  const int n = pf.base.chart.dim();
  if (!(k > 0.0 && k < n)) throw std::invalid_argument("gradient_check: need 0 < k < n");
  for (const auto& ax : pf.base.chart.axes)
    if (!ax.periodic)
      throw std::invalid_argument("gradient_check: chart must be closed (fully periodic)");
  const double e0 = 1e-4;
  if (pf.eps_max < 2.0 * e0)
    throw std::invalid_argument("gradient_check: family not SPD over the required epsilon range");

  auto F = [&](double eps) { return total_scalar(field_sum(pf.base, pf.h, eps), grid); };
  const double fp = F(e0), fm = F(-e0), fp2 = F(2.0 * e0), fm2 = F(-2.0 * e0);
  // 4-point central difference (one Richardson step on the 2-point stencil).
  const double fd = (8.0 * (fp - fm) - (fp2 - fm2)) / (12.0 * e0);

  GradientCheckResult out;
  out.alpha = gradient_alpha(k, n);
  out.derivative = fd;

  const std::size_t count = grid.size();
  std::vector<double> terms(count);
  parallel_for_chunked(count, [&](std::size_t begin, std::size_t end) {
    VecXd x;
    for (std::size_t i = begin; i < end; ++i) {
      grid.point_at(i, x);
      const CurvatureData c = curvature_at(pf.base, x);
      const MatXd e = ein_k(point_data(c), k).m;
      const MatXd a = c.ginv * e;
      const MatXd b = c.ginv * pf.h.eval(x);
      const double dot = (a * b).trace() - out.alpha * a.trace() * b.trace();
      terms[i] =
          grid.weight_at(i) * dot * measured_weight(pf.base, x, c.g.determinant());
    }
  });
  out.pairing = pf.base.chart.measure_scale * pairwise_sum(terms) / k;
  out.residual = std::abs(out.derivative - out.pairing) / std::max(1.0, std::abs(fd));
  return out;
}

SignatureReport signature_bound_report(const MetricField& field, const GridSample& grid) {
  if (field.chart.dim() != 4)
    throw std::invalid_argument("signature_bound_report: requires dim 4");
  const std::size_t count = grid.size();
  std::vector<double> wterms(count), sterms(count);
  parallel_for_chunked(count, [&](std::size_t begin, std::size_t end) {
    VecXd x;
    for (std::size_t i = begin; i < end; ++i) {
      grid.point_at(i, x);
      const CurvatureData c = curvature_at(field, x);
      const double vol =
          grid.weight_at(i) * measured_weight(field, x, c.g.determinant());
      wterms[i] = vol * weyl_norm_sq(c);
      sterms[i] = vol * sigma_i(ein_k(point_data(c), 3.0), c.g, 2);
    }
  });
  SignatureReport rep;
  rep.weyl_integral = field.chart.measure_scale * pairwise_sum(wterms);
  rep.sigma2_integral = field.chart.measure_scale * pairwise_sum(sterms);
  rep.p1_bound = rep.weyl_integral / (4.0 * kPi * kPi);
  rep.chi = (rep.weyl_integral + rep.sigma2_integral / 9.0) / (8.0 * kPi * kPi);
  rep.two_chi_minus_bound = 2.0 * rep.chi - rep.p1_bound;
  rep.sigma2_term = rep.sigma2_integral / (36.0 * kPi * kPi);
  return rep;
}

double gauss_bonnet_chi(const MetricField& field, const GridSample& grid) {
  if (field.chart.dim() != 4)
    throw std::invalid_argument("gauss_bonnet_chi: requires dim 4");
  return signature_bound_report(field, grid).chi;
}

double riemann_norm_sq_op(const CurvatureData& c) {
  return 0.25 * tensor4_norm_sq(c.riemann, c.ginv);
}

double sphere_volume(int k, double r) {
  return 2.0 * std::pow(kPi, 0.5 * (k + 1)) / std::tgamma(0.5 * (k + 1)) * std::pow(r, k);
}

double ball_volume(int k, double r) {
  return std::pow(kPi, 0.5 * k) / std::tgamma(0.5 * k + 1.0) * std::pow(r, k);
}

double focal_radius(const TubeSpec& spec) {
  switch (spec.ambient) {
    case TubeAmbient::flat3: return spec.radius;
    default: return 0.5 * kPi * spec.radius;
  }
}

namespace {

void require_tube_radius(const TubeSpec& spec) {
  if (!(spec.radius > 0.0)) throw std::invalid_argument("tube: ambient radius must be > 0");
  if (!(spec.r > 0.0) || spec.r >= focal_radius(spec))
    throw std::invalid_argument("tube: radius must lie in (0, focal radius)");
}

double curve_ein_minus1_integral(double R) {
  // int Ein_{-1}(c', c') dt along the great circle of the round 3-sphere, from the
  // numerically computed ambient curvature.
  const MetricField amb = make_sphere_chart(3, R);
  const int nphi = 64;
  double acc = 0.0;
  for (int i = 0; i < nphi; ++i) {
    VecXd x(3);
    x << 0.5 * kPi, 0.5 * kPi, 2.0 * kPi * i / nphi;
    const CurvatureData c = curvature_at(amb, x);
    const double e = c.scal + c.ricci(2, 2) / c.g(2, 2);
    acc += e * std::sqrt(c.g(2, 2)) * (2.0 * kPi / nphi);
  }
  return acc;
}

}  // namespace

TensorField tube_fermi_hypersurface_field(const TubeSpec& spec) {
  require_tube_radius(spec);
  switch (spec.ambient) {
    case TubeAmbient::sphere3:
      return make_field(tube_chart(2, spec.r, true),
                        FermiHypMetric{2, spec.radius, spec.r, false});
    case TubeAmbient::flat3:
      return make_field(tube_chart(2, spec.r, true),
                        FermiHypMetric{2, spec.radius, spec.r, true});
    case TubeAmbient::sphere5:
      return make_field(tube_chart(4, spec.r, true),
                        FermiHypMetric{4, spec.radius, spec.r, false});
  }
  throw std::logic_error("unreachable");
}

TensorField tube_pullback_hypersurface_field(const TubeSpec& spec) {
  require_tube_radius(spec);
  switch (spec.ambient) {
    case TubeAmbient::sphere3:
      return make_pullback_field(tube_chart(2, spec.r, true),
                                 SphereTubeEmbed3{spec.radius, spec.r, true}, 4);
    case TubeAmbient::flat3:
      return make_pullback_field(tube_chart(2, spec.r, true),
                                 FlatTubeEmbed3{spec.radius, spec.r, true}, 3);
    case TubeAmbient::sphere5:
      return make_pullback_field(tube_chart(4, spec.r, true),
                                 SphereTubeEmbed5{spec.radius, spec.r, true}, 6);
  }
  throw std::logic_error("unreachable");
}

TubeVolumeReport tube_volume(const TubeSpec& spec, int grid) {
  require_tube_radius(spec);
  if (spec.ambient == TubeAmbient::sphere5)
    throw std::invalid_argument("tube_volume: supported ambients are sphere3 and flat3");
  const double L = 2.0 * kPi * spec.radius;

  TensorField hyp = tube_pullback_hypersurface_field(spec);
  TensorField solid =
      spec.ambient == TubeAmbient::sphere3
          ? make_pullback_field(tube_chart(3, spec.r, false),
                                SphereTubeEmbed3{spec.radius, spec.r, false}, 4)
          : make_pullback_field(tube_chart(3, spec.r, false),
                                FlatTubeEmbed3{spec.radius, spec.r, false}, 3);

  auto unit = [](const VecXd&) { return 1.0; };
  TubeVolumeReport rep;
  rep.hyp_numeric = integrate(hyp, make_quadrature_grid(hyp.chart, grid), unit);
  rep.solid_numeric = integrate(solid, make_quadrature_grid(solid.chart, grid), unit);
  rep.hyp_flat = sphere_volume(1, spec.r) * L;
  rep.solid_flat = ball_volume(2, spec.r) * L;

  if (spec.ambient == TubeAmbient::sphere3) {
    const double curve_integral = curve_ein_minus1_integral(spec.radius);
    rep.hotelling_prediction =
        sphere_volume(1, spec.r) * (L - spec.r * spec.r / (6.0 * 4.0) * curve_integral);
  } else {
    rep.hotelling_prediction = rep.hyp_flat;
  }
  return rep;
}

TubeScalarReport tube_total_scalar(const TubeSpec& spec, int grid) {
  require_tube_radius(spec);
  if (spec.ambient != TubeAmbient::sphere5)
    throw std::invalid_argument("tube_total_scalar: implemented for the round 5-sphere");
  const double L = 2.0 * kPi * spec.radius;
  TubeScalarReport rep;

  const MetricField hyp = tube_fermi_hypersurface_field(spec);
  rep.numeric = total_scalar(hyp, make_quadrature_grid(hyp.chart, grid));
  rep.flat_reference = 6.0 * spec.r * sphere_volume(3, 1.0) * L;

  TensorField solid = make_pullback_field(tube_chart(5, spec.r, false),
                                          SphereTubeEmbed5{spec.radius, spec.r, false}, 6);
  const double ambient_scal = 20.0 / (spec.radius * spec.radius);
  rep.solid_numeric =
      ambient_scal * integrate(solid, make_quadrature_grid(solid.chart, grid),
                               [](const VecXd&) { return 1.0; });
  rep.solid_flat = 0.0;
  return rep;
}

}  // namespace eink
