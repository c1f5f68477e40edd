#include "eink/families.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace eink {

namespace {

constexpr double kPi = std::numbers::pi;

double get_param(const FamilyDescriptor& d, const std::string& key, double fallback,
                 bool required = false) {
  auto it = d.params.find(key);
  if (it == d.params.end()) {
    if (required) throw std::invalid_argument("family " + std::string(family_name(d.name)) +
                                              ": missing parameter '" + key + "'");
    return fallback;
  }
  return it->second;
}

int get_int(const FamilyDescriptor& d, const std::string& key, int fallback,
            bool required = false) {
  const double v = get_param(d, key, fallback, required);
  const int i = static_cast<int>(std::llround(v));
  if (std::abs(v - i) > 1e-9)
    throw std::invalid_argument("family parameter '" + key + "' must be an integer");
  return i;
}

struct SphereMetric {
  int n;
  double r2;
  template <typename T>
  MatX<T> operator()(const VecX<T>& x) const {
    using std::sin;
    MatX<T> g = MatX<T>::Zero(n, n);
    T cum = T(r2);
    g(0, 0) = cum;
    for (int i = 1; i < n; ++i) {
      const T s = sin(x[i - 1]);
      cum = cum * s * s;
      g(i, i) = cum;
    }
    return g;
  }
};

struct FlatMetric {
  int n;
  template <typename T>
  MatX<T> operator()(const VecX<T>&) const {
    MatX<T> g = MatX<T>::Zero(n, n);
    for (int i = 0; i < n; ++i) g(i, i) = T(1.0);
    return g;
  }
};

struct HyperbolicMetric {
  int n;
  template <typename T>
  MatX<T> operator()(const VecX<T>& x) const {
    T rho2 = T(0.0);
    for (int i = 0; i < n; ++i) rho2 += x[i] * x[i];
    const T conf = T(4.0) / ((T(1.0) - rho2) * (T(1.0) - rho2));
    MatX<T> g = MatX<T>::Zero(n, n);
    for (int i = 0; i < n; ++i) g(i, i) = conf;
    return g;
  }
};

// Euler-angle Berger sphere: g_t = (sigma1^2 + sigma2^2 + t*sigma3^2)/4 with
// sigma1^2 + sigma2^2 = dtheta^2 + sin^2 theta dphi^2, sigma3 = dpsi + cos theta dphi.
struct BergerS3Metric {
  double t;
  template <typename T>
  MatX<T> operator()(const VecX<T>& x) const {
    using std::sin;
    using std::cos;
    const T st = sin(x[0]), ct = cos(x[0]);
    MatX<T> g = MatX<T>::Zero(3, 3);
    g(0, 0) = T(0.25);
    g(1, 1) = (st * st + T(t) * ct * ct) * T(0.25);
    g(2, 2) = T(0.25 * t);
    g(1, 2) = T(0.25 * t) * ct;
    g(2, 1) = g(1, 2);
    return g;
  }
};

struct BumpTorusMetric {
  int n;
  double amplitude;
  MatXd pattern;
  template <typename T>
  MatX<T> operator()(const VecX<T>& x) const {
    using std::sin;
    using std::cos;
    const T f = T(amplitude) * sin(x[0]) * cos(x[1]);
    MatX<T> g = MatX<T>::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      g(i, i) = T(1.0) + f * T(pattern(i, i));
      for (int j = i + 1; j < n; ++j) {
        g(i, j) = f * T(pattern(i, j));
        g(j, i) = g(i, j);
      }
    }
    return g;
  }
};

ReferenceData sphere_ref(int n, double radius) {
  ReferenceData ref;
  ref.dim = n;
  const double lam = 1.0 / (radius * radius);
  ref.ric_spectrum = {{(n - 1.0) * lam, n}};
  ref.scal = n * (n - 1.0) * lam;
  return ref;
}

ReferenceData torus_ref(int n) {
  return {n, {{0.0, n}}, 0.0};
}

ReferenceData hyperbolic_ref(int n) {
  return {n, {{-(n - 1.0), n}}, -static_cast<double>(n) * (n - 1.0)};
}

ReferenceData berger_ref(int bn, double t) {
  ReferenceData ref;
  ref.dim = 2 * bn + 1;
  ref.ric_spectrum = {{2.0 * bn * t, 1}, {-2.0 * t + 2.0 * bn + 2.0, 2 * bn}};
  ref.scal = -2.0 * bn * t + 2.0 * bn * (2.0 * bn + 2.0);
  return ref;
}

ReferenceData product_ref(const ReferenceData& a, const ReferenceData& b) {
  ReferenceData ref;
  ref.dim = a.dim + b.dim;
  ref.ric_spectrum = a.ric_spectrum;
  ref.ric_spectrum.insert(ref.ric_spectrum.end(), b.ric_spectrum.begin(),
                          b.ric_spectrum.end());
  ref.scal = a.scal + b.scal;
  return ref;
}

}  // namespace

const char* family_name(Family f) {
  switch (f) {
    case Family::sphere: return "sphere";
    case Family::torus: return "torus";
    case Family::hyperbolic: return "hyperbolic";
    case Family::berger: return "berger";
    case Family::product: return "product";
    case Family::cylinder_model: return "cylinder_model";
    case Family::spaceform_product: return "spaceform_product";
  }
  return "?";
}

Family family_from_name(const std::string& name) {
  for (Family f : {Family::sphere, Family::torus, Family::hyperbolic, Family::berger,
                   Family::product, Family::cylinder_model, Family::spaceform_product})
    if (name == family_name(f)) return f;
  throw std::invalid_argument("unknown family '" + name + "'");
}

PointData ReferenceData::point() const {
  MatXd ric = MatXd::Zero(dim, dim);
  int at = 0;
  for (const RefEigen& e : ric_spectrum)
    for (int i = 0; i < e.mult; ++i) ric(at, at) = e.value, ++at;
  if (at != dim) throw std::logic_error("ReferenceData: multiplicities do not sum to dim");
  return {MatXd::Identity(dim, dim), ric, scal};
}

std::vector<RefEigen> ReferenceData::ein_spectrum(double k) const {
  std::vector<RefEigen> out;
  out.reserve(ric_spectrum.size());
  for (const RefEigen& e : ric_spectrum) out.push_back({scal - k * e.value, e.mult});
  return out;
}

double ReferenceData::ein_min_eig(double k) const {
  double m = std::numeric_limits<double>::infinity();
  for (const RefEigen& e : ein_spectrum(k)) m = std::min(m, e.value);
  return m;
}

MetricField make_sphere_chart(int n, double radius) {
  if (n < 2 || n > 6)
    throw std::invalid_argument("sphere chart: numerical charts cover 2 <= n <= 6");
  if (!(radius > 0.0)) throw std::invalid_argument("sphere chart: radius must be positive");
  Chart chart;
  for (int j = 1; j < n; ++j)
    chart.axes.push_back({kPoleMargin, kPi - kPoleMargin, false});
  chart.axes.push_back({0.0, 2.0 * kPi, true});
  double scale = 1.0;
  for (int j = 1; j < n; ++j) scale *= sin_power_cap_scale(n - j, kPoleMargin);
  chart.measure_scale = scale;
  return make_field(std::move(chart), SphereMetric{n, radius * radius});
}

MetricField make_torus_chart(int n, double period) {
  if (n < 2) throw std::invalid_argument("torus chart: dim must be >= 2");
  const double L = period > 0.0 ? period : 2.0 * kPi;
  Chart chart;
  for (int i = 0; i < n; ++i) chart.axes.push_back({0.0, L, true});
  return make_field(std::move(chart), FlatMetric{n});
}

MetricField make_hyperbolic_chart(int n, double coord_radius) {
  if (n < 2) throw std::invalid_argument("hyperbolic chart: dim must be >= 2");
  if (!(coord_radius > 0.0) || coord_radius > 0.9)
    throw std::invalid_argument("hyperbolic chart: coordinate radius must be in (0, 0.9]");
  const double c = coord_radius / std::sqrt(static_cast<double>(n));
  Chart chart;
  for (int i = 0; i < n; ++i) chart.axes.push_back({-c, c, false});
  return make_field(std::move(chart), HyperbolicMetric{n});
}

MetricField canonical_variation_s3(double t) {
  if (!(t > 0.0)) throw std::invalid_argument("canonical variation: t must be positive");
  Chart chart;
  chart.axes.push_back({kPoleMargin, kPi - kPoleMargin, false});  // theta
  chart.axes.push_back({0.0, 2.0 * kPi, true});                   // phi
  chart.axes.push_back({0.0, 4.0 * kPi, true});                   // psi
  chart.measure_scale = sin_power_cap_scale(1, kPoleMargin);
  return make_field(std::move(chart), BergerS3Metric{t});
}

MatXd bump_pattern(int n) {
  MatXd b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      b(i, j) = 0.6 * std::cos(1.7 * (i + 1) + 2.3 * (j + 1)) + (i == j ? 0.4 : 0.0);
      b(j, i) = b(i, j);
    }
  return b;
}

MetricField make_bump_torus(int n, double amplitude) {
  if (n < 2) throw std::invalid_argument("bump torus: dim must be >= 2");
  if (std::abs(amplitude) > 0.3)
    throw std::invalid_argument("bump torus: |amplitude| must be <= 0.3 to stay SPD");
  Chart chart;
  for (int i = 0; i < n; ++i) chart.axes.push_back({0.0, 2.0 * kPi, true});
  return make_field(std::move(chart), BumpTorusMetric{n, amplitude, bump_pattern(n)});
}

FamilyInstance make_family(const FamilyDescriptor& d) {
  FamilyInstance inst;
  inst.descriptor = d;
  switch (d.name) {
    case Family::sphere: {
      const int n = get_int(d, "n", 0, true);
      const double r = get_param(d, "radius", 1.0);
      inst.field = make_sphere_chart(n, r);
      inst.ref = sphere_ref(n, r);
      break;
    }
    case Family::torus: {
      const int n = get_int(d, "n", 0, true);
      const double period = get_param(d, "period", 2.0 * kPi);
      inst.field = make_torus_chart(n, period);
      inst.ref = torus_ref(n);
      break;
    }
    case Family::hyperbolic: {
      const int n = get_int(d, "n", 0, true);
      const double r = get_param(d, "radius", 0.9);
      inst.field = make_hyperbolic_chart(n, r);
      inst.ref = hyperbolic_ref(n);
      break;
    }
    case Family::berger: {
      const int bn = get_int(d, "n", 1);
      const double t = get_param(d, "t", 0.0, true);
      if (bn < 1) throw std::invalid_argument("berger: n must be >= 1");
      if (!(t > 0.0)) throw std::invalid_argument("berger: t must be positive");
      if (bn == 1) inst.field = canonical_variation_s3(t);
      inst.ref = berger_ref(bn, t);
      break;
    }
    case Family::product: {
      const int p = get_int(d, "p", 2);
      const double lambda = get_param(d, "lambda", 1.0);
      const int q = get_int(d, "q", 2);
      const double mu = get_param(d, "mu", 0.0);
      const double period = get_param(d, "period", 2.0 * kPi);
      const MetricField a = make_sphere_chart(p, lambda);
      const ReferenceData ra = sphere_ref(p, lambda);
      MetricField b = mu > 0.0 ? make_sphere_chart(q, mu) : make_torus_chart(q, period);
      const ReferenceData rb = mu > 0.0 ? sphere_ref(q, mu) : torus_ref(q);
      inst.field = field_product(a, b);
      inst.ref = product_ref(ra, rb);
      break;
    }
    case Family::cylinder_model: {
      const int q = get_int(d, "q", 0, true);
      const int n = get_int(d, "n", 0, true);
      if (q < 2 || q > n)
        throw std::invalid_argument("cylinder_model: need 2 <= q <= n");
      inst.ref.dim = n;
      inst.ref.ric_spectrum = {{q - 2.0, q - 1}, {0.0, n - q + 1}};
      inst.ref.scal = (q - 1.0) * (q - 2.0);
      break;
    }
    case Family::spaceform_product: {
      const int p = get_int(d, "p", 0, true);
      const int q = get_int(d, "q", 0, true);
      if (p < 2 || q < 2)
        throw std::invalid_argument("spaceform_product: factor dims must be >= 2");
      inst.ref.dim = p + q;
      inst.ref.ric_spectrum = {{p - 1.0, p}, {-(q - 1.0), q}};
      inst.ref.scal = p * (p - 1.0) - q * (q - 1.0);
      break;
    }
  }
  return inst;
}

}  // namespace eink
