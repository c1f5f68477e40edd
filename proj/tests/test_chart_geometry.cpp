#include <cmath>
#include <numbers>

#include <doctest.h>

#include "eink/families.hpp"
#include "eink/field.hpp"

using namespace eink;

namespace {
constexpr double kPi = std::numbers::pi;
const auto unit_density = [](const VecXd&) { return 1.0; };
}  // namespace

TEST_CASE("chart validation") {
  Chart c;
  c.axes = {{0.0, 1.0, false}};
  CHECK_THROWS_AS(validate(c), std::invalid_argument);  // dim < 2
  c.axes.push_back({2.0, 2.0, false});
  CHECK_THROWS_AS(validate(c), std::invalid_argument);  // empty range
  c.axes[1] = {0.0, 1.0, true};
  CHECK_NOTHROW(validate(c));
}

TEST_CASE("evaluate_metric checks domain and positivity") {
  const MetricField s2 = make_sphere_chart(2, 1.0);
  VecXd x(2);
  x << 0.5 * kPi, 0.0;
  const MatXd g = evaluate_metric(s2, x);
  CHECK(g(0, 0) == doctest::Approx(1.0));
  CHECK(g(1, 1) == doctest::Approx(1.0));  // sin^2(pi/2)

  VecXd outside(2);
  outside << -1.0, 0.0;
  CHECK_THROWS_AS(evaluate_metric(s2, outside), std::domain_error);

  // A field that is not positive definite must be rejected.
  Chart torus;
  torus.axes = {{0.0, 2 * kPi, true}, {0.0, 2 * kPi, true}};
  const TensorField bad = make_field(torus, [](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::Scalar;
    MatX<T> g = MatX<T>::Zero(2, 2);
    g(0, 0) = T(1.0);
    g(1, 1) = T(-1.0);
    return g;
  });
  VecXd p(2);
  p << 1.0, 2.0;
  CHECK_THROWS_AS(evaluate_metric(bad, p), std::invalid_argument);
}

TEST_CASE("flat torus derivatives vanish") {
  const MetricField t2 = make_torus_chart(2);
  VecXd x(2);
  x << 1.2, 3.4;
  const MetricJet jet = metric_derivatives(t2, x, 2);
  for (int k = 0; k < 2; ++k) {
    CHECK(jet.d1[k].cwiseAbs().maxCoeff() == 0.0);
    for (int l = 0; l < 2; ++l) CHECK(jet.second(k, l, 2).cwiseAbs().maxCoeff() == 0.0);
  }
  CHECK_THROWS_AS(metric_derivatives(t2, x, 3), std::invalid_argument);
}

TEST_CASE("sphere metric derivative against hand differentiation") {
  const MetricField s2 = make_sphere_chart(2, 1.0);
  VecXd x(2);
  x << 0.25 * kPi, 1.0;
  const MetricJet jet = metric_derivatives(s2, x, 2);
  // d g_phiphi / d theta = 2 sin cos = 1 at theta = pi/4
  CHECK(jet.d1[0](1, 1) == doctest::Approx(1.0).epsilon(1e-14));
  // second derivative: 2 cos(2 theta) = 0 at pi/4
  CHECK(jet.second(0, 0, 2)(1, 1) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("conformal metric derivative pattern") {
  // g = e^{2f} delta with f = a sin(x0): d_0 g_ij = 2 a cos(x0) e^{2f} delta_ij
  const double a = 0.3;
  Chart torus;
  torus.axes = {{0.0, 2 * kPi, true}, {0.0, 2 * kPi, true}, {0.0, 2 * kPi, true}};
  const TensorField f = make_field(torus, [a](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::Scalar;
    using std::exp;
    using std::sin;
    const T conf = exp(T(2.0 * a) * sin(x[0]));
    MatX<T> g = MatX<T>::Zero(3, 3);
    for (int i = 0; i < 3; ++i) g(i, i) = conf;
    return g;
  });
  VecXd x(3);
  x << 0.8, 1.1, 2.9;
  const MetricJet jet = metric_derivatives(f, x, 1);
  const double expected = 2 * a * std::cos(x[0]) * std::exp(2 * a * std::sin(x[0]));
  for (int i = 0; i < 3; ++i) {
    CHECK(jet.d1[0](i, i) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(jet.d1[1](i, i) == doctest::Approx(0.0).epsilon(1e-14));
  }
}

TEST_CASE("volumes of built-in families") {
  const MetricField s2 = make_sphere_chart(2, 1.0);
  CHECK(integrate(s2, make_quadrature_grid(s2.chart, 48), unit_density) ==
        doctest::Approx(4 * kPi).epsilon(1e-10));

  const MetricField t3 = make_torus_chart(3);
  CHECK(integrate(t3, make_quadrature_grid(t3.chart, 16), unit_density) ==
        doctest::Approx(std::pow(2 * kPi, 3)).epsilon(1e-12));

  const MetricField s3 = make_sphere_chart(3, 1.0);
  CHECK(integrate(s3, make_quadrature_grid(s3.chart, 32), unit_density) ==
        doctest::Approx(2 * kPi * kPi).epsilon(1e-10));
}

TEST_CASE("trapezoid rule is exact on low trigonometric polynomials") {
  const MetricField t2 = make_torus_chart(2);
  const GridSample grid = make_quadrature_grid(t2.chart, 12);
  const double got = integrate(t2, grid, [](const VecXd& x) {
    return 0.5 + std::cos(3 * x[0]) * std::sin(2 * x[1]) + std::sin(5 * x[1]);
  });
  CHECK(got == doctest::Approx(0.5 * 4 * kPi * kPi).epsilon(1e-13));
}

TEST_CASE("grid refinement leaves volume estimates in place") {
  for (const FamilyDescriptor& d :
       {FamilyDescriptor{Family::sphere, {{"n", 2}}},
        FamilyDescriptor{Family::sphere, {{"n", 3}}},
        FamilyDescriptor{Family::torus, {{"n", 3}}},
        FamilyDescriptor{Family::berger, {{"n", 1}, {"t", 2.0}}},
        FamilyDescriptor{Family::hyperbolic, {{"n", 2}}},
        FamilyDescriptor{Family::product, {{"p", 2}, {"lambda", 0.5}, {"q", 2}}}}) {
    const FamilyInstance inst = make_family(d);
    REQUIRE(inst.field.has_value());
    const GridSample grid = make_quadrature_grid(inst.field->chart, 24);
    const double v = integrate(*inst.field, grid, unit_density);
    const double v2 = integrate(*inst.field, grid.refined(), unit_density);
    CHECK(std::abs(v - v2) / std::max(1.0, std::abs(v)) < 1e-8);
  }
}

TEST_CASE("optional measure weight multiplies the density") {
  MetricField t2 = make_torus_chart(2);
  t2.chart.measure_weight = [](const VecXd& x) { return 2.0 + std::sin(x[0]); };
  const double got = integrate(t2, make_quadrature_grid(t2.chart, 16), unit_density);
  CHECK(got == doctest::Approx(2.0 * 4 * kPi * kPi).epsilon(1e-13));
}

TEST_CASE("scan lattices are nested under refinement") {
  const MetricField s2 = make_sphere_chart(2, 1.0);
  const GridSample scan = make_scan_grid(s2.chart, 8);
  const GridSample fine = scan.refined();
  // every coarse point appears among the fine points
  for (std::size_t i = 0; i < scan.size(); ++i) {
    const VecXd p = scan.point_at(i);
    bool found = false;
    for (std::size_t j = 0; j < fine.size() && !found; ++j)
      found = (fine.point_at(j) - p).cwiseAbs().maxCoeff() < 1e-12;
    CHECK(found);
  }
}

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  std::vector<double> xs, ws;
  gauss_legendre(8, -1.0, 2.0, xs, ws);
  double acc = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) acc += ws[i] * std::pow(xs[i], 9);
  CHECK(acc == doctest::Approx((std::pow(2.0, 10) - 1.0) / 10.0).epsilon(1e-13));
}
