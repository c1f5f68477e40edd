#include <cmath>

#include <doctest.h>

#include "eink/hyperdual.hpp"

using eink::HyperDual;

namespace {

// Seeded on both nilpotent parts: d/dx and d2/dx2 of a univariate expression.
HyperDual seed(double x) { return {x, 1.0, 1.0, 0.0}; }

}  // namespace

TEST_CASE("arithmetic derivatives match closed forms") {
  const double x = 0.7;
  // f = x^3: f' = 3x^2, f'' = 6x
  const HyperDual f = seed(x) * seed(x) * seed(x);
  CHECK(f.f == doctest::Approx(x * x * x).epsilon(1e-15));
  CHECK(f.f1 == doctest::Approx(3 * x * x).epsilon(1e-15));
  CHECK(f.f12 == doctest::Approx(6 * x).epsilon(1e-15));

  // quotient: g = 1/(1+x^2): g' = -2x/(1+x^2)^2
  const HyperDual g = HyperDual(1.0) / (HyperDual(1.0) + seed(x) * seed(x));
  const double denom = 1 + x * x;
  CHECK(g.f1 == doctest::Approx(-2 * x / (denom * denom)).epsilon(1e-14));
  const double gpp = (6 * x * x - 2) / (denom * denom * denom);
  CHECK(g.f12 == doctest::Approx(gpp).epsilon(1e-14));
}

TEST_CASE("transcendental lifts") {
  const double x = 0.43;
  const HyperDual s = sin(seed(x));
  CHECK(s.f1 == doctest::Approx(std::cos(x)).epsilon(1e-15));
  CHECK(s.f12 == doctest::Approx(-std::sin(x)).epsilon(1e-15));

  const HyperDual e = exp(seed(x) * HyperDual(2.0));
  CHECK(e.f1 == doctest::Approx(2 * std::exp(2 * x)).epsilon(1e-14));
  CHECK(e.f12 == doctest::Approx(4 * std::exp(2 * x)).epsilon(1e-14));

  const HyperDual r = sqrt(seed(x));
  CHECK(r.f1 == doctest::Approx(0.5 / std::sqrt(x)).epsilon(1e-14));
  CHECK(r.f12 == doctest::Approx(-0.25 * std::pow(x, -1.5)).epsilon(1e-14));

  const HyperDual l = log(seed(x));
  CHECK(l.f1 == doctest::Approx(1.0 / x).epsilon(1e-14));
  CHECK(l.f12 == doctest::Approx(-1.0 / (x * x)).epsilon(1e-14));

  const HyperDual p = pow(seed(x), 2.5);
  CHECK(p.f1 == doctest::Approx(2.5 * std::pow(x, 1.5)).epsilon(1e-14));
  CHECK(p.f12 == doctest::Approx(2.5 * 1.5 * std::pow(x, 0.5)).epsilon(1e-14));
}

TEST_CASE("mixed partials from two seeds") {
  // f(a, b) = sin(a) * exp(b); d2f/dadb = cos(a) exp(b)
  const double a = 0.9, b = -0.4;
  const HyperDual xa{a, 1.0, 0.0, 0.0};
  const HyperDual xb{b, 0.0, 1.0, 0.0};
  const HyperDual f = sin(xa) * exp(xb);
  CHECK(f.f1 == doctest::Approx(std::cos(a) * std::exp(b)).epsilon(1e-14));
  CHECK(f.f2 == doctest::Approx(std::sin(a) * std::exp(b)).epsilon(1e-14));
  CHECK(f.f12 == doctest::Approx(std::cos(a) * std::exp(b)).epsilon(1e-14));
}

TEST_CASE("Eigen matrices of hyper-dual scalars") {
  eink::MatXhd m = eink::MatXhd::Zero(2, 2);
  m(0, 0) = seed(1.0);
  m(1, 1) = HyperDual(2.0);
  m(0, 1) = m(1, 0) = HyperDual(0.5);
  const eink::MatXhd sq = m * m;
  CHECK(sq(0, 0).f == doctest::Approx(1.25));
  CHECK(sq(0, 0).f1 == doctest::Approx(2.0));  // d/dx of (x^2 + 0.25) at x=1
}
