#pragma once

#include <cmath>
#include <limits>

#include <Eigen/Core>

namespace eink {

/// Truncated Taylor scalar with two nilpotent parts: f + f1*e1 + f2*e2 + f12*e1*e2,
/// e1^2 = e2^2 = 0. Seeding e1 on coordinate k and e2 on coordinate l of a function's
/// input yields the exact value, both first partials and the mixed second partial in
/// one evaluation (k == l gives the pure second derivative).
struct HyperDual {
  double f = 0.0;    // value
  double f1 = 0.0;   // d/da
  double f2 = 0.0;   // d/db
  double f12 = 0.0;  // d2/(da db)

  HyperDual() = default;
  HyperDual(double v) : f(v) {}  // NOLINT: implicit by design, scalars promote
  HyperDual(double v, double d1, double d2, double d12) : f(v), f1(d1), f2(d2), f12(d12) {}

  HyperDual& operator+=(const HyperDual& o) {
    f += o.f; f1 += o.f1; f2 += o.f2; f12 += o.f12;
    return *this;
  }
  HyperDual& operator-=(const HyperDual& o) {
    f -= o.f; f1 -= o.f1; f2 -= o.f2; f12 -= o.f12;
    return *this;
  }
  HyperDual& operator*=(const HyperDual& o) {
    const double nf12 = f * o.f12 + f1 * o.f2 + f2 * o.f1 + f12 * o.f;
    const double nf1 = f * o.f1 + f1 * o.f;
    const double nf2 = f * o.f2 + f2 * o.f;
    f12 = nf12; f1 = nf1; f2 = nf2; f *= o.f;
    return *this;
  }
  HyperDual& operator/=(const HyperDual& o);
};

inline HyperDual operator+(HyperDual a, const HyperDual& b) { return a += b; }
inline HyperDual operator-(HyperDual a, const HyperDual& b) { return a -= b; }
inline HyperDual operator*(HyperDual a, const HyperDual& b) { return a *= b; }
inline HyperDual operator-(const HyperDual& a) { return {-a.f, -a.f1, -a.f2, -a.f12}; }
inline HyperDual operator+(const HyperDual& a) { return a; }

/// Lift a smooth scalar function through the nilpotent parts:
/// g(x) = g(f) + g'(f)(x - f) + g''(f)/2 (x - f)^2 with (x - f)^2 = 2 f1 f2 e1 e2.
inline HyperDual lift(const HyperDual& x, double v, double dv, double ddv) {
  return {v, dv * x.f1, dv * x.f2, dv * x.f12 + ddv * x.f1 * x.f2};
}

inline HyperDual inverse(const HyperDual& x) {
  const double iv = 1.0 / x.f;
  return lift(x, iv, -iv * iv, 2.0 * iv * iv * iv);
}

inline HyperDual& HyperDual::operator/=(const HyperDual& o) { return *this *= inverse(o); }
inline HyperDual operator/(HyperDual a, const HyperDual& b) { return a /= b; }

inline bool operator==(const HyperDual& a, const HyperDual& b) { return a.f == b.f; }
inline bool operator!=(const HyperDual& a, const HyperDual& b) { return a.f != b.f; }
inline bool operator<(const HyperDual& a, const HyperDual& b) { return a.f < b.f; }
inline bool operator>(const HyperDual& a, const HyperDual& b) { return a.f > b.f; }
inline bool operator<=(const HyperDual& a, const HyperDual& b) { return a.f <= b.f; }
inline bool operator>=(const HyperDual& a, const HyperDual& b) { return a.f >= b.f; }

inline HyperDual sin(const HyperDual& x) {
  const double s = std::sin(x.f), c = std::cos(x.f);
  return lift(x, s, c, -s);
}
inline HyperDual cos(const HyperDual& x) {
  const double s = std::sin(x.f), c = std::cos(x.f);
  return lift(x, c, -s, -c);
}
inline HyperDual tan(const HyperDual& x) {
  const double t = std::tan(x.f), sec2 = 1.0 + t * t;
  return lift(x, t, sec2, 2.0 * t * sec2);
}
inline HyperDual exp(const HyperDual& x) {
  const double e = std::exp(x.f);
  return lift(x, e, e, e);
}
inline HyperDual log(const HyperDual& x) {
  const double iv = 1.0 / x.f;
  return lift(x, std::log(x.f), iv, -iv * iv);
}
inline HyperDual sqrt(const HyperDual& x) {
  const double r = std::sqrt(x.f);
  return lift(x, r, 0.5 / r, -0.25 / (r * x.f));
}
inline HyperDual pow(const HyperDual& x, double p) {
  const double v = std::pow(x.f, p);
  return lift(x, v, p * std::pow(x.f, p - 1.0), p * (p - 1.0) * std::pow(x.f, p - 2.0));
}
inline HyperDual abs(const HyperDual& x) { return x.f < 0.0 ? -x : x; }

inline double value(const HyperDual& x) { return x.f; }
inline double value(double x) { return x; }

using VecXd = Eigen::VectorXd;
using MatXd = Eigen::MatrixXd;
using VecXhd = Eigen::Matrix<HyperDual, Eigen::Dynamic, 1>;
using MatXhd = Eigen::Matrix<HyperDual, Eigen::Dynamic, Eigen::Dynamic>;

template <typename T>
using VecX = Eigen::Matrix<T, Eigen::Dynamic, 1>;
template <typename T>
using MatX = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

}  // namespace eink

namespace Eigen {

template <>
struct NumTraits<eink::HyperDual> : NumTraits<double> {
  using Real = eink::HyperDual;
  using NonInteger = eink::HyperDual;
  using Nested = eink::HyperDual;
  using Literal = double;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 8,
    MulCost = 16
  };
  static inline Real epsilon() { return {NumTraits<double>::epsilon()}; }
  static inline Real dummy_precision() { return {NumTraits<double>::dummy_precision()}; }
  static inline Real highest() { return {NumTraits<double>::highest()}; }
  static inline Real lowest() { return {NumTraits<double>::lowest()}; }
  static inline int digits10() { return NumTraits<double>::digits10(); }
};

namespace internal {
template <>
struct scalar_product_traits<eink::HyperDual, double> {
  using ReturnType = eink::HyperDual;
};
template <>
struct scalar_product_traits<double, eink::HyperDual> {
  using ReturnType = eink::HyperDual;
};
}  // namespace internal

}  // namespace Eigen
