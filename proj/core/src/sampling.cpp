#include "eink/sampling.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace eink {

double PointSampler::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

MatXd PointSampler::random_spd(int n) {
  MatXd l = MatXd::Identity(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) l(i, j) += 0.3 * uniform(-1.0, 1.0);
  return l * l.transpose();
}

MatXd PointSampler::random_sym(int n, double lo, double hi) {
  MatXd s(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      s(i, j) = uniform(lo, hi);
      s(j, i) = s(i, j);
    }
  return s;
}

PointData PointSampler::independent(int n) {
  PointData p;
  p.g = random_spd(n);
  p.ric = random_sym(n);
  p.scal = uniform(-static_cast<double>(n) * n, static_cast<double>(n) * n);
  return p;
}

PointData PointSampler::consistent(int n) {
  PointData p;
  p.g = random_spd(n);
  p.ric = random_sym(n);
  p.scal = trace_rel(p.ric, p.g);
  return p;
}

PointData PointSampler::consistent_biased(int n) {
  PointData p;
  p.g = random_spd(n);
  p.ric = random_sym(n);
  if (uniform(0.0, 1.0) < 0.5) p.ric += uniform(0.5, 2.0 * n) * p.g;
  p.scal = trace_rel(p.ric, p.g);
  return p;
}

PointData PointSampler::near_einstein(int n, double eta) {
  PointData p;
  p.g = random_spd(n);
  const double c = uniform(0.2, 3.0);
  p.ric = c * (p.g + eta * random_sym(n, -1.0, 1.0));
  p.scal = trace_rel(p.ric, p.g);
  return p;
}

namespace {

struct TrigMode {
  MatXd coef;
  std::vector<int> wave;
  double phase;
};

struct TrigField {
  int n;
  std::vector<TrigMode> modes;

  template <typename T>
  MatX<T> operator()(const VecX<T>& x) const {
    using std::cos;
    MatX<T> h = MatX<T>::Zero(n, n);
    for (const TrigMode& m : modes) {
      T arg = T(m.phase);
      for (int i = 0; i < n; ++i) arg += T(static_cast<double>(m.wave[i])) * x[i];
      const T c = cos(arg);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h(i, j) += c * T(m.coef(i, j));
    }
    return h;
  }
};

}  // namespace

TensorField make_random_periodic_field(int n, std::mt19937_64& rng, double amplitude,
                                       int modes) {
  std::uniform_real_distribution<double> amp(-amplitude, amplitude);
  std::uniform_real_distribution<double> ph(0.0, 2.0 * std::numbers::pi);
  std::uniform_int_distribution<int> wave(-2, 2);
  TrigField f;
  f.n = n;
  for (int m = 0; m < modes; ++m) {
    TrigMode mode;
    mode.coef = MatXd(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        mode.coef(i, j) = amp(rng) / modes;
        mode.coef(j, i) = mode.coef(i, j);
      }
    mode.wave.assign(n, 0);
    // First mode constant, second on the (1,1,0,..) harmonic so the field always
    // couples to low-order metric perturbations; the rest random.
    if (m == 1 && n >= 2) {
      mode.wave[0] = 1;
      mode.wave[1] = 1;
    } else if (m >= 2) {
      for (int i = 0; i < n; ++i) mode.wave[i] = wave(rng);
    }
    mode.phase = m == 0 ? 0.0 : ph(rng);
    f.modes.push_back(std::move(mode));
  }
  Chart chart;
  for (int i = 0; i < n; ++i) chart.axes.push_back({0.0, 2.0 * std::numbers::pi, true});
  return make_field(std::move(chart), f);
}

}  // namespace eink
