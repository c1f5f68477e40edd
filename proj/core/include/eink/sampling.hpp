#pragma once

#include <cstdint>
#include <random>

#include "eink/field.hpp"
#include "eink/tensors.hpp"

namespace eink {

/// Seeded generators for the randomized identity and implication suites. One
/// mt19937_64 stream per sampler; identical seeds reproduce identical samples.
class PointSampler {
 public:
  explicit PointSampler(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }

  /// L L^T with L = I + 0.3 U, U entrywise uniform in [-1, 1].
  MatXd random_spd(int n);
  MatXd random_sym(int n, double lo = -2.0, double hi = 2.0);

  /// Fully independent triple: scal uniform in [-n^2, n^2], unrelated to ric.
  /// Valid only for tests of relations that hold formally in (g, Ric, Scal).
  PointData independent(int n);

  /// Geometric triple: scal = trace_g ric. Every trace-based identity of the
  /// algebra module needs this consistency.
  PointData consistent(int n);

  /// Consistent triple with half the draws shifted toward positive Ricci so that
  /// positivity hypotheses are hit often enough to be testable.
  PointData consistent_biased(int n);

  /// Ric = c (g + eta * sym), c in [0.2, 3]: anisotropy controlled by eta. Small eta
  /// populates the near-Einstein region where top-k positivity hypotheses live.
  PointData near_einstein(int n, double eta);

 private:
  std::mt19937_64 rng_;
  double uniform(double lo, double hi);
};

/// Smooth symmetric periodic field on an n-torus chart: a few random low-order
/// trigonometric modes. Used as perturbation directions h.
TensorField make_random_periodic_field(int n, std::mt19937_64& rng,
                                       double amplitude = 0.3, int modes = 3);

}  // namespace eink
