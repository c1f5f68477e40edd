#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eink/integrals.hpp"

namespace eink {

/// One verification outcome; serialized as {check, params, lhs, rhs, residual, pass}.
struct CheckRecord {
  std::string check;
  std::string params;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  bool pass = false;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckRecord> checks;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

/// Algebraic identities on random consistent triples, max relative residual over the
/// samples, pass threshold 1e-10.
SuiteResult run_identity_suite(int dim, int samples, std::uint64_t seed);

/// Positivity implications and equivalences; every record requires zero
/// counterexamples among `samples` hypothesis-satisfying draws.
SuiteResult run_implication_suite(int dim, int samples, std::uint64_t seed);

/// The Gamma_2(A) <-> Gamma_2(Ein_k) equivalence at k = 2n(n-1)/(3n-4) alone
/// (used for the high dimensions where the full suite is not run).
CheckRecord run_gamma2_equiv_check(int dim, int samples, std::uint64_t seed);

/// Model-cylinder positivity against the q > 2, q > k+1 criterion, exact scan.
SuiteResult run_cone_suite();

/// Connected-sum admissibility arithmetic scan over 0 <= k, l <= kmax.
SuiteResult run_mkl_suite(int kmax = 50);

/// Euler characteristics of the three closed 4-manifold models plus the Weyl-norm
/// regression and the |R|^2 closure identity on the round 4-sphere.
SuiteResult run_gauss_bonnet_suite(int grid = 48);

/// Variational identity on the bumped 3-torus for each k, residual < 1e-4; also
/// checks the alpha(k) map is decreasing with range below 1/n.
SuiteResult run_gradient_suite(const std::vector<double>& ks, int grid = 48,
                               std::uint64_t seed = 42);

/// Tube comparisons: deficit signs and r^3 scaling stability in the round 3-sphere,
/// total-scalar deficits in the round 5-sphere, exactness in the flat model.
SuiteResult run_tube_suite(int grid = 48);

/// Five-regime closed-form table (1e-12) and the numerical Hopf chart (1e-3).
SuiteResult run_berger_suite(const std::vector<double>& ts, bool with_numeric = true,
                             int grid = 24);

/// ein_upper = n for round spheres: closed form (1e-6) and charts (1e-3).
SuiteResult run_sphere_extremality_suite();

/// Numerical chart Ricci spectra against the closed-form reference data.
SuiteResult run_families_suite(std::uint64_t seed);

/// Dispatch by suite name: identities, implications, cone, mkl, gauss-bonnet,
/// gradient, tube, berger, spheres, families, all.
std::vector<SuiteResult> run_suites(const std::string& name, int dim, int samples,
                                    std::uint64_t seed, int grid);

}  // namespace eink
