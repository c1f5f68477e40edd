#include "eink/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>

#include "eink/sampling.hpp"

namespace eink {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(const char* f, ...) {
  char buf[160];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof buf, f, args);
  va_end(args);
  return buf;
}

double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

double rel_err(const MatXd& a, const MatXd& b) {
  return (a - b).norm() / std::max({1.0, a.norm(), b.norm()});
}

std::optional<bool> banded(double v) {
  if (std::abs(v) <= kSignTol) return std::nullopt;
  return v > 0.0;
}

std::optional<bool> banded_pd(const SymBilinear& h, const MatXd& g) {
  return banded(spectrum_rel(h, g).minCoeff());
}

std::optional<bool> banded_ksum(const SymBilinear& h, const MatXd& g, int k) {
  return banded(spectrum_rel(h, g).head(k).sum());
}

std::optional<bool> banded_gamma2(const SymBilinear& h, const MatXd& g) {
  const auto s1 = banded(sigma_i(h, g, 1));
  if (!s1) return std::nullopt;
  if (!*s1) return false;
  return banded(sigma_i(h, g, 2));
}

CheckRecord residual_record(const std::string& check, const std::string& params,
                            double residual, double tol) {
  return {check, params, residual, tol, residual, residual < tol};
}

/// Resamples until `samples` hypothesis-satisfying draws are judged; zero
/// counterexamples required. Band-landing draws are discarded.
template <typename DrawFn, typename HypFn, typename ConFn>
CheckRecord implication_record(const std::string& check, const std::string& params,
                               int samples, DrawFn draw, HypFn hyp, ConFn con) {
  long hits = 0, violations = 0;
  long attempts = 0;
  const long cap = static_cast<long>(samples) * 600;
  while (hits < samples && attempts < cap) {
    ++attempts;
    auto d = draw();
    const auto h = hyp(d);
    if (!h || !*h) continue;
    const auto c = con(d);
    if (!c) continue;
    ++hits;
    if (!*c) ++violations;
  }
  CheckRecord r;
  r.check = check;
  r.params = params;
  r.lhs = static_cast<double>(hits);
  r.rhs = static_cast<double>(samples);
  r.residual = static_cast<double>(violations);
  r.pass = violations == 0 && hits == samples;
  return r;
}

/// Both predicates evaluated on every (band-free) draw and compared.
template <typename DrawFn, typename AFn, typename BFn>
CheckRecord equivalence_record(const std::string& check, const std::string& params,
                               int samples, DrawFn draw, AFn a, BFn b) {
  long done = 0, mismatches = 0;
  long attempts = 0;
  const long cap = static_cast<long>(samples) * 60;
  while (done < samples && attempts < cap) {
    ++attempts;
    auto d = draw();
    const auto va = a(d);
    if (!va) continue;
    const auto vb = b(d);
    if (!vb) continue;
    ++done;
    if (*va != *vb) ++mismatches;
  }
  CheckRecord r;
  r.check = check;
  r.params = params;
  r.lhs = static_cast<double>(done);
  r.rhs = static_cast<double>(samples);
  r.residual = static_cast<double>(mismatches);
  r.pass = mismatches == 0 && done == samples;
  return r;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

/// Anisotropy cap under which Ein_k > 0 stays reachable for near-Einstein draws.
double eta_cap_for(int n, double k) {
  if (k <= 0.5) return 0.6;
  return std::min(0.6, 0.35 * (n - k) / k);
}

}  // namespace

SuiteResult run_identity_suite(int dim, int samples, std::uint64_t seed) {
  const int n = dim;
  if (n < 3) throw std::invalid_argument("identity suite: dim must be >= 3");
  PointSampler sampler(seed);
  auto& rng = sampler.rng();

  double r_t1 = 0, r_t1sch = 0, r_t1btop = 0, r_bbar1 = 0, r_bbar2 = 0;
  double r_abar1 = 0, r_abar2 = 0, r_36 = 0, r_trace = 0, r_s1b = 0, r_s2b = 0;
  double r_schA = 0, r_schein = 0, r_affine = 0, r_kA = 0, r_bbar_newton = 0;

  for (int i = 0; i < samples; ++i) {
    const PointData p = sampler.consistent(n);

    // t1(Ein_k) = (n-1-k) Ein_{-k/(n-1-k)}, k away from the n-1 pole.
    double k;
    do {
      k = uniform(rng, -2.0, n - 1.0 - 0.05);
    } while (std::abs(n - 1.0 - k) < 0.1);
    r_t1 = std::max(r_t1, rel_err(newton_t1(ein_k(p, k), p.g).m,
                                  (n - 1.0 - k) * ein_k(p, -k / (n - 1.0 - k)).m));

    // t1(Sch_{(k-1)/(k(n-1))}) = Ein_k / k.
    const double k2 = uniform(rng, 1.0, n - 0.05);
    const double m2 = (k2 - 1.0) / (k2 * (n - 1.0));
    r_t1sch = std::max(r_t1sch, rel_err(newton_t1(sch_k(p, m2), p.g).m,
                                        ein_k(p, k2).m / k2));

    // t1(Ein_k) = k(n-2) A at k = 2(n-1)^2/(2n-3).
    const double ka = 2.0 * (n - 1.0) * (n - 1.0) / (2.0 * n - 3.0);
    r_kA = std::max(r_kA, rel_err(newton_t1(ein_k(p, ka), p.g).m,
                                  ka * (n - 2.0) * schouten(p).m));

    const SymBilinear b = ein_k(p, n - 1.0);
    const SymBilinear bbar = aux_bbar(p);
    r_bbar1 = std::max(r_bbar1, rel_err(sigma_i(bbar, p.g, 1), sigma_i(b, p.g, 1)));
    r_bbar2 = std::max(r_bbar2, rel_err(sigma_i(bbar, p.g, 2), sigma_i(b, p.g, 2)));
    r_s1b = std::max(r_s1b, rel_err(sigma_i(b, p.g, 1), p.scal));
    const double ric2 = norm_sq_rel(p.ric, p.g);
    r_s2b = std::max(r_s2b, rel_err(sigma_i(b, p.g, 2),
                                    0.5 * (n - 1.0) * (p.scal * p.scal - (n - 1.0) * ric2)));

    // t1(Bbar) = 2(n-1)/n Ein_{n/2}, t1(B) = (n-1) Ric.
    r_bbar_newton = std::max(
        r_bbar_newton, rel_err(newton_t1(bbar, p.g).m,
                               2.0 * (n - 1.0) / n * ein_k(p, 0.5 * n).m));
    r_t1btop = std::max(r_t1btop, rel_err(newton_t1(b, p.g).m, (n - 1.0) * p.ric));

    if (n >= 4) {
      const SymBilinear a = schouten(p);
      const SymBilinear abar = aux_abar(p);
      r_abar1 = std::max(r_abar1, rel_err(sigma_i(abar, p.g, 1), sigma_i(a, p.g, 1)));
      r_abar2 = std::max(r_abar2, rel_err(sigma_i(abar, p.g, 2), sigma_i(a, p.g, 2)));
    }
    if (n == 4) {
      r_36 = std::max(r_36, rel_err(sigma_i(ein_k(p, 3.0), p.g, 2),
                                    36.0 * sigma_i(schouten(p), p.g, 2)));
    }

    const double k3 = uniform(rng, -2.0, n - 0.05);
    r_trace = std::max(r_trace, rel_err(trace_rel(ein_k(p, k3).m, p.g),
                                        (n - k3) * p.scal));

    // Formal identities, exercised on fully independent triples.
    const PointData q = sampler.independent(n);
    r_schA = std::max(r_schA, rel_err(sch_k(q, 1.0 / (2.0 * (n - 1.0))).m,
                                      (n - 2.0) * schouten(q).m));
    const double kn = uniform(rng, -4.0, -0.1);
    r_schein = std::max(r_schein, rel_err(sch_k(q, kn).m, -kn * ein_k(q, 1.0 / kn).m));

    PointData q2 = sampler.independent(n);
    q2.g = q.g;
    const double lam = uniform(rng, 0.0, 1.0);
    PointData mix;
    mix.g = q.g;
    mix.ric = lam * q.ric + (1.0 - lam) * q2.ric;
    mix.scal = lam * q.scal + (1.0 - lam) * q2.scal;
    r_affine = std::max(r_affine,
                        rel_err(ein_k(mix, k3).m,
                                lam * ein_k(q, k3).m + (1.0 - lam) * ein_k(q2, k3).m));
  }

  const double tol = 1e-10;
  const std::string ps = fmt("n=%d samples=%d", n, samples);
  SuiteResult suite{"identities", {}};
  suite.checks = {
      residual_record("t1_ein_relation", ps, r_t1, tol),
      residual_record("t1_sch_inverse", ps, r_t1sch, tol),
      residual_record("t1_ein_schouten", ps, r_kA, tol),
      residual_record("t1_b_is_ricci", ps, r_t1btop, tol),
      residual_record("t1_bbar_ein_half_n", ps, r_bbar_newton, tol),
      residual_record("sigma1_bbar", ps, r_bbar1, tol),
      residual_record("sigma2_bbar", ps, r_bbar2, tol),
      residual_record("sigma1_b_scal", ps, r_s1b, tol),
      residual_record("sigma2_b_closed_form", ps, r_s2b, tol),
      residual_record("trace_ein", ps, r_trace, tol),
      residual_record("sch_is_schouten", ps, r_schA, tol),
      residual_record("sch_ein_rescale", ps, r_schein, 1e-12),
      residual_record("ein_affine_linearity", ps, r_affine, 1e-12),
  };
  if (n >= 4) {
    suite.checks.push_back(residual_record("sigma1_abar", ps, r_abar1, tol));
    suite.checks.push_back(residual_record("sigma2_abar", ps, r_abar2, tol));
  }
  if (n == 4)
    suite.checks.push_back(residual_record("sigma2_ein3_36_sigma2_A", ps, r_36, tol));
  return suite;
}

CheckRecord run_gamma2_equiv_check(int dim, int samples, std::uint64_t seed) {
  const int n = dim;
  if (n < 4) throw std::invalid_argument("gamma2 equivalence: dim must be >= 4");
  PointSampler sampler(seed);
  const double k = 2.0 * n * (n - 1.0) / (3.0 * n - 4.0);
  return equivalence_record(
      "gamma2_A_iff_gamma2_eink", fmt("n=%d k=%.6g samples=%d", n, k, samples), samples,
      [&] { return sampler.consistent_biased(n); },
      [&](const PointData& p) { return banded_gamma2(schouten(p), p.g); },
      [&](const PointData& p) { return banded_gamma2(ein_k(p, k), p.g); });
}

SuiteResult run_implication_suite(int dim, int samples, std::uint64_t seed) {
  const int n = dim;
  if (n < 3) throw std::invalid_argument("implication suite: dim must be >= 3");
  PointSampler sampler(seed);
  auto& rng = sampler.rng();
  const std::string ps = fmt("n=%d samples=%d", n, samples);

  SuiteResult suite{"implications", {}};

  // (n-k)-positive Ricci <-> k-positive Ein_k, integer k.
  suite.checks.push_back(equivalence_record(
      "k_positive_ricci_equiv", ps, samples,
      [&] {
        return std::pair(sampler.consistent_biased(n), uniform_int(rng, 1, n - 1));
      },
      [&](const auto& d) { return banded_ksum(ein_k(d.first, d.second), d.first.g, d.second); },
      [&](const auto& d) { return banded_ksum({d.first.ric}, d.first.g, n - d.second); }));

  // Ein_k > 0 (integer k) forces at least k+1 positive Ricci eigenvalues.
  suite.checks.push_back(implication_record(
      "number_pos_eigen", ps, samples,
      [&] {
        const int k = uniform_int(rng, 0, n - 1);
        const double eta = uniform(rng, 0.005, eta_cap_for(n, k));
        return std::pair(sampler.near_einstein(n, eta), k);
      },
      [&](const auto& d) { return banded_pd(ein_k(d.first, d.second), d.first.g); },
      [&](const auto& d) -> std::optional<bool> {
        const VecXd rho = spectrum_rel({d.first.ric}, d.first.g);
        int pos = 0;
        for (int i = 0; i < n; ++i) {
          if (std::abs(rho[i]) <= kSignTol) return std::nullopt;
          if (rho[i] > 0.0) ++pos;
        }
        return pos >= d.second + 1;
      }));

  // Heredity, 0 < k < l < n.
  suite.checks.push_back(implication_record(
      "heredity_positive_k", ps, samples,
      [&] {
        const double l = uniform(rng, 0.3, n - 0.1);
        const double k = uniform(rng, 0.05, l - 0.02);
        const double eta = uniform(rng, 0.005, eta_cap_for(n, l));
        return std::tuple(sampler.near_einstein(n, eta), k, l);
      },
      [&](const auto& d) { return banded_pd(ein_k(std::get<0>(d), std::get<2>(d)), std::get<0>(d).g); },
      [&](const auto& d) -> std::optional<bool> {
        const auto& p = std::get<0>(d);
        const auto ek = banded_pd(ein_k(p, std::get<1>(d)), p.g);
        const auto sc = banded(p.scal);
        if (!ek || !sc) return std::nullopt;
        return *ek && *sc;
      }));

  // Mirror heredity, k < l < 0.
  suite.checks.push_back(implication_record(
      "heredity_negative_k", ps, samples,
      [&] {
        const double l = uniform(rng, -2.5, -0.1);
        const double k = l - uniform(rng, 0.05, 2.5);
        return std::tuple(sampler.consistent_biased(n), k, l);
      },
      [&](const auto& d) { return banded_pd(ein_k(std::get<0>(d), std::get<1>(d)), std::get<0>(d).g); },
      [&](const auto& d) -> std::optional<bool> {
        const auto& p = std::get<0>(d);
        const auto el = banded_pd(ein_k(p, std::get<2>(d)), p.g);
        const auto sc = banded(p.scal);
        if (!el || !sc) return std::nullopt;
        return *el && *sc;
      }));

  // Ein_k > 0 for n-2 <= k < n implies Ein_{-k} > 0.
  suite.checks.push_back(implication_record(
      "ein_k_implies_ein_minus_k", ps, samples,
      [&] {
        const double k = uniform(rng, n - 2.0, n - 0.05);
        const double eta = uniform(rng, 0.005, eta_cap_for(n, k));
        return std::pair(sampler.near_einstein(n, eta), k);
      },
      [&](const auto& d) { return banded_pd(ein_k(d.first, d.second), d.first.g); },
      [&](const auto& d) { return banded_pd(ein_k(d.first, -d.second), d.first.g); }));

  // Top tensor chain: Ein_{n-1} > 0 implies Gamma_2(B) > 0 (and Gamma_2(A) for n >= 4).
  suite.checks.push_back(implication_record(
      "top_ein_gamma2_chain", ps, samples,
      [&] {
        const double eta = uniform(rng, 0.005, eta_cap_for(n, n - 1.0));
        return sampler.near_einstein(n, eta);
      },
      [&](const PointData& p) { return banded_pd(ein_k(p, n - 1.0), p.g); },
      [&](const PointData& p) -> std::optional<bool> {
        const auto gb = banded_gamma2(ein_k(p, n - 1.0), p.g);
        if (!gb) return std::nullopt;
        bool ok = *gb;
        if (n >= 4) {
          const auto ga = banded_gamma2(schouten(p), p.g);
          if (!ga) return std::nullopt;
          ok = ok && *ga;
        }
        return ok;
      }));

  // Gamma_2(B) > 0 implies positive Ricci and positive Ein_{n/2}.
  suite.checks.push_back(implication_record(
      "gamma2_b_newton_consequences", ps, samples,
      [&] { return sampler.near_einstein(n, uniform(rng, 0.01, 0.35)); },
      [&](const PointData& p) { return banded_gamma2(ein_k(p, n - 1.0), p.g); },
      [&](const PointData& p) -> std::optional<bool> {
        const auto ric_pos = banded_pd({p.ric}, p.g);
        const auto half = banded_pd(ein_k(p, 0.5 * n), p.g);
        const auto t1b = banded_pd(newton_t1(ein_k(p, n - 1.0), p.g), p.g);
        if (!ric_pos || !half || !t1b) return std::nullopt;
        return *ric_pos && *half && *t1b;
      }));

  // Gamma_2(A) formula: Scal > 0 and (n/4) Scal^2 > (n-1)|Ric|^2.
  suite.checks.push_back(equivalence_record(
      "gamma2_A_formula", ps, samples,
      [&] { return sampler.consistent_biased(n); },
      [&](const PointData& p) { return banded_gamma2(schouten(p), p.g); },
      [&](const PointData& p) -> std::optional<bool> {
        const auto sc = banded(p.scal);
        if (!sc) return std::nullopt;
        if (!*sc) return false;
        return banded(0.25 * n * p.scal * p.scal - (n - 1.0) * norm_sq_rel(p.ric, p.g));
      }));

  if (n >= 4) {
    suite.checks.push_back(run_gamma2_equiv_check(n, samples, seed ^ 0x9d2c5680u));

    // Ein_k > 0 at k = 2(n-1)^2/(2n-3) implies a positive Schouten tensor.
    const double ka = 2.0 * (n - 1.0) * (n - 1.0) / (2.0 * n - 3.0);
    suite.checks.push_back(implication_record(
        "eink_implies_schouten_positive", fmt("n=%d k=%.6g samples=%d", n, ka, samples),
        samples,
        [&] {
          const double eta = uniform(rng, 0.002, eta_cap_for(n, ka));
          return sampler.near_einstein(n, eta);
        },
        [&, ka](const PointData& p) { return banded_pd(ein_k(p, ka), p.g); },
        [&](const PointData& p) { return banded_pd(schouten(p), p.g); }));
  }

  // Appendix directions.
  suite.checks.push_back(implication_record(
      "ein_top_implies_sch", ps, samples,
      [&] {
        const double k = uniform(rng, n - 1.0, n - 0.02);
        const double eta = uniform(rng, 0.002, eta_cap_for(n, k));
        return std::pair(sampler.near_einstein(n, eta), k);
      },
      [&](const auto& d) { return banded_pd(ein_k(d.first, d.second), d.first.g); },
      [&](const auto& d) {
        const double m = 1.0 - (n - 1.0) / d.second;
        return banded_pd(sch_k(d.first, m), d.first.g);
      }));

  suite.checks.push_back(implication_record(
      "sch_implies_ein", ps, samples,
      [&] {
        const double k = uniform(rng, 1.0, n - 0.05);
        return std::pair(sampler.consistent_biased(n), k);
      },
      [&](const auto& d) {
        const double m = (d.second - 1.0) / (d.second * (n - 1.0));
        return banded_pd(sch_k(d.first, m), d.first.g);
      },
      [&](const auto& d) { return banded_pd(ein_k(d.first, d.second), d.first.g); }));

  // Sch_k > 0 <-> Ein_{1/k} > 0 for k < 0 (exact rescaling).
  suite.checks.push_back(equivalence_record(
      "sch_ein_equivalence_negative_k", ps, samples,
      [&] {
        const double k = uniform(rng, -4.0, -0.1);
        return std::pair(sampler.consistent_biased(n), k);
      },
      [&](const auto& d) { return banded_pd(sch_k(d.first, d.second), d.first.g); },
      [&](const auto& d) { return banded_pd(ein_k(d.first, 1.0 / d.second), d.first.g); }));

  return suite;
}

SuiteResult run_cone_suite() {
  SuiteResult suite{"cone", {}};
  long cases = 0, mismatches = 0;
  const int n = 10;
  for (int q = 2; q <= 10; ++q) {
    for (double k = -3.0; k <= 8.5 + 1e-12; k += 0.5) {
      const auto [sphere_eig, flat_eig] = cylinder_model_eigs(q, n, k);
      const bool positive = sphere_eig > 0.0 && flat_eig > 0.0;
      const bool predicted = q > 2 && q > k + 1.0;
      ++cases;
      if (positive != predicted) ++mismatches;
    }
  }
  CheckRecord r{"cylinder_positive_iff_q_gt_kp1", "q=2..10 k=-3..8.5 step 0.5",
                static_cast<double>(cases), static_cast<double>(cases),
                static_cast<double>(mismatches), mismatches == 0};
  suite.checks.push_back(r);
  return suite;
}

SuiteResult run_mkl_suite(int kmax) {
  SuiteResult suite{"mkl", {}};
  long cases = 0, mismatches = 0;
  for (int k = 0; k <= kmax; ++k)
    for (int l = 0; l <= kmax; ++l) {
      const bool admissible = mkl_admissible(k, l);
      const bool excluded = (k >= 5 * l + 4) || (l >= 5 * k + 4);
      ++cases;
      if (admissible != !excluded) ++mismatches;
    }
  CheckRecord r{"mkl_admissible_exclusion", fmt("0<=k,l<=%d", kmax),
                static_cast<double>(cases), static_cast<double>(cases),
                static_cast<double>(mismatches), mismatches == 0};
  suite.checks.push_back(r);
  return suite;
}

SuiteResult run_gauss_bonnet_suite(int grid) {
  SuiteResult suite{"gauss-bonnet", {}};

  const MetricField s4 = make_sphere_chart(4, 1.0);
  const GridSample s4_grid = make_quadrature_grid(s4.chart, grid);
  const SignatureReport s4_rep = signature_bound_report(s4, s4_grid);
  suite.checks.push_back({"chi_s4", fmt("grid=%d", grid), s4_rep.chi, 2.0,
                          std::abs(s4_rep.chi - 2.0), std::abs(s4_rep.chi - 2.0) < 1e-2});

  const MetricField t4 = make_torus_chart(4);
  const SignatureReport t4_rep =
      signature_bound_report(t4, make_quadrature_grid(t4.chart, grid));
  suite.checks.push_back({"chi_t4", fmt("grid=%d", grid), t4_rep.chi, 0.0,
                          std::abs(t4_rep.chi), std::abs(t4_rep.chi) < 1e-2});

  const FamilyInstance s2s2 = make_family(
      {Family::product, {{"p", 2}, {"lambda", 1}, {"q", 2}, {"mu", 1}}});
  const SignatureReport ss_rep =
      signature_bound_report(*s2s2.field, make_quadrature_grid(s2s2.field->chart, grid));
  suite.checks.push_back({"chi_s2xs2", fmt("grid=%d", grid), ss_rep.chi, 4.0,
                          std::abs(ss_rep.chi - 4.0), std::abs(ss_rep.chi - 4.0) < 1e-2});

  // Pointwise Weyl norm on S^2 x S^2 pins the contraction convention.
  VecXd x(4);
  x << 1.1, 0.7, 1.9, 2.3;
  const double w = weyl_norm_sq(curvature_at(*s2s2.field, x));
  suite.checks.push_back({"weyl_norm_s2xs2", "pointwise", w, 4.0 / 3.0,
                          std::abs(w - 4.0 / 3.0), std::abs(w - 4.0 / 3.0) < 1e-3});

  // p1 bounds: zero Weyl for S4 and T4, 64 pi^2/3 for S2xS2.
  suite.checks.push_back({"p1_bound_s4", "p1=0", s4_rep.p1_bound, 0.0, s4_rep.p1_bound,
                          std::abs(s4_rep.p1_bound) < 1e-6});
  suite.checks.push_back({"p1_bound_t4", "p1=0", t4_rep.p1_bound, 0.0, t4_rep.p1_bound,
                          std::abs(t4_rep.p1_bound) < 1e-6});
  const double w_expected = 64.0 * kPi * kPi / 3.0;
  suite.checks.push_back({"weyl_integral_s2xs2", "64pi^2/3", ss_rep.weyl_integral,
                          w_expected, rel_err(ss_rep.weyl_integral, w_expected),
                          rel_err(ss_rep.weyl_integral, w_expected) < 1e-3});

  // |R|^2 closure on the round 4-sphere (curvature-operator normalization).
  const double lhs = integrate_curvature(
      s4, s4_grid, [](const CurvatureData& c) { return riemann_norm_sq_op(c); });
  const double tracefree = integrate_curvature(s4, s4_grid, [](const CurvatureData& c) {
    return norm_sq_rel(c.ricci, c.g) - 0.25 * c.scal * c.scal;
  });
  const double rhs = 8.0 * kPi * kPi * s4_rep.chi + tracefree;
  suite.checks.push_back({"riemann_sq_closure_s4", fmt("grid=%d", grid), lhs, rhs,
                          rel_err(lhs, rhs), rel_err(lhs, rhs) < 1e-8});
  return suite;
}

SuiteResult run_gradient_suite(const std::vector<double>& ks, int grid,
                               std::uint64_t seed) {
  SuiteResult suite{"gradient", {}};
  const int n = 3;
  const MetricField base = make_bump_torus(n, 0.2);
  std::mt19937_64 rng(seed);
  const TensorField h = make_random_periodic_field(n, rng, 0.3, 3);
  const PerturbedFamily pf = make_perturbed_family(base, h, 0.01);
  const GridSample qgrid = make_quadrature_grid(base.chart, grid);

  // alpha map: strictly decreasing, below 1/n.
  std::vector<double> sorted = ks;
  std::sort(sorted.begin(), sorted.end());
  double worst = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double a = gradient_alpha(sorted[i], n);
    if (a >= 1.0 / n) worst = std::max(worst, a - 1.0 / n + 1.0);
    if (i > 0) {
      const double prev = gradient_alpha(sorted[i - 1], n);
      if (a >= prev) worst = std::max(worst, a - prev + 1.0);
    }
  }
  suite.checks.push_back(
      {"alpha_map_decreasing_below_1_over_n", fmt("n=%d", n), worst, 0.0, worst,
       worst == 0.0});

  double fd_magnitude = 0.0;
  for (double k : ks) {
    const GradientCheckResult res = gradient_check(pf, k, qgrid);
    fd_magnitude = std::abs(res.derivative);
    suite.checks.push_back({"gradient_identity",
                            fmt("k=%.3g alpha=%.6g grid=%d", k, res.alpha, grid),
                            res.derivative, res.pairing, res.residual,
                            res.residual < 1e-4});
  }
  // The directional derivative must be genuinely nonzero or the identity test
  // would pass vacuously.
  suite.checks.push_back({"gradient_nondegenerate", fmt("grid=%d", grid), fd_magnitude,
                          0.0, fd_magnitude, fd_magnitude > 1e-7});

  // Unperturbed flat torus: both sides vanish.
  const MetricField flat = make_torus_chart(n);
  const PerturbedFamily pf_flat = make_perturbed_family(flat, h, 0.01);
  const GradientCheckResult degenerate =
      gradient_check(pf_flat, 2.0, make_quadrature_grid(flat.chart, 16));
  const double mag = std::max(std::abs(degenerate.derivative), std::abs(degenerate.pairing));
  suite.checks.push_back({"gradient_flat_degenerate", "k=2", degenerate.derivative,
                          degenerate.pairing, mag, mag < 1e-8});
  return suite;
}

SuiteResult run_tube_suite(int grid) {
  SuiteResult suite{"tube", {}};

  auto hyp_deficit = [&](double r) {
    const TubeVolumeReport rep = tube_volume({TubeAmbient::sphere3, 1.0, r}, grid);
    return std::pair(rep, rep.hyp_flat - rep.hyp_numeric);
  };

  for (double r : {0.3, 0.2, 0.1}) {
    const auto [rep, deficit] = hyp_deficit(r);
    suite.checks.push_back({"s3_tube_deficit_positive", fmt("r=%.2g", r), rep.hyp_numeric,
                            rep.hyp_flat, deficit, deficit > 0.0});
    suite.checks.push_back({"s3_solid_deficit_positive", fmt("r=%.2g", r),
                            rep.solid_numeric, rep.solid_flat,
                            rep.solid_flat - rep.solid_numeric,
                            rep.solid_flat - rep.solid_numeric > 0.0});

    const auto [rep_half, deficit_half] = hyp_deficit(0.5 * r);
    const double c1 = deficit / (r * r * r);
    const double c2 = deficit_half / (0.125 * r * r * r);
    const double ratio = c1 / c2;
    suite.checks.push_back({"s3_deficit_r3_stability", fmt("r=%.2g vs %.2g", r, 0.5 * r),
                            c1, c2, std::abs(ratio - 1.0),
                            ratio > 0.8 && ratio < 1.25});

    // Hotelling coefficient: reported, not gated (tube measure convention).
    const double predicted_deficit = rep.hyp_flat - rep.hotelling_prediction;
    suite.checks.push_back({"s3_hotelling_coefficient_report", fmt("r=%.2g", r),
                            deficit / (r * r * r), predicted_deficit / (r * r * r), 0.0,
                            true});
  }

  {
    const TubeVolumeReport flat = tube_volume({TubeAmbient::flat3, 1.0, 0.2}, grid);
    const double e1 = rel_err(flat.hyp_numeric, flat.hyp_flat);
    const double e2 = rel_err(flat.solid_numeric, flat.solid_flat);
    suite.checks.push_back({"flat_tube_exact", "r=0.2", flat.hyp_numeric, flat.hyp_flat,
                            std::max(e1, e2), std::max(e1, e2) < 1e-10});
  }

  std::vector<double> scal_deficits;
  for (double r : {0.1, 0.05, 0.025}) {
    const TubeScalarReport rep = tube_total_scalar({TubeAmbient::sphere5, 1.0, r}, 16);
    const double deficit = rep.flat_reference - rep.numeric;
    scal_deficits.push_back(deficit);
    if (r > 0.03)
      suite.checks.push_back({"s5_totalscal_deficit_positive", fmt("r=%.3g", r),
                              rep.numeric, rep.flat_reference, deficit, deficit > 0.0});
  }
  for (std::size_t i = 0; i + 1 < scal_deficits.size(); ++i) {
    const double ratio = scal_deficits[i] / (8.0 * scal_deficits[i + 1]);
    suite.checks.push_back({"s5_totalscal_r3_scaling", fmt("pair=%zu", i), ratio, 1.0,
                            std::abs(ratio - 1.0), ratio > 0.8 && ratio < 1.25});
  }
  return suite;
}

namespace {

double berger_expected_upper(int bn, double t) {
  const double top = 2.0 * bn + 2.0;
  if (t >= top) return 0.0;
  if (t >= 1.0) return top / t - 1.0;
  return bn * (1.0 + top / (top - 2.0 * t));
}

ExtendedReal berger_expected_lower(int bn, double t) {
  const double top = 2.0 * bn + 2.0;
  if (t >= top) return ExtendedReal(0.0);
  if (t > bn + 1.0) return ExtendedReal(bn * (1.0 + top / (top - 2.0 * t)));
  return ExtendedReal::neg_infinity();
}

}  // namespace

SuiteResult run_berger_suite(const std::vector<double>& ts, bool with_numeric, int grid) {
  SuiteResult suite{"berger", {}};
  for (int bn : {1, 2}) {
    for (double t : ts) {
      const ReferenceData ref = make_family({Family::berger, {{"n", double(bn)}, {"t", t}}}).ref;
      const double up = ref.ein_upper();
      const ExtendedReal low = ref.ein_lower();
      const double up_exp = berger_expected_upper(bn, t);
      const ExtendedReal low_exp = berger_expected_lower(bn, t);
      suite.checks.push_back({"berger_closed_upper", fmt("n=%d t=%.4g", bn, t), up,
                              up_exp, std::abs(up - up_exp),
                              std::abs(up - up_exp) < 1e-12});
      double lres = 0.0;
      bool lpass;
      if (low_exp.is_neg_inf()) {
        lpass = low.is_neg_inf();
      } else {
        lpass = !low.is_neg_inf() && std::abs(low.value() - low_exp.value()) < 1e-12;
        if (!low.is_neg_inf()) lres = std::abs(low.value() - low_exp.value());
      }
      suite.checks.push_back({"berger_closed_lower", fmt("n=%d t=%.4g", bn, t),
                              low.is_neg_inf() ? -1e300 : low.value(),
                              low_exp.is_neg_inf() ? -1e300 : low_exp.value(), lres,
                              lpass});
    }
  }

  if (with_numeric) {
    for (double t : ts) {
      const MetricField field = canonical_variation_s3(t);
      const InvariantReport rep =
          invariant_report(field, make_scan_grid(field.chart, grid), false);
      const double up_exp = berger_expected_upper(1, t);
      const ExtendedReal low_exp = berger_expected_lower(1, t);
      suite.checks.push_back({"berger_chart_upper", fmt("t=%.4g grid=%d", t, grid),
                              rep.ein_upper, up_exp, std::abs(rep.ein_upper - up_exp),
                              std::abs(rep.ein_upper - up_exp) < 1e-3});
      bool lpass;
      double lres = 0.0;
      if (low_exp.is_neg_inf()) {
        lpass = rep.ein_lower.is_neg_inf();
      } else {
        lpass = !rep.ein_lower.is_neg_inf() &&
                std::abs(rep.ein_lower.value() - low_exp.value()) < 1e-3;
        if (!rep.ein_lower.is_neg_inf())
          lres = std::abs(rep.ein_lower.value() - low_exp.value());
      }
      suite.checks.push_back({"berger_chart_lower", fmt("t=%.4g grid=%d", t, grid),
                              rep.ein_lower.is_neg_inf() ? -1e300 : rep.ein_lower.value(),
                              low_exp.is_neg_inf() ? -1e300 : low_exp.value(), lres,
                              lpass});
    }
  }

  // Positive Ricci without positive Ein_k: the (t, k) window.
  for (int bn : {1, 2}) {
    long cases = 0, mismatches = 0;
    for (double k = 1.25; k < 2.0 * bn + 1.0; k += 0.5) {
      const double lo = 2.0 * (bn + 1.0) / (k + 1.0);
      const double hi = bn + 1.0;
      if (lo >= hi) continue;
      const double t = 0.5 * (lo + hi);
      const ReferenceData ref =
          make_family({Family::berger, {{"n", double(bn)}, {"t", t}}}).ref;
      double rho_min = 1e300;
      for (const auto& e : ref.ric_spectrum) rho_min = std::min(rho_min, e.value);
      ++cases;
      if (!(rho_min > 0.0 && ref.ein_min_eig(k) <= 0.0)) ++mismatches;
    }
    suite.checks.push_back({"berger_ricci_positive_ein_not", fmt("n=%d", bn),
                            static_cast<double>(cases), static_cast<double>(cases),
                            static_cast<double>(mismatches), mismatches == 0});
  }
  return suite;
}

SuiteResult run_sphere_extremality_suite() {
  SuiteResult suite{"spheres", {}};
  for (int n = 2; n <= 5; ++n) {
    const ReferenceData ref = make_family({Family::sphere, {{"n", double(n)}}}).ref;
    const double up = ref.ein_upper();
    suite.checks.push_back({"sphere_closed_ein_upper", fmt("n=%d", n), up, double(n),
                            std::abs(up - n), std::abs(up - n) < 1e-6});
    suite.checks.push_back({"sphere_closed_ein_lower_neg_inf", fmt("n=%d", n), 0.0, 0.0,
                            0.0, ref.ein_lower().is_neg_inf()});
  }
  const int scan_for_dim[] = {0, 0, 24, 16, 10, 6};
  for (int n = 2; n <= 5; ++n) {
    const MetricField field = make_sphere_chart(n, 1.0);
    const InvariantReport rep =
        invariant_report(field, make_scan_grid(field.chart, scan_for_dim[n]), false);
    suite.checks.push_back({"sphere_chart_ein_upper", fmt("n=%d grid=%d", n, scan_for_dim[n]),
                            rep.ein_upper, double(n), std::abs(rep.ein_upper - n),
                            std::abs(rep.ein_upper - n) < 1e-3});
    suite.checks.push_back({"sphere_chart_ein_lower_neg_inf", fmt("n=%d", n), 0.0, 0.0,
                            0.0, rep.ein_lower.is_neg_inf()});
  }
  return suite;
}

SuiteResult run_families_suite(std::uint64_t seed) {
  SuiteResult suite{"families", {}};
  std::mt19937_64 rng(seed);

  std::vector<FamilyDescriptor> descriptors = {
      {Family::sphere, {{"n", 2}, {"radius", 1}}},
      {Family::sphere, {{"n", 2}, {"radius", 0.5}}},
      {Family::sphere, {{"n", 3}, {"radius", 1}}},
      {Family::sphere, {{"n", 4}, {"radius", 1}}},
      {Family::sphere, {{"n", 5}, {"radius", 1}}},
      {Family::torus, {{"n", 3}}},
      {Family::hyperbolic, {{"n", 3}}},
      {Family::berger, {{"n", 1}, {"t", 0.5}}},
      {Family::berger, {{"n", 1}, {"t", 1}}},
      {Family::berger, {{"n", 1}, {"t", 2}}},
      {Family::berger, {{"n", 1}, {"t", 3}}},
      {Family::product, {{"p", 2}, {"lambda", 0.5}, {"q", 2}}},
      {Family::product, {{"p", 2}, {"lambda", 1}, {"q", 2}, {"mu", 1}}},
  };

  for (const auto& d : descriptors) {
    const FamilyInstance inst = make_family(d);
    if (!inst.field) continue;
    const int n = inst.field->chart.dim();
    VecXd expected(n);
    int at = 0;
    for (const auto& e : inst.ref.ric_spectrum)
      for (int i = 0; i < e.mult; ++i) expected[at++] = e.value;
    std::sort(expected.data(), expected.data() + n);

    double worst_spec = 0.0, worst_scal = 0.0, worst_consistency = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      VecXd x(n);
      for (int i = 0; i < n; ++i) {
        const auto& ax = inst.field->chart.axes[i];
        // Stay clear of pole margins, as the scan lattices do.
        const double inset = ax.periodic ? 0.0 : 0.05 * ax.length();
        x[i] = uniform(rng, ax.lo + inset, ax.hi - inset);
      }
      const CurvatureData c = curvature_at(*inst.field, x);
      const VecXd rho = spectrum_rel({c.ricci}, c.g);
      for (int i = 0; i < n; ++i)
        worst_spec = std::max(worst_spec, std::abs(rho[i] - expected[i]));
      worst_scal = std::max(worst_scal, rel_err(c.scal, inst.ref.scal));
      worst_consistency =
          std::max(worst_consistency, rel_err(c.scal, trace_rel(c.ricci, c.g)));
    }
    const std::string ps =
        fmt("%s dim=%d", family_name(d.name), inst.ref.dim);
    suite.checks.push_back(residual_record("family_ricci_spectrum", ps, worst_spec, 1e-3));
    suite.checks.push_back(residual_record("family_scal", ps, worst_scal, 1e-3));
    suite.checks.push_back(
        residual_record("family_scal_trace_consistency", ps, worst_consistency, 1e-10));
  }
  return suite;
}

std::vector<SuiteResult> run_suites(const std::string& name, int dim, int samples,
                                    std::uint64_t seed, int grid) {
  std::vector<SuiteResult> out;
  const std::vector<int> dims = dim > 0 ? std::vector<int>{dim}
                                        : std::vector<int>{3, 4, 5, 6};
  const bool all = name == "all";
  bool known = all;
  if (all || name == "identities") {
    known = true;
    for (int n : dims) out.push_back(run_identity_suite(n, samples, seed));
  }
  if (all || name == "implications") {
    known = true;
    for (int n : dims) out.push_back(run_implication_suite(n, samples, seed));
  }
  if (all || name == "cone") known = true, out.push_back(run_cone_suite());
  if (all || name == "mkl") known = true, out.push_back(run_mkl_suite());
  if (all || name == "gauss-bonnet")
    known = true, out.push_back(run_gauss_bonnet_suite(grid));
  if (all || name == "gradient")
    known = true,
    out.push_back(run_gradient_suite({0.5, 1.0, 1.5, 2.0, 2.5}, grid, seed));
  if (all || name == "tube") known = true, out.push_back(run_tube_suite(grid));
  if (all || name == "berger")
    known = true,
    out.push_back(run_berger_suite({0.25, 0.5, 1, 1.5, 2, 3, 3.9, 4, 5}, true, 24));
  if (all || name == "spheres")
    known = true, out.push_back(run_sphere_extremality_suite());
  if (all || name == "families") known = true, out.push_back(run_families_suite(seed));
  if (!known) throw std::invalid_argument("unknown suite '" + name + "'");
  return out;
}

}  // namespace eink
