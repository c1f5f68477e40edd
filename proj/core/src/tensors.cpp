#include "eink/tensors.hpp"

#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace eink {

double trace_rel(const MatXd& h, const MatXd& g) {
  return g.llt().solve(h).trace();
}

double norm_sq_rel(const MatXd& h, const MatXd& g) {
  const MatXd a = g.llt().solve(h);
  return (a * a).trace();
}

SymBilinear ein_k(const PointData& p, double k) {
  return {p.scal * p.g - k * p.ric};
}

SymBilinear sch_k(const PointData& p, double k) {
  return {p.ric - k * p.scal * p.g};
}

SymBilinear schouten(const PointData& p) {
  const int n = p.dim();
  if (n < 3) throw std::invalid_argument("schouten: requires dim >= 3");
  return {(p.ric - p.scal / (2.0 * (n - 1)) * p.g) / (n - 2)};
}

SymBilinear aux_bbar(const PointData& p) {
  const int n = p.dim();
  if (n < 3) throw std::invalid_argument("aux_bbar: requires dim >= 3");
  return {(2.0 - n) / n * p.scal * p.g + (n - 1.0) * p.ric};
}

SymBilinear aux_abar(const PointData& p) {
  const int n = p.dim();
  if (n < 4) throw std::invalid_argument("aux_abar: requires dim >= 4");
  const double k = 2.0 * n * (n - 1.0) / (3.0 * n - 4.0);
  const double c = (3.0 * n - 4.0) / (2.0 * n * (n - 1.0) * (n - 2.0));
  return {c * (p.scal * p.g - k * p.ric)};
}

VecXd spectrum_rel(const SymBilinear& h, const MatXd& g) {
  Eigen::LLT<MatXd> llt(g);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("spectrum_rel: g not positive definite");
  Eigen::GeneralizedSelfAdjointEigenSolver<MatXd> es(h.m, g,
                                                     Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
  return es.eigenvalues();  // ascending
}

bool k_positive(const SymBilinear& h, const MatXd& g, int k) {
  const int n = h.dim();
  if (k < 1 || k > n) throw std::invalid_argument("k_positive: k out of range");
  const VecXd nu = spectrum_rel(h, g);
  return nu.head(k).sum() > 0.0;
}

bool positive_definite(const SymBilinear& h, const MatXd& g) {
  return spectrum_rel(h, g).minCoeff() > kSignTol;
}

SymBilinear newton_t1(const SymBilinear& h, const MatXd& g) {
  return {trace_rel(h.m, g) * g - h.m};
}

double sigma_i(const SymBilinear& h, const MatXd& g, int i) {
  const MatXd a = g.llt().solve(h.m);
  const double s1 = a.trace();
  if (i == 1) return s1;
  if (i == 2) return 0.5 * (s1 * s1 - (a * a).trace());
  throw std::invalid_argument("sigma_i: only i = 1, 2 are defined");
}

bool gamma2_positive(const SymBilinear& h, const MatXd& g) {
  return sigma_i(h, g, 1) > 0.0 && sigma_i(h, g, 2) > 0.0;
}

}  // namespace eink
