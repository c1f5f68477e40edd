#pragma once

#include <vector>

#include "eink/field.hpp"
#include "eink/tensors.hpp"

namespace eink {

/// Rank-4 tensor in chart indices, flat storage.
struct Tensor4 {
  int n = 0;
  std::vector<double> v;

  void resize(int dim) {
    n = dim;
    v.assign(static_cast<std::size_t>(n) * n * n * n, 0.0);
  }
  double& at(int i, int j, int k, int l) { return v[((i * n + j) * n + k) * n + l]; }
  double at(int i, int j, int k, int l) const { return v[((i * n + j) * n + k) * n + l]; }
};

/// Pointwise curvature of a metric field. Conventions:
///   Gamma^i_jk = g^im (d_j g_mk + d_k g_mj - d_m g_jk) / 2
///   R^i_jkl    = d_k Gamma^i_lj - d_l Gamma^i_kj + Gamma^i_km Gamma^m_lj
///                                                - Gamma^i_lm Gamma^m_kj
///   R_ijkl     = g_im R^m_jkl,  Ric_jl = R^i_jil,  Scal = g^jl Ric_jl
/// so round spheres come out with positive scalar curvature. The Weyl part is the
/// Schouten-traced remainder R - g (kn) A; it is stored as zero for n < 4.
struct CurvatureData {
  int n = 0;
  MatXd g;
  MatXd ginv;
  std::vector<double> gamma;  // [(i*n + j)*n + k] = Gamma^i_jk
  Tensor4 riemann;            // fully lowered
  MatXd ricci;
  double scal = 0.0;
  Tensor4 weyl;

  double christoffel(int i, int j, int k) const { return gamma[(i * n + j) * n + k]; }
};

CurvatureData curvature_at(const MetricField& field, const VecXd& x);

/// T_ijkl T^ijkl with indices raised by the given inverse metric.
double tensor4_norm_sq(const Tensor4& t, const MatXd& ginv);

/// Squared Weyl norm in the curvature-operator normalization, a quarter of the
/// component contraction W_ijkl W^ijkl. This is the convention under which the
/// 4-dimensional Euler integrand is |W|^2 + sigma_2(Ein_3)/9 (round S^2 x S^2
/// calibrates to 4/3). Requires n >= 4.
double weyl_norm_sq(const CurvatureData& c, const MatXd& g);
double weyl_norm_sq(const CurvatureData& c);  // uses the stored g^-1

/// The (g, Ric, Scal) triple of a curvature evaluation.
PointData point_data(const CurvatureData& c);

}  // namespace eink
