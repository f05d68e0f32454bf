#pragma once

#include <Eigen/Core>

#include "srgeo/types.hpp"

namespace srgeo {

/// Element (α, β) of SU(2), |α|^2 + |β|^2 = 1.
struct Su2Point
{
  double alpha_re, alpha_im, beta_re, beta_im;

  [[nodiscard]] Eigen::Vector4d coords() const { return {alpha_re, alpha_im, beta_re, beta_im}; }
};

/// λ0 = u0 X1 + v0 X2 + w0 X0.
struct Su2Covector
{
  double u0 = 0.0, v0 = 0.0, w0 = 0.0;

  [[nodiscard]] Eigen::Vector3d vec() const { return {u0, v0, w0}; }
  [[nodiscard]] double norm() const { return vec().norm(); }
  [[nodiscard]] double two_h() const { return u0 * u0 + v0 * v0; }
};

struct Su2State
{
  Su2Point point;
  double u, v, w;
};

struct Su2Strata
{
  double f0;
  double f1;
};

struct Su2Gradients
{
  Eigen::Vector3d df0;
  Eigen::Vector3d df1;
};

/// Geodesic from the identity at time t.
Su2State su2_exp(const Su2Covector & cov, double t);

/// Jacobi field (p_a, p_b, p_c, x_a, x_b, x_c) at time t. Throws DegenerateCovector if |λ0| = 0.
JacobiCoords su2_jacobi(const Su2Covector & cov, const JacobiCoords & init, double t);

/// M_L; its nullspace gives the kernel in the frame (E_a, E_b, E_c)(0). Throws if L = 0.
Eigen::Matrix3d su2_conj_matrix(double L);

/// f0 = L cos(L/2) - 2 sin(L/2), f1 = sin(L/2). Throws DegenerateCovector if H = 0.
Su2Strata su2_conj_f(const Su2Covector & cov);

Su2Gradients su2_conj_grad(const Su2Covector & cov);

/// Unit kernel of d exp in (∂u, ∂v, ∂w); largest component made positive. Throws NotConjugate.
Eigen::Vector3d su2_kernel(const Su2Covector & cov, double tol = 1e-7);

/// Columns E_a(0), E_b(0), E_c(0) expressed in (∂u, ∂v, ∂w).
Eigen::Matrix3d su2_frame(const Su2Covector & cov);

/// Chart id 0..3: the coordinate of (Re α, Im α, Re β, Im β) that is dropped.
int su2_chart(const Su2Point & p);

Eigen::Vector3d su2_chart_coords(const Su2Point & p, int chart);

}  // namespace srgeo
