#pragma once

#include <Eigen/Core>

#include "srgeo/types.hpp"

namespace srgeo {

struct GrushinBase
{
  double alpha = 1.0;
  double x0 = 0.0;
  double y0 = 0.0;
};

/// λ0 = u0 dx + v0 dy.
struct GrushinCovector
{
  double u0 = 0.0;
  double v0 = 0.0;
};

struct GrushinState
{
  double x, y, u, v;
};

/// x0 = A sin_α(φ), u0 = A ω cos_α(φ).
struct GrushinAmplitude
{
  double A;
  double omega;
  double phi;
};

struct GrushinJacobiCoeffs
{
  double k1, k2, k3;
};

/// Partial derivatives of (x, u)(t) with respect to the initial data.
struct GrushinPartials
{
  double dx_du0, dx_dv0;
  double du_du0, du_dv0;
};

/// 2H = u0^2 + v0^2 |x0|^{2α}.
double grushin_two_h(const GrushinBase & base, const GrushinCovector & cov);

/// Throws DegenerateCovector when v0 = 0 or H = 0.
GrushinAmplitude grushin_amplitude(const GrushinBase & base, const GrushinCovector & cov);

GrushinState grushin_exp(const GrushinBase & base, const GrushinCovector & cov, double t);

GrushinPartials grushin_partials(const GrushinBase & base, const GrushinCovector & cov, double t);

/// (∂x/∂x0, ∂u/∂x0) at time t. Needs x0 != 0, v0 != 0, H != 0.
Eigen::Vector2d grushin_dx0_partials(const GrushinBase & base, const GrushinCovector & cov, double t);

/// ∂(x1, y1)/∂(u0, v0) at t = 1. Throws DegenerateCovector if H = 0.
Eigen::Matrix2d grushin_dexp(const GrushinBase & base, const GrushinCovector & cov);

GrushinJacobiCoeffs grushin_jacobi_coeffs(
  const GrushinBase & base, const GrushinCovector & cov, const JacobiCoords & init);

/// Jacobi field (p_a, p_b, x_a, x_b) at time t from its value at 0.
JacobiCoords grushin_jacobi(
  const GrushinBase & base, const GrushinCovector & cov, const JacobiCoords & init, double t);

/// Right-hand side of the Jacobi system along a geodesic passing through abscissa x.
Eigen::Vector4d grushin_jacobi_rhs(double alpha, double v0, double x, const Eigen::Vector4d & J);

/// f = u1 (u0 + x0) - u0 x1. Throws DegenerateCovector if H = 0.
double grushin_conj_f(const GrushinBase & base, const GrushinCovector & cov);

/// Scale against which |f| is judged small.
double grushin_conj_scale(const GrushinBase & base, const GrushinCovector & cov);

/// (∂f/∂u0, ∂f/∂v0) by the chain rule through the analytic partials. Needs v0 != 0.
Eigen::Vector2d grushin_conj_grad(const GrushinBase & base, const GrushinCovector & cov);

/// Closed-form gradient valid on the conjugate locus, split on u0 + x0 = 0.
Eigen::Vector2d grushin_conj_grad_on_locus(const GrushinBase & base, const GrushinCovector & cov);

/// Unit vector along (v0 |x0|^{2α}, -u0); largest component made positive.
Eigen::Vector2d grushin_kernel(
  const GrushinBase & base, const GrushinCovector & cov, double tol = 1e-7);

}  // namespace srgeo
