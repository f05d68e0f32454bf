#pragma once

#include <Eigen/Core>

#include "srgeo/contact.hpp"
#include "srgeo/types.hpp"

namespace srgeo {

struct Sl2Matrix
{
  double m11, m12, m21, m22;

  [[nodiscard]] Eigen::Vector4d coords() const { return {m11, m12, m21, m22}; }
  [[nodiscard]] double det() const { return m11 * m22 - m12 * m21; }
};

/// λ0 = u0 X1 + v0 X2 + w0 X0.
struct Sl2Covector
{
  double u0 = 0.0, v0 = 0.0, w0 = 0.0;

  [[nodiscard]] Eigen::Vector3d vec() const { return {u0, v0, w0}; }
  [[nodiscard]] double two_h() const { return u0 * u0 + v0 * v0; }
  /// r = w0^2 - (u0^2 + v0^2).
  [[nodiscard]] double r() const { return w0 * w0 - two_h(); }
};

struct Sl2State
{
  Sl2Matrix g;
  double u, v, w;
};

/// For r <= 0 both values are positive normalized hyperbolic factors (never zero).
struct Sl2Strata
{
  double r;
  double f0;
  double f1;
};

struct Sl2Gradients
{
  Eigen::Vector3d df0;
  Eigen::Vector3d df1;
};

Sl2State sl2_exp(const Sl2Covector & cov, double t);

JacobiCoords sl2_jacobi(const Sl2Covector & cov, const JacobiCoords & init, double t);

/// Throws DegenerateCovector if H = 0.
Sl2Strata sl2_conj_f(const Sl2Covector & cov);

/// Needs H != 0 and r > 0.
Sl2Gradients sl2_conj_grad(const Sl2Covector & cov);

/// Unit kernel in (∂u, ∂v, ∂w); largest component made positive. Throws NotConjugate.
Eigen::Vector3d sl2_kernel(const Sl2Covector & cov, double tol = 1e-7);

/// Columns E_a(0), E_b(0), E_c(0) expressed in (∂u, ∂v, ∂w).
Eigen::Matrix3d sl2_frame(const Sl2Covector & cov);

/// Chart id 0..3: the matrix entry (m11, m12, m21, m22) solved from det = 1 and dropped.
int sl2_chart(const Sl2Matrix & g);

Eigen::Vector3d sl2_chart_coords(const Sl2Matrix & g, int chart);

}  // namespace srgeo
