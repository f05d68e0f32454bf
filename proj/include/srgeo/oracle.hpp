#pragma once

#include "srgeo/grushin.hpp"
#include "srgeo/numeric/ode.hpp"
#include "srgeo/sl2.hpp"
#include "srgeo/su2.hpp"

namespace srgeo::oracle {

/// Hamiltonian flow of the Grushin structure; state (x, y, u, v).
numeric::Trajectory grushin_flow(
  const GrushinBase & base, const GrushinCovector & cov, double t_end, const numeric::OdeOptions & opt = {});

/// Horizontal matrix ODE on SU(2) from the identity; state (Re α, Im α, Re β, Im β, u, v).
numeric::Trajectory su2_flow(const Su2Covector & cov, double t_end, const numeric::OdeOptions & opt = {});

/// Horizontal matrix ODE on SL(2) from the identity; state (m11, m12, m21, m22, u, v).
numeric::Trajectory sl2_flow(const Sl2Covector & cov, double t_end, const numeric::OdeOptions & opt = {});

/// Geodesic and Jacobi system integrated together; returns (p_a, p_b, x_a, x_b) at t_end.
JacobiCoords grushin_jacobi_numeric(
  const GrushinBase & base, const GrushinCovector & cov, const JacobiCoords & init, double t_end,
  const numeric::OdeOptions & opt = {});

/// Contact Jacobi system with curvature r integrated numerically.
JacobiCoords contact_jacobi_numeric(
  double r, const JacobiCoords & init, double t_end, const numeric::OdeOptions & opt = {});

}  // namespace srgeo::oracle
