#pragma once

#include <Eigen/Core>

#include "srgeo/types.hpp"

namespace srgeo {

/// s_a(t), c_a(t): solutions of f'' = -a f with (s, s') = (0, 1) and (c, c') = (1, 0) at t = 0.
struct ScPair
{
  double s;
  double c;
};

/// Trigonometric for a > 0, hyperbolic for a < 0, series near a t^2 = 0.
ScPair sc_functions(double a, double t);

/// (1 - c_a(t)) / a and (t - s_a(t)) / a, smooth through a = 0.
Eigen::Vector2d sc_quotients(double a, double t);

/**
 * @brief Jacobi fields of a 3D contact structure in its canonical frame.
 *
 * Coordinates are (p_a, p_b, p_c, x_a, x_b, x_c); the only curvature entry is R_aa = r.
 * Valid for r of either sign.
 */
JacobiCoords contact_jacobi(double r, const JacobiCoords & init, double t);

/// Right-hand side of the linear Jacobi system with C1 = E_13, C2 = diag(1, 1, 0), R = r E_11.
Eigen::Matrix<double, 6, 1> contact_jacobi_rhs(double r, const Eigen::Matrix<double, 6, 1> & J);

/// x(1) as a linear function of p(0) when x(0) = 0.
Eigen::Matrix3d contact_conj_matrix(double r);

}  // namespace srgeo
