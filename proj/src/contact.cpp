#include "srgeo/contact.hpp"

#include <cmath>

#include "srgeo/errors.hpp"

namespace srgeo {

ScPair sc_functions(double a, double t)
{
  const double z = a * t * t;
  if (std::abs(z) < 1e-6) {
    return {t * (1.0 - z / 6.0 + z * z / 120.0), 1.0 - z / 2.0 + z * z / 24.0};
  }
  if (a > 0.0) {
    const double q = std::sqrt(a);
    return {std::sin(q * t) / q, std::cos(q * t)};
  }
  const double q = std::sqrt(-a);
  return {std::sinh(q * t) / q, std::cosh(q * t)};
}

Eigen::Vector2d sc_quotients(double a, double t)
{
  const double z = a * t * t;
  if (std::abs(z) < 1e-2) {
    const double t2 = t * t;
    const double q1 = t2 * (1.0 / 2.0 - z / 24.0 + z * z / 720.0 - z * z * z / 40320.0 + z * z * z * z / 3628800.0);
    const double q2 = t * t2 *
                      (1.0 / 6.0 - z / 120.0 + z * z / 5040.0 - z * z * z / 362880.0 + z * z * z * z / 39916800.0);
    return {q1, q2};
  }
  const ScPair sc = sc_functions(a, t);
  return {(1.0 - sc.c) / a, (t - sc.s) / a};
}

JacobiCoords contact_jacobi(double r, const JacobiCoords & init, double t)
{
  if (init.size() != 6) throw InvalidInput("contact_jacobi: expected 6 coordinates");
  const double pa0 = init[0], pb0 = init[1], pc0 = init[2];
  const double xa0 = init[3], xb0 = init[4], xc0 = init[5];
  const ScPair sc = sc_functions(r, t);
  const Eigen::Vector2d q = sc_quotients(r, t);

  JacobiCoords out(6);
  out[0] = pa0 * sc.c - (r * xa0 + pc0) * sc.s;
  out[1] = pb0;
  out[2] = pc0;
  out[3] = xa0 * sc.c - pc0 * q[0] + pa0 * sc.s;
  out[4] = pb0 * t + xb0;
  out[5] = xc0 + xa0 * sc.s - pc0 * q[1] + pa0 * q[0];
  return out;
}

Eigen::Matrix<double, 6, 1> contact_jacobi_rhs(double r, const Eigen::Matrix<double, 6, 1> & J)
{
  Eigen::Matrix<double, 6, 1> d;
  d << -J[2] - r * J[3], 0.0, 0.0, J[0], J[1], J[3];
  return d;
}

Eigen::Matrix3d contact_conj_matrix(double r)
{
  const ScPair sc = sc_functions(r, 1.0);
  const Eigen::Vector2d q = sc_quotients(r, 1.0);
  Eigen::Matrix3d M;
  M << sc.s, 0.0, -q[0], 0.0, 1.0, 0.0, q[0], 0.0, -q[1];
  return M;
}

}  // namespace srgeo
