#pragma once

#include <functional>

namespace srgeo::numeric {

/**
 * @brief Adaptive quadrature of f over [a, b] to absolute tolerance `tol`.
 *
 * Integrable endpoint singularities of type (b - t)^{-1/2} are absorbed by the
 * substitution t = a + (b - a) sin(s). Throws NonConvergence when the error
 * estimate stays above `tol`.
 */
double quad(const std::function<double(double)> & f, double a, double b, double tol = 1e-12);

/// As above, but f also receives b - t computed without cancellation.
double quad(
  const std::function<double(double t, double b_minus_t)> & f, double a, double b,
  double tol = 1e-12);

}  // namespace srgeo::numeric
