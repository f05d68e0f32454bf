#pragma once

#include <functional>
#include <vector>

namespace srgeo::numeric {

struct Root
{
  double x;
  bool bracketless;  // even-order touch of zero, no sign change
};

/**
 * @brief All roots of g on [lo, hi] visible on a uniform scan.
 *
 * Sign changes between neighbouring scan points are refined with TOMS 748.
 * Local minima of |g| without a sign change are polished and kept only when
 * |g| <= tol * scale, where scale is the largest |g| seen on the scan (at least 1).
 */
std::vector<Root> find_roots_detailed(
  const std::function<double(double)> & g, double lo, double hi, int scan_points,
  double tol = 1e-10);

/// Abscissae of find_roots_detailed, ascending.
std::vector<double> find_roots(
  const std::function<double(double)> & g, double lo, double hi, int scan_points,
  double tol = 1e-10);

/// Root of g in [lo, hi] given g(lo) g(hi) <= 0. Throws InvalidInput otherwise.
double bracket_root(const std::function<double(double)> & g, double lo, double hi, double tol = 1e-14);

}  // namespace srgeo::numeric
