#include "srgeo/numeric/quadrature.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "srgeo/errors.hpp"

namespace srgeo::numeric {

double quad(const std::function<double(double)> & f, double a, double b, double tol)
{
  return quad([&f](double t, double) { return f(t); }, a, b, tol);
}

double quad(const std::function<double(double, double)> & f, double a, double b, double tol)
{
  if (!(tol > 0.0)) throw InvalidInput("quad: tolerance must be positive");
  if (!std::isfinite(a) || !std::isfinite(b)) throw InvalidInput("quad: limits must be finite");
  if (a == b) return 0.0;

  const double len = b - a;
  auto g = [&](double s) {
    const double sn = std::sin(s);
    const double cs = std::cos(s);
    const double t = a + len * sn;
    const double tc = len * cs * cs / (1.0 + sn);
    const double v = f(t, tc) * len * cs;
    if (!std::isfinite(v)) throw NonConvergence("quad: integrand not finite");
    return v;
  };

  using Gk = boost::math::quadrature::gauss_kronrod<double, 15>;
  constexpr double upper = std::numbers::pi / 2.0;
  double err = 0.0;
  double l1 = 0.0;
  // Boost terminates on error <= rel * L1; pick rel from a coarse L1 estimate.
  Gk::integrate(g, 0.0, upper, 0, 0.0, &err, &l1);
  const double rel = std::max(tol / std::max(l1, 1e-300) * 0.1, 1e-15);
  const double value = Gk::integrate(g, 0.0, upper, 20, rel, &err, &l1);
  if (!std::isfinite(value) || err > tol) {
    throw NonConvergence("quad: error estimate above tolerance");
  }
  return value;
}

}  // namespace srgeo::numeric
