#include "srgeo/numeric/roots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "srgeo/errors.hpp"

namespace srgeo::numeric {

namespace {

double toms748(const std::function<double(double)> & g, double lo, double hi, double glo, double ghi)
{
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(
    g, lo, hi, glo, ghi, boost::math::tools::eps_tolerance<double>(52), iters);
  const double x = 0.5 * (r.first + r.second);
  return std::abs(g(r.first)) < std::abs(g(x)) ? r.first
       : std::abs(g(r.second)) < std::abs(g(x)) ? r.second
                                                 : x;
}

}  // namespace

double bracket_root(const std::function<double(double)> & g, double lo, double hi, double)
{
  const double glo = g(lo);
  const double ghi = g(hi);
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  if ((glo > 0.0) == (ghi > 0.0)) throw InvalidInput("bracket_root: no sign change on bracket");
  return toms748(g, lo, hi, glo, ghi);
}

std::vector<Root> find_roots_detailed(
  const std::function<double(double)> & g, double lo, double hi, int scan_points, double tol)
{
  if (scan_points < 2) throw InvalidInput("find_roots: scan_points must be >= 2");
  if (!(lo < hi)) throw InvalidInput("find_roots: empty interval");

  const auto n = static_cast<std::size_t>(scan_points);
  std::vector<double> xs(n), gs(n);
  double scale = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    gs[i] = g(xs[i]);
    if (std::isfinite(gs[i])) scale = std::max(scale, std::abs(gs[i]));
  }

  std::vector<Root> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(gs[i])) continue;
    if (gs[i] == 0.0) {
      out.push_back({xs[i], false});
      continue;
    }
    if (i + 1 < n && std::isfinite(gs[i + 1]) && gs[i + 1] != 0.0 &&
        (gs[i] > 0.0) != (gs[i + 1] > 0.0)) {
      const double r = toms748(g, xs[i], xs[i + 1], gs[i], gs[i + 1]);
      if (std::abs(g(r)) <= tol * scale) out.push_back({r, false});
      continue;
    }
    // Touch without sign change: interior local minimum of |g|.
    if (i == 0 || i + 1 >= n) continue;
    const double am = std::abs(gs[i - 1]), a0 = std::abs(gs[i]), ap = std::abs(gs[i + 1]);
    if (!(a0 < am && a0 <= ap)) continue;
    if ((gs[i - 1] > 0.0) != (gs[i] > 0.0) || (gs[i + 1] > 0.0) != (gs[i] > 0.0)) continue;
    auto absg = [&](double x) { return std::abs(g(x)); };
    std::uintmax_t iters = 200;
    const auto m = boost::math::tools::brent_find_minima(absg, xs[i - 1], xs[i + 1], 52, iters);
    if (m.second <= tol * scale) out.push_back({m.first, true});
  }

  std::sort(out.begin(), out.end(), [](const Root & a, const Root & b) { return a.x < b.x; });
  // Neighbouring brackets can deliver the same root twice.
  std::vector<Root> unique;
  for (const Root & r : out) {
    if (!unique.empty() && std::abs(r.x - unique.back().x) <= 1e-12 * std::max(1.0, std::abs(r.x))) {
      unique.back().bracketless = unique.back().bracketless && r.bracketless;
      continue;
    }
    unique.push_back(r);
  }
  return unique;
}

std::vector<double> find_roots(
  const std::function<double(double)> & g, double lo, double hi, int scan_points, double tol)
{
  std::vector<double> xs;
  for (const Root & r : find_roots_detailed(g, lo, hi, scan_points, tol)) xs.push_back(r.x);
  return xs;
}

}  // namespace srgeo::numeric
