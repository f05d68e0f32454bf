#include "srgeo/alpha_trig.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>

#include "srgeo/errors.hpp"
#include "srgeo/numeric/quadrature.hpp"
#include "srgeo/numeric/roots.hpp"

namespace srgeo {

namespace {

constexpr int kBuildSubsteps = 16;
constexpr int kEvalSubsteps = 2;

void check_alpha(double alpha)
{
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) throw InvalidInput("alpha must be finite and >= 1");
}

// One classical RK4 step of s' = c, c' = -α |s|^{2α-2} s.
void rk4(double alpha, double h, double & s, double & c)
{
  const double p = 2.0 * alpha - 1.0;
  auto acc = [&](double x) { return -alpha * signed_pow(x, p); };
  const double k1s = c, k1c = acc(s);
  const double k2s = c + 0.5 * h * k1c, k2c = acc(s + 0.5 * h * k1s);
  const double k3s = c + 0.5 * h * k2c, k3c = acc(s + 0.5 * h * k2s);
  const double k4s = c + h * k3c, k4c = acc(s + h * k3s);
  s += h / 6.0 * (k1s + 2.0 * k2s + 2.0 * k3s + k4s);
  c += h / 6.0 * (k1c + 2.0 * k2c + 2.0 * k3c + k4c);
}

}  // namespace

double signed_pow(double x, double p)
{
  if (x == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(x), p), x);
}

double pi_alpha(double alpha)
{
  check_alpha(alpha);
  if (alpha == 1.0) return std::numbers::pi;
  const double two_alpha = 2.0 * alpha;
  auto f = [two_alpha](double t, double tc) {
    if (t <= 0.0) return 1.0;
    return 1.0 / std::sqrt(-std::expm1(two_alpha * std::log1p(-tc)));
  };
  return 2.0 * numeric::quad(std::function<double(double, double)>(f), 0.0, 1.0, 1e-13);
}

AlphaTrigTable::AlphaTrigTable(double alpha) : alpha_(alpha), pi_alpha_(srgeo::pi_alpha(alpha))
{
  const int n = kNodes;
  const double dt = quarter() / n;
  t_.resize(n + 1);
  s_.resize(n + 1);
  c_.resize(n + 1);
  double s = 0.0, c = 1.0;
  for (int i = 0; i <= n; ++i) {
    t_[i] = dt * i;
    s_[i] = s;
    c_[i] = c;
    if (i == n) break;
    for (int k = 0; k < kBuildSubsteps; ++k) rk4(alpha_, dt / kBuildSubsteps, s, c);
  }
  s_[0] = 0.0;
  c_[0] = 1.0;
}

SinCos AlphaTrigTable::eval_quarter(double tau) const
{
  if (alpha_ == 1.0) return {std::sin(tau), std::cos(tau)};
  const double dt = quarter() / kNodes;
  const int i = std::clamp(static_cast<int>(std::lround(tau / dt)), 0, kNodes);
  double s = s_[i], c = c_[i];
  const double h = (tau - t_[i]) / kEvalSubsteps;
  if (h != 0.0) {
    for (int k = 0; k < kEvalSubsteps; ++k) rk4(alpha_, h, s, c);
  }
  // Project back onto c^2 + |s|^{2α} = 1.
  const double e = c * c + std::pow(std::abs(s), 2.0 * alpha_) - 1.0;
  const double gs = 2.0 * alpha_ * signed_pow(s, 2.0 * alpha_ - 1.0);
  const double gc = 2.0 * c;
  const double g2 = gs * gs + gc * gc;
  if (g2 > 0.0) {
    s -= e * gs / g2;
    c -= e * gc / g2;
  }
  return {s, c};
}

SinCos AlphaTrigTable::eval(double t) const
{
  if (!std::isfinite(t)) throw InvalidInput("sin_cos_alpha: argument must be finite");
  if (alpha_ == 1.0) return {std::sin(t), std::cos(t)};
  const double P = pi_alpha_;
  double tau = std::fmod(t, 2.0 * P);
  if (tau < 0.0) tau += 2.0 * P;
  const double Q = 0.5 * P;
  if (tau <= Q) return eval_quarter(tau);
  if (tau <= P) {
    const SinCos r = eval_quarter(P - tau);
    return {r.s, -r.c};
  }
  if (tau <= P + Q) {
    const SinCos r = eval_quarter(tau - P);
    return {-r.s, -r.c};
  }
  const SinCos r = eval_quarter(2.0 * P - tau);
  return {-r.s, r.c};
}

double AlphaTrigTable::invert_sin(double a) const
{
  if (a <= 0.0) return 0.0;
  if (a >= 1.0) return quarter();
  const auto it = std::lower_bound(s_.begin(), s_.end(), a);
  const auto hi = static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - s_.begin(), kNodes));
  const std::size_t lo = hi == 0 ? 0 : hi - 1;
  if (s_[hi] == a) return t_[hi];
  auto g = [&](double tau) { return eval_quarter(tau).s - a; };
  return numeric::bracket_root(g, t_[lo], t_[hi]);
}

double AlphaTrigTable::invert_cos(double a) const
{
  if (a >= 1.0) return 0.0;
  if (a <= 0.0) return quarter();
  // c_ is decreasing.
  const auto it = std::lower_bound(c_.begin(), c_.end(), a, [](double x, double v) { return x > v; });
  const auto hi = static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - c_.begin(), kNodes));
  const std::size_t lo = hi == 0 ? 0 : hi - 1;
  if (c_[hi] == a) return t_[hi];
  auto g = [&](double tau) { return eval_quarter(tau).c - a; };
  return numeric::bracket_root(g, t_[lo], t_[hi]);
}

namespace {

double place(double tau, bool s_nonneg, bool c_nonneg, double P)
{
  double phi;
  if (s_nonneg && c_nonneg) {
    phi = tau;
  } else if (s_nonneg) {
    phi = P - tau;
  } else if (!c_nonneg) {
    phi = P + tau;
  } else {
    phi = 2.0 * P - tau;
  }
  if (phi >= 2.0 * P) phi -= 2.0 * P;
  return phi;
}

}  // namespace

double AlphaTrigTable::arc(double s, int c_sign) const
{
  if (!(std::abs(s) <= 1.0 + 1e-12)) throw InvalidInput("arc_alpha: |s| must not exceed 1");
  s = std::clamp(s, -1.0, 1.0);
  const double tau = alpha_ == 1.0 ? std::asin(std::abs(s)) : invert_sin(std::abs(s));
  return place(tau, s >= 0.0, c_sign >= 0, pi_alpha_);
}

double AlphaTrigTable::arc_pair(double s, double c) const
{
  if (!std::isfinite(s) || !std::isfinite(c)) throw InvalidInput("arc_pair: non-finite input");
  const double as = std::min(std::abs(s), 1.0);
  const double ac = std::min(std::abs(c), 1.0);
  double tau;
  if (alpha_ == 1.0) {
    tau = std::atan2(as, ac);
  } else {
    tau = as <= 0.5 ? invert_sin(as) : invert_cos(ac);
  }
  return place(tau, s >= 0.0, c >= 0.0, pi_alpha_);
}

std::shared_ptr<const AlphaTrigTable> alpha_trig_table(double alpha)
{
  check_alpha(alpha);
  static std::mutex mutex;
  static std::map<double, std::shared_ptr<const AlphaTrigTable>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(alpha); it != cache.end()) return it->second;
  }
  auto table = std::make_shared<const AlphaTrigTable>(alpha);
  std::lock_guard lock(mutex);
  return cache.emplace(alpha, std::move(table)).first->second;
}

SinCos sin_cos_alpha(double alpha, double t) { return alpha_trig_table(alpha)->eval(t); }

double arc_alpha(double alpha, double s, int c_sign) { return alpha_trig_table(alpha)->arc(s, c_sign); }

double arc_pair(double alpha, double s, double c) { return alpha_trig_table(alpha)->arc_pair(s, c); }

}  // namespace srgeo
