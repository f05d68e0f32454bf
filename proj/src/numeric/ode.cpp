#include "srgeo/numeric/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "srgeo/errors.hpp"

namespace srgeo::numeric {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;

constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;

constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

constexpr double kBeta = 0.04;
constexpr double kSafe = 0.9;
constexpr double kFacMin = 0.2;   // hnew >= h * 0.2
constexpr double kFacMax = 10.0;  // hnew <= h * 10

double error_norm(const State & err, const State & y0, const State & y1, double rtol, double atol)
{
  double sum = 0.0;
  for (Eigen::Index i = 0; i < err.size(); ++i) {
    const double sk = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double r = err[i] / sk;
    sum += r * r;
  }
  return std::sqrt(sum / static_cast<double>(err.size()));
}

double initial_step(
  const VectorField & f, double t0, const State & y0, const State & f0, double span, double rtol,
  double atol)
{
  const Eigen::Index n = y0.size();
  State sk(n);
  for (Eigen::Index i = 0; i < n; ++i) sk[i] = atol + rtol * std::abs(y0[i]);
  const double dnf = (f0.array() / sk.array()).matrix().squaredNorm() / n;
  const double dny = (y0.array() / sk.array()).matrix().squaredNorm() / n;
  double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : std::sqrt(dny / dnf) * 0.01;
  h = std::min(h, span);

  State y1 = y0 + h * f0;
  State f1(n);
  f(t0 + h, y1, f1);
  const double der2 = std::sqrt(((f1 - f0).array() / sk.array()).matrix().squaredNorm() / n) / h;
  const double der12 = std::max(der2, std::sqrt(dnf));
  const double h1 = der12 <= 1e-15 ? std::max(1e-6, h * 1e-3) : std::pow(0.01 / der12, 0.2);
  return std::min({100.0 * h, h1, span});
}

bool all_finite(const State & v) { return v.allFinite(); }

}  // namespace

State Trajectory::operator()(double t) const
{
  if (segments_.empty()) return final_;
  if (t <= segments_.front().t0) {
    const auto & s = segments_.front();
    if (t == s.t0) return s.r1;
  }
  // Locate the segment containing t (segments are contiguous and ordered).
  auto it = std::upper_bound(
    segments_.begin(), segments_.end(), t,
    [](double value, const Segment & s) { return value < s.t0; });
  if (it != segments_.begin()) --it;
  const Segment & s = *it;
  double theta = (t - s.t0) / s.h;
  theta = std::clamp(theta, 0.0, 1.0);
  const double theta1 = 1.0 - theta;
  return s.r1 + theta * (s.r2 + theta1 * (s.r3 + theta * (s.r4 + theta1 * s.r5)));
}

Trajectory integrate(const OdeProblem & problem, const OdeOptions & options)
{
  const Eigen::Index n = problem.dimension();
  if (n < 1) throw InvalidInput("integrate: dimension must be >= 1");
  if (!(problem.t_start < problem.t_end)) throw InvalidInput("integrate: t_span must be increasing");
  if (!problem.vector_field) throw InvalidInput("integrate: missing vector field");
  const double rtol = options.rel_tol;
  const double atol = options.abs_tol;
  if (!(rtol > 0.0 && rtol <= 1e-2) || !(atol > 0.0 && atol <= 1e-2)) {
    throw InvalidInput("integrate: tolerances must lie in (0, 1e-2]");
  }
  if (!all_finite(problem.initial_state)) throw InvalidInput("integrate: non-finite initial state");

  const VectorField & f = problem.vector_field;
  Trajectory out;
  out.t_start_ = problem.t_start;
  out.t_end_ = problem.t_end;

  double t = problem.t_start;
  const double t_end = problem.t_end;
  State y = problem.initial_state;
  State k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n), err(n);
  f(t, y, k1);
  if (!all_finite(k1)) throw StepFailure("integrate: vector field not finite at initial state");

  double h = initial_step(f, t, y, k1, t_end - t, rtol, atol);
  double facold = 1e-4;
  bool last_rejected = false;
  const double expo1 = 0.2 - kBeta * 0.75;

  for (std::size_t step = 0;; ++step) {
    if (step >= options.max_steps) throw StepFailure("integrate: maximum number of steps exceeded");
    const double eps = 10.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t));
    if (h < eps) throw StepFailure("integrate: step size underflow");
    bool final_step = false;
    if (t + 1.01 * h >= t_end) {
      h = t_end - t;
      final_step = true;
    }

    ytmp = y + h * a21 * k1;
    f(t + c2 * h, ytmp, k2);
    ytmp = y + h * (a31 * k1 + a32 * k2);
    f(t + c3 * h, ytmp, k3);
    ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    f(t + c4 * h, ytmp, k4);
    ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    f(t + c5 * h, ytmp, k5);
    ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    f(t + h, ytmp, k6);
    ynew = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    f(t + h, ynew, k7);

    if (!all_finite(ynew) || !all_finite(k7)) {
      // Retry with a much smaller step before giving up.
      h *= 0.1;
      last_rejected = true;
      ++out.rejected_;
      continue;
    }

    err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double errn = error_norm(err, y, ynew, rtol, atol);

    const double fac11 = std::pow(std::max(errn, 1e-300), expo1);
    double fac = fac11 / std::pow(facold, kBeta);
    fac = std::clamp(fac / kSafe, 1.0 / kFacMax, 1.0 / kFacMin);
    double hnew = h / fac;

    if (errn <= 1.0) {
      facold = std::max(errn, 1e-4);
      Trajectory::Segment seg;
      seg.t0 = t;
      seg.h = h;
      seg.r1 = y;
      seg.r2 = ynew - y;
      seg.r3 = h * k1 - seg.r2;
      seg.r4 = seg.r2 - h * k7 - seg.r3;
      seg.r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
      out.segments_.push_back(std::move(seg));

      y = ynew;
      k1 = k7;
      t = final_step ? t_end : t + h;
      if (final_step) break;
      if (last_rejected) hnew = std::min(hnew, h);
      last_rejected = false;
      h = hnew;
    } else {
      hnew = h / std::min(1.0 / kFacMin, fac11 / kSafe);
      last_rejected = true;
      ++out.rejected_;
      h = hnew;
    }
  }
  out.final_ = y;
  return out;
}

}  // namespace srgeo::numeric
