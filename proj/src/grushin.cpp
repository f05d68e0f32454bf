#include "srgeo/grushin.hpp"

#include <cmath>

#include "srgeo/alpha_trig.hpp"
#include "srgeo/errors.hpp"
#include "srgeo/numeric/ode.hpp"

namespace srgeo {

namespace {

double abs_pow(double x, double p) { return x == 0.0 && p > 0.0 ? 0.0 : std::pow(std::abs(x), p); }

void check_base(const GrushinBase & base)
{
  if (!(base.alpha >= 1.0) || !std::isfinite(base.alpha)) throw InvalidInput("grushin: alpha must be >= 1");
  if (!std::isfinite(base.x0) || !std::isfinite(base.y0)) throw InvalidInput("grushin: non-finite base point");
}

// u' along the geodesic, -α v0^2 |x|^{2α-2} x.
double u_dot(double alpha, double v0, double x) { return -alpha * v0 * v0 * signed_pow(x, 2.0 * alpha - 1.0); }

}  // namespace

double grushin_two_h(const GrushinBase & base, const GrushinCovector & cov)
{
  return cov.u0 * cov.u0 + cov.v0 * cov.v0 * abs_pow(base.x0, 2.0 * base.alpha);
}

GrushinAmplitude grushin_amplitude(const GrushinBase & base, const GrushinCovector & cov)
{
  check_base(base);
  const double h2 = grushin_two_h(base, cov);
  if (cov.v0 == 0.0 || h2 == 0.0) throw DegenerateCovector("grushin_amplitude: needs v0 != 0 and H != 0");
  const double a = base.alpha;
  const double A = std::pow(h2 / (cov.v0 * cov.v0), 1.0 / (2.0 * a));
  const double omega = cov.v0 * std::pow(A, a - 1.0);
  const double phi = arc_pair(a, base.x0 / A, cov.u0 / (A * omega));
  return {A, omega, phi};
}

GrushinState grushin_exp(const GrushinBase & base, const GrushinCovector & cov, double t)
{
  check_base(base);
  const double h2 = grushin_two_h(base, cov);
  if (h2 == 0.0) return {base.x0, base.y0, cov.u0, cov.v0};
  if (cov.v0 == 0.0) return {base.x0 + cov.u0 * t, base.y0, cov.u0, 0.0};

  const double a = base.alpha;
  const GrushinAmplitude amp = grushin_amplitude(base, cov);
  const SinCos sc = sin_cos_alpha(a, amp.omega * t + amp.phi);
  const double x = amp.A * sc.s;
  const double u = amp.A * amp.omega * sc.c;
  const double y = base.y0 + (h2 * t + cov.u0 * base.x0 - u * x) / (cov.v0 * (a + 1.0));
  return {x, y, u, cov.v0};
}

GrushinPartials grushin_partials(const GrushinBase & base, const GrushinCovector & cov, double t)
{
  check_base(base);
  const double h2 = grushin_two_h(base, cov);
  if (h2 == 0.0) throw DegenerateCovector("grushin_partials: H = 0");
  if (cov.v0 == 0.0) return {t, 0.0, 1.0, 0.0};

  const double a = base.alpha, u0 = cov.u0, v0 = cov.v0, x0 = base.x0;
  const GrushinState g = grushin_exp(base, cov, t);
  const double ud = u_dot(a, v0, g.x);
  const double cu = (a - 1.0) * t * u0 - x0;
  const double cv = t * (a * (h2 - u0 * u0) + u0 * u0) + u0 * x0;

  GrushinPartials p{};
  p.dx_du0 = (cu * g.u + u0 * g.x) / (h2 * a);
  p.dx_dv0 = (cv * g.u - u0 * u0 * g.x) / (h2 * a * v0);
  p.du_du0 = (a * u0 * g.u + cu * ud) / (h2 * a);
  p.du_dv0 = (a * (h2 - u0 * u0) * g.u + cv * ud) / (a * h2 * v0);
  return p;
}

Eigen::Vector2d grushin_dx0_partials(const GrushinBase & base, const GrushinCovector & cov, double t)
{
  check_base(base);
  const double h2 = grushin_two_h(base, cov);
  if (base.x0 == 0.0 || cov.v0 == 0.0 || h2 == 0.0) {
    throw DegenerateCovector("grushin_dx0_partials: needs x0 != 0, v0 != 0, H != 0");
  }
  const double a = base.alpha, u0 = cov.u0, x0 = base.x0;
  const GrushinState g = grushin_exp(base, cov, t);
  const double ud = u_dot(a, cov.v0, g.x);
  const double w = h2 - u0 * u0;
  const double cx = (a - 1.0) * t * w + u0 * x0;
  return {(cx * g.u + w * g.x) / (h2 * x0), (a * w * g.u + cx * ud) / (h2 * x0)};
}

Eigen::Matrix2d grushin_dexp(const GrushinBase & base, const GrushinCovector & cov)
{
  check_base(base);
  const double h2 = grushin_two_h(base, cov);
  if (h2 == 0.0) throw DegenerateCovector("grushin_dexp: H = 0");
  const double a = base.alpha, u0 = cov.u0, v0 = cov.v0, x0 = base.x0;
  const double t = 1.0;

  Eigen::Matrix2d J;
  if (v0 == 0.0) {
    const double x1 = x0 + u0 * t;
    const double e = 2.0 * a + 1.0;
    const double dy_dv0 = (signed_pow(x1, e) - signed_pow(x0, e)) / (e * u0);
    J << t, 0.0, 0.0, dy_dv0;
    return J;
  }

  const GrushinState g = grushin_exp(base, cov, t);
  const GrushinPartials p = grushin_partials(base, cov, t);
  const double den = v0 * (a + 1.0);
  const double dy_du0 = (2.0 * u0 * t + x0 - p.du_du0 * g.x - g.u * p.dx_du0) / den;
  const double dy_dv0 =
    (2.0 * v0 * abs_pow(x0, 2.0 * a) * t - p.du_dv0 * g.x - g.u * p.dx_dv0) / den -
    (h2 * t + u0 * x0 - g.u * g.x) / (v0 * den);
  J << p.dx_du0, p.dx_dv0, dy_du0, dy_dv0;
  return J;
}

GrushinJacobiCoeffs grushin_jacobi_coeffs(
  const GrushinBase & base, const GrushinCovector & cov, const JacobiCoords & init)
{
  check_base(base);
  if (init.size() != 4) throw InvalidInput("grushin_jacobi: expected (p_a, p_b, x_a, x_b)");
  const double h2 = grushin_two_h(base, cov);
  if (cov.v0 == 0.0 || h2 == 0.0) throw DegenerateCovector("grushin_jacobi_coeffs: needs v0 != 0, H != 0");
  const double a = base.alpha, u0 = cov.u0, v0 = cov.v0, x0 = base.x0;
  const double pa0 = init[0], pb0 = init[1], xa0 = init[2];
  const double k1 =
    (a * xa0 * v0 * v0 * v0 * signed_pow(x0, 2.0 * a - 1.0) + pa0 * u0 * v0 - pb0 * u0 * u0) / (a * v0 * h2);
  const double k2 = (a * xa0 * u0 * v0 - pa0 * v0 * x0 + pb0 * u0 * x0) / (a * v0 * h2);
  const double k3 = ((a - 1.0) * v0 * k1 + pb0) / v0;
  return {k1, k2, k3};
}

Eigen::Vector4d grushin_jacobi_rhs(double alpha, double v0, double x, const Eigen::Vector4d & J)
{
  const double w = abs_pow(x, 2.0 * alpha - 2.0);
  const double pa = J[0], pb = J[1], xa = J[2];
  Eigen::Vector4d d;
  d[0] = -2.0 * alpha * v0 * w * x * pb - alpha * (2.0 * alpha - 1.0) * v0 * v0 * w * xa;
  d[1] = 0.0;
  d[2] = pa;
  d[3] = abs_pow(x, 2.0 * alpha) * pb + 2.0 * alpha * v0 * w * x * xa;
  return d;
}

JacobiCoords grushin_jacobi(
  const GrushinBase & base, const GrushinCovector & cov, const JacobiCoords & init, double t)
{
  check_base(base);
  if (init.size() != 4) throw InvalidInput("grushin_jacobi: expected (p_a, p_b, x_a, x_b)");
  const double h2 = grushin_two_h(base, cov);
  const double a = base.alpha, u0 = cov.u0, v0 = cov.v0, x0 = base.x0;

  if (v0 == 0.0 || h2 == 0.0) {
    if (t == 0.0) return init;
    if (t < 0.0) throw InvalidInput("grushin_jacobi: degenerate branch supports t >= 0 only");
    // Geodesic is explicit here (straight line or constant); integrate the linear system along it.
    numeric::OdeProblem prob;
    prob.initial_state = init;
    prob.t_start = 0.0;
    prob.t_end = t;
    prob.vector_field = [=](double s, const numeric::State & y, numeric::State & dy) {
      const double x = h2 == 0.0 ? x0 : x0 + u0 * s;
      dy = grushin_jacobi_rhs(a, v0, x, y.head<4>());
    };
    return numeric::integrate(prob, 1e-12, 1e-14).final_state();
  }

  const GrushinJacobiCoeffs k = grushin_jacobi_coeffs(base, cov, init);
  const GrushinState g = grushin_exp(base, cov, t);
  const double ud = u_dot(a, v0, g.x);
  const double pb0 = init[1], xb0 = init[3];
  const double m = k.k2 + k.k3 * t;

  JacobiCoords out(4);
  out[0] = (k.k1 + k.k3) * g.u + m * ud;
  out[1] = pb0;
  out[2] = k.k1 * g.x + m * g.u;
  const double den = v0 * (a + 1.0);
  out[3] = xb0 + (pb0 / v0 + 2.0 * a * k.k1) * (t * h2 + u0 * x0 - g.u * g.x) / den -
           (k.k2 / v0) * (g.u * g.u - u0 * u0) -
           k.k3 * (u0 * x0 - a * t * h2 + (a + 1.0) * t * g.u * g.u - g.u * g.x) / den;
  return out;
}

double grushin_conj_f(const GrushinBase & base, const GrushinCovector & cov)
{
  check_base(base);
  if (grushin_two_h(base, cov) == 0.0) throw DegenerateCovector("grushin_conj_f: H = 0");
  const GrushinState g = grushin_exp(base, cov, 1.0);
  return g.u * (cov.u0 + base.x0) - cov.u0 * g.x;
}

double grushin_conj_scale(const GrushinBase & base, const GrushinCovector & cov)
{
  const double h2 = grushin_two_h(base, cov);
  double A = 0.0;
  if (cov.v0 != 0.0 && h2 != 0.0) A = grushin_amplitude(base, cov).A;
  return std::sqrt(h2) * (std::abs(cov.u0) + std::abs(base.x0)) + std::abs(cov.u0) * A;
}

Eigen::Vector2d grushin_conj_grad(const GrushinBase & base, const GrushinCovector & cov)
{
  check_base(base);
  if (grushin_two_h(base, cov) == 0.0) throw DegenerateCovector("grushin_conj_grad: H = 0");
  if (cov.v0 == 0.0) throw DegenerateCovector("grushin_conj_grad: v0 = 0");
  const double u0 = cov.u0, x0 = base.x0;
  const GrushinState g = grushin_exp(base, cov, 1.0);
  const GrushinPartials p = grushin_partials(base, cov, 1.0);
  return {p.du_du0 * (u0 + x0) + g.u - g.x - u0 * p.dx_du0, p.du_dv0 * (u0 + x0) - u0 * p.dx_dv0};
}

Eigen::Vector2d grushin_conj_grad_on_locus(const GrushinBase & base, const GrushinCovector & cov)
{
  check_base(base);
  const double h2 = grushin_two_h(base, cov);
  if (h2 == 0.0) throw DegenerateCovector("grushin_conj_grad_on_locus: H = 0");
  if (cov.v0 == 0.0) throw DegenerateCovector("grushin_conj_grad_on_locus: v0 = 0");
  const double a = base.alpha, u0 = cov.u0, v0 = cov.v0, x0 = base.x0;
  const double x02a = abs_pow(x0, 2.0 * a);
  const GrushinState g = grushin_exp(base, cov, 1.0);
  const double s = u0 + x0;
  if (std::abs(s) <= 1e-12 * std::max(1.0, std::abs(u0) + std::abs(x0))) {
    return {g.u * v0 * v0 * x02a / h2, g.u * v0 * x02a * x0 / h2};
  }
  const double ud = u_dot(a, v0, g.x);
  const double du = (ud * s * s * ((a - 1.0) * u0 - x0) - a * v0 * v0 * g.x * x02a * x0) / (a * s * h2);
  const double dv =
    (ud * s * s * (u0 * u0 + a * v0 * v0 * x02a + u0 * x0) + a * u0 * v0 * v0 * g.x * x02a * x0) /
    (a * v0 * s * h2);
  return {du, dv};
}

Eigen::Vector2d grushin_kernel(const GrushinBase & base, const GrushinCovector & cov, double tol)
{
  check_base(base);
  if (cov.v0 == 0.0) throw NotConjugate("grushin_kernel: v0 = 0 covectors are never conjugate");
  const double f = grushin_conj_f(base, cov);
  if (std::abs(f) > tol * std::max(grushin_conj_scale(base, cov), 1e-300)) {
    throw NotConjugate("grushin_kernel: covector is not conjugate");
  }
  Eigen::Vector2d k(cov.v0 * abs_pow(base.x0, 2.0 * base.alpha), -cov.u0);
  k.normalize();
  Eigen::Index i;
  k.cwiseAbs().maxCoeff(&i);
  if (k[i] < 0.0) k = -k;
  return k;
}

}  // namespace srgeo
