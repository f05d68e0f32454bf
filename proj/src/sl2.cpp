#include "srgeo/sl2.hpp"

#include <cmath>

#include "srgeo/errors.hpp"

namespace srgeo {

namespace {

void check_finite(const Sl2Covector & cov)
{
  if (!std::isfinite(cov.u0) || !std::isfinite(cov.v0) || !std::isfinite(cov.w0)) {
    throw InvalidInput("sl2: non-finite covector");
  }
}

}  // namespace

Sl2State sl2_exp(const Sl2Covector & cov, double t)
{
  check_finite(cov);
  const double r = cov.r();
  const ScPair sc = sc_functions(r, 0.5 * t);
  const double C = std::cos(0.5 * cov.w0 * t), S = std::sin(0.5 * cov.w0 * t);

  const double k11 = sc.c + sc.s * cov.u0;
  const double k12 = sc.s * (cov.v0 + cov.w0);
  const double k21 = sc.s * (cov.v0 - cov.w0);
  const double k22 = sc.c - sc.s * cov.u0;

  Sl2Matrix g{};
  g.m11 = k11 * C + k12 * S;
  g.m12 = -k11 * S + k12 * C;
  g.m21 = k21 * C + k22 * S;
  g.m22 = -k21 * S + k22 * C;

  const double c = std::cos(cov.w0 * t), s = std::sin(cov.w0 * t);
  return {g, cov.u0 * c + cov.v0 * s, cov.v0 * c - cov.u0 * s, cov.w0};
}

JacobiCoords sl2_jacobi(const Sl2Covector & cov, const JacobiCoords & init, double t)
{
  check_finite(cov);
  return contact_jacobi(cov.r(), init, t);
}

Sl2Strata sl2_conj_f(const Sl2Covector & cov)
{
  check_finite(cov);
  if (cov.two_h() == 0.0) throw DegenerateCovector("sl2_conj_f: H = 0");
  const double r = cov.r();
  if (r > 0.0) {
    const double q = std::sqrt(r);
    return {r, q * std::cos(0.5 * q) - 2.0 * std::sin(0.5 * q), std::sin(0.5 * q)};
  }
  const double q = std::sqrt(-r);
  if (q < 1e-3) {
    const double q2 = q * q;
    return {r, 1.0 + q2 / 40.0, 1.0 + q2 / 24.0};
  }
  const double sh = std::sinh(0.5 * q), ch = std::cosh(0.5 * q);
  return {r, 12.0 * (q * ch - 2.0 * sh) / (q * q * q), 2.0 * sh / q};
}

Sl2Gradients sl2_conj_grad(const Sl2Covector & cov)
{
  check_finite(cov);
  if (cov.two_h() == 0.0) throw DegenerateCovector("sl2_conj_grad: H = 0");
  const double r = cov.r();
  if (!(r > 0.0)) throw DegenerateCovector("sl2_conj_grad: needs r > 0");
  const double q = std::sqrt(r);
  const Eigen::Vector3d n(cov.u0, cov.v0, -cov.w0);
  return {0.5 * std::sin(0.5 * q) * n, -std::cos(0.5 * q) / (2.0 * q) * n};
}

Eigen::Vector3d sl2_kernel(const Sl2Covector & cov, double tol)
{
  const Sl2Strata f = sl2_conj_f(cov);
  if (!(f.r > 0.0)) throw NotConjugate("sl2_kernel: r <= 0 covectors are never conjugate");
  const double q = std::sqrt(f.r);
  if (std::abs(f.f0) > tol * (q + 2.0) && std::abs(f.f1) > tol) {
    throw NotConjugate("sl2_kernel: covector is not conjugate");
  }
  const double a = q * std::cos(0.5 * q);
  Eigen::Vector3d k(-a * cov.v0, a * cov.u0, 4.0 * std::sin(0.5 * q));
  k.normalize();
  Eigen::Index i;
  k.cwiseAbs().maxCoeff(&i);
  if (k[i] < 0.0) k = -k;
  return k;
}

Eigen::Matrix3d sl2_frame(const Sl2Covector & cov)
{
  const double h = std::sqrt(cov.two_h());
  if (h == 0.0) throw DegenerateCovector("sl2_frame: H = 0");
  Eigen::Matrix3d E;
  E.col(0) << -cov.v0, cov.u0, 0.0;
  E.col(1) << cov.u0, cov.v0, cov.w0;
  E.col(2) << 0.0, 0.0, 1.0;
  return E / h;
}

int sl2_chart(const Sl2Matrix & g)
{
  // The entry dropped is the one whose cofactor is largest.
  const Eigen::Vector4d cof(std::abs(g.m22), std::abs(g.m21), std::abs(g.m12), std::abs(g.m11));
  Eigen::Index i;
  cof.maxCoeff(&i);
  return static_cast<int>(i);
}

Eigen::Vector3d sl2_chart_coords(const Sl2Matrix & g, int chart)
{
  if (chart < 0 || chart > 3) throw InvalidInput("sl2_chart_coords: chart id must be 0..3");
  const Eigen::Vector4d c = g.coords();
  Eigen::Vector3d out;
  for (int i = 0, j = 0; i < 4; ++i) {
    if (i != chart) out[j++] = c[i];
  }
  return out;
}

}  // namespace srgeo
