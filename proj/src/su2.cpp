#include "srgeo/su2.hpp"

#include <cmath>

#include "srgeo/contact.hpp"
#include "srgeo/errors.hpp"

namespace srgeo {

namespace {

// sin(L t / 2) / L with its L -> 0 limit.
double half_sinc(double L, double t)
{
  const double z = L * t;
  if (std::abs(z) < 1e-4) return 0.5 * t * (1.0 - z * z / 24.0 + z * z * z * z / 1920.0);
  return std::sin(0.5 * z) / L;
}

void check_finite(const Su2Covector & cov)
{
  if (!std::isfinite(cov.u0) || !std::isfinite(cov.v0) || !std::isfinite(cov.w0)) {
    throw InvalidInput("su2: non-finite covector");
  }
}

}  // namespace

Su2State su2_exp(const Su2Covector & cov, double t)
{
  check_finite(cov);
  const double L = cov.norm();
  const double sl = half_sinc(L, t);
  const double ch = std::cos(0.5 * L * t);
  const double ph = 0.5 * cov.w0 * t;
  const double cp = std::cos(ph), sp = std::sin(ph);

  // α = e^{-iφ} (ch + i w sl),  β = (u + i v) sl e^{iφ}.
  const double a_re = ch, a_im = cov.w0 * sl;
  Su2Point p{};
  p.alpha_re = cp * a_re + sp * a_im;
  p.alpha_im = cp * a_im - sp * a_re;
  p.beta_re = sl * (cov.u0 * cp - cov.v0 * sp);
  p.beta_im = sl * (cov.u0 * sp + cov.v0 * cp);

  const double c = std::cos(cov.w0 * t), s = std::sin(cov.w0 * t);
  return {p, cov.u0 * c - cov.v0 * s, cov.v0 * c + cov.u0 * s, cov.w0};
}

JacobiCoords su2_jacobi(const Su2Covector & cov, const JacobiCoords & init, double t)
{
  check_finite(cov);
  const double L = cov.norm();
  if (L == 0.0) throw DegenerateCovector("su2_jacobi: |λ0| = 0");
  return contact_jacobi(L * L, init, t);
}

Eigen::Matrix3d su2_conj_matrix(double L)
{
  if (!(L > 0.0)) throw DegenerateCovector("su2_conj_matrix: needs |λ0| > 0");
  return contact_conj_matrix(L * L);
}

Su2Strata su2_conj_f(const Su2Covector & cov)
{
  check_finite(cov);
  if (cov.two_h() == 0.0) throw DegenerateCovector("su2_conj_f: H = 0");
  const double L = cov.norm();
  return {L * std::cos(0.5 * L) - 2.0 * std::sin(0.5 * L), std::sin(0.5 * L)};
}

Su2Gradients su2_conj_grad(const Su2Covector & cov)
{
  check_finite(cov);
  if (cov.two_h() == 0.0) throw DegenerateCovector("su2_conj_grad: H = 0");
  const double L = cov.norm();
  const Eigen::Vector3d n = cov.vec();
  return {-0.5 * std::sin(0.5 * L) * n, std::cos(0.5 * L) / (2.0 * L) * n};
}

Eigen::Vector3d su2_kernel(const Su2Covector & cov, double tol)
{
  const Su2Strata f = su2_conj_f(cov);
  const double L = cov.norm();
  if (std::abs(f.f0) > tol * (L + 2.0) && std::abs(f.f1) > tol) {
    throw NotConjugate("su2_kernel: covector is not conjugate");
  }
  const double a = L * std::cos(0.5 * L);
  Eigen::Vector3d k(-a * cov.v0, a * cov.u0, -4.0 * std::sin(0.5 * L));
  k.normalize();
  Eigen::Index i;
  k.cwiseAbs().maxCoeff(&i);
  if (k[i] < 0.0) k = -k;
  return k;
}

Eigen::Matrix3d su2_frame(const Su2Covector & cov)
{
  const double h = std::sqrt(cov.two_h());
  if (h == 0.0) throw DegenerateCovector("su2_frame: H = 0");
  Eigen::Matrix3d E;
  E.col(0) << -cov.v0, cov.u0, 0.0;
  E.col(1) << cov.u0, cov.v0, cov.w0;
  E.col(2) << 0.0, 0.0, -1.0;
  return E / h;
}

int su2_chart(const Su2Point & p)
{
  Eigen::Index i;
  p.coords().cwiseAbs().maxCoeff(&i);
  return static_cast<int>(i);
}

Eigen::Vector3d su2_chart_coords(const Su2Point & p, int chart)
{
  if (chart < 0 || chart > 3) throw InvalidInput("su2_chart_coords: chart id must be 0..3");
  const Eigen::Vector4d c = p.coords();
  Eigen::Vector3d out;
  for (int i = 0, j = 0; i < 4; ++i) {
    if (i != chart) out[j++] = c[i];
  }
  return out;
}

}  // namespace srgeo
