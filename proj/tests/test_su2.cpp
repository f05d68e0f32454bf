#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/LU>

#include "srgeo/contact.hpp"
#include "srgeo/errors.hpp"
#include "srgeo/numeric/differentiation.hpp"
#include "srgeo/numeric/rank.hpp"
#include "srgeo/oracle.hpp"
#include "srgeo/singularity.hpp"
#include "srgeo/su2.hpp"

using namespace srgeo;
using std::numbers::pi;

namespace {

constexpr double kRadius2 = 8.98681891581812836;   // 2 x first positive root of tan t = t
const numeric::OdeOptions kTight{.rel_tol = 1e-12, .abs_tol = 1e-14};

Su2Covector on_sphere(double radius, double theta, double w_fraction)
{
  const double h = radius * std::sqrt(1.0 - w_fraction * w_fraction);
  return {h * std::cos(theta), h * std::sin(theta), radius * w_fraction};
}

Eigen::VectorXd random_init(std::mt19937_64 & rng)
{
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  Eigen::VectorXd v(6);
  for (int i = 0; i < 6; ++i) v[i] = U(rng);
  return v;
}

}  // namespace

TEST(Su2Exp, ZeroEnergyIsIdentity)
{
  const Su2State s = su2_exp({0.0, 0.0, 3.0}, 1.0);
  EXPECT_NEAR(s.point.alpha_re, 1.0, 1e-15);
  EXPECT_NEAR(s.point.alpha_im, 0.0, 1e-15);
  EXPECT_NEAR(std::hypot(s.point.beta_re, s.point.beta_im), 0.0, 1e-15);
}

TEST(Su2Exp, HandEvaluatedEndpoints)
{
  const Su2State half = su2_exp({pi, 0.0, 0.0}, 1.0);
  EXPECT_NEAR(half.point.coords()[0], 0.0, 1e-14);
  EXPECT_NEAR(half.point.coords()[2], 1.0, 1e-14);
  const Su2State full = su2_exp({2.0 * pi, 0.0, 0.0}, 1.0);
  EXPECT_LT((full.point.coords() - Eigen::Vector4d(-1, 0, 0, 0)).norm(), 1e-14);
}

TEST(Su2Exp, MatchesMatrixOde)
{
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> U(-6.0, 6.0);
  for (int i = 0; i < 20; ++i) {
    const Su2Covector c{U(rng), U(rng), U(rng)};
    const auto tr = oracle::su2_flow(c, 1.0, kTight);
    for (double t = 0.0; t <= 1.0; t += 0.1) {
      const Su2State s = su2_exp(c, t);
      EXPECT_LT((s.point.coords() - tr(t).head<4>()).cwiseAbs().maxCoeff(), 1e-9);
      EXPECT_NEAR(s.u, tr(t)[4], 1e-9);
      EXPECT_NEAR(s.v, tr(t)[5], 1e-9);
    }
  }
}

TEST(Su2Jacobi, Examples)
{
  const Su2Covector c{1.2, -0.4, 2.0};
  EXPECT_EQ(su2_jacobi(c, Eigen::VectorXd::Zero(6), 0.8).norm(), 0.0);
  Eigen::VectorXd init = Eigen::VectorXd::Zero(6);
  init[1] = 0.7;
  init[4] = -0.2;
  for (double t : {0.3, 1.0, 2.5}) EXPECT_NEAR(su2_jacobi(c, init, t)[4], 0.7 * t - 0.2, 1e-13);
}

TEST(Su2Jacobi, MatchesNumericIntegration)
{
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> U(-5.0, 5.0);
  for (int i = 0; i < 20; ++i) {
    const Su2Covector c{U(rng), U(rng), U(rng)};
    const auto init = random_init(rng);
    const double L = c.norm();
    EXPECT_LT((su2_jacobi(c, init, 1.0) - oracle::contact_jacobi_numeric(L * L, init, 1.0, kTight)).cwiseAbs().maxCoeff(),
              1e-9);
  }
}

TEST(Su2ConjMatrix, SmallRadiusLimit)
{
  Eigen::Matrix3d lim;
  lim << 1, 0, -0.5, 0, 1, 0, 0.5, 0, -1.0 / 6.0;
  EXPECT_LT((su2_conj_matrix(1e-6) - lim).cwiseAbs().maxCoeff(), 1e-11);
  EXPECT_LT((contact_conj_matrix(0.0) - lim).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_GT(std::abs(lim.determinant()), 1e-3);
}

TEST(Su2ConjMatrix, RankDropAtTwoPi)
{
  const auto r = numeric::rank_nullspace(su2_conj_matrix(2.0 * pi));
  EXPECT_EQ(r.numeric_rank, 2);
  EXPECT_NEAR(std::abs(r.nullspace_basis.at(0)[0]), 1.0, 1e-12);
}

TEST(Su2ConjMatrix, InvertibleAtPi) { EXPECT_GT(std::abs(su2_conj_matrix(pi).determinant()), 1e-2); }

TEST(Su2ConjF, Examples)
{
  EXPECT_NEAR(su2_conj_f({2.0 * pi, 0.0, 0.0}).f1, 0.0, 1e-15);
  EXPECT_NEAR(su2_conj_f(on_sphere(kRadius2, 0.3, 0.4)).f0, 0.0, 1e-7);
  const Su2Strata at_pi = su2_conj_f({pi, 0.0, 0.0});
  EXPECT_NEAR(at_pi.f0, -2.0, 1e-14);
  EXPECT_NEAR(at_pi.f1, 1.0, 1e-14);
}

TEST(Su2ConjF, ZeroEnergy) { EXPECT_THROW(su2_conj_f({0.0, 0.0, 1.0}), DegenerateCovector); }

TEST(Su2Kernel, C1Direction)
{
  const Eigen::Vector3d k = su2_kernel({2.0 * pi, 0.0, 0.0});
  EXPECT_NEAR(std::abs(k[1]), 1.0, 1e-12);
  EXPECT_NEAR(k[0], 0.0, 1e-12);
  EXPECT_NEAR(k[2], 0.0, 1e-12);
}

TEST(Su2Kernel, C0HasVerticalComponent)
{
  const Eigen::Vector3d k = su2_kernel(on_sphere(kRadius2, 1.1, 0.5));
  EXPECT_GT(std::abs(k[2]), 1e-2);
}

TEST(Su2Kernel, NotConjugate) { EXPECT_THROW(su2_kernel({pi, 0.0, 0.0}), NotConjugate); }

TEST(Su2Kernel, FrameMapsConjugateMatrixNullspace)
{
  // The nullspace of the conjugate matrix, pushed through the frame, is the kernel formula.
  for (const Su2Covector & c : {on_sphere(kRadius2, 0.7, 0.35), on_sphere(2.0 * pi, -0.4, 0.6)}) {
    const auto ns = numeric::rank_nullspace(su2_conj_matrix(c.norm()), 1e-7).nullspace_basis;
    ASSERT_EQ(ns.size(), 1u);
    const Eigen::Vector3d mapped = (su2_frame(c) * ns[0]).normalized();
    const Eigen::Vector3d k = su2_kernel(c);
    EXPECT_NEAR(std::abs(mapped.dot(k)), 1.0, 1e-10);
  }
}

TEST(Su2Kernel, AnnihilatedByFiniteDifferenceJacobian)
{
  const StructureAdapter a = su2_adapter();
  for (const Su2Covector & c : {on_sphere(kRadius2, 0.2, 0.3), on_sphere(4.0 * pi, 2.0, -0.5)}) {
    const Eigen::MatrixXd J = fd_dexp(a, c.vec());
    EXPECT_LT((J * su2_kernel(c)).norm(), 1e-6 * J.norm());
  }
}

TEST(Su2ConjGrad, RadialOnStrata)
{
  const Su2Covector c0 = on_sphere(kRadius2, 0.9, 0.45);
  const Su2Gradients g0 = su2_conj_grad(c0);
  EXPECT_GT(g0.df0.norm(), 1e-3);
  EXPECT_NEAR(std::abs(g0.df0.normalized().dot(c0.vec().normalized())), 1.0, 1e-12);
  const Su2Covector c1 = on_sphere(2.0 * pi, -1.3, 0.2);
  const Su2Gradients g1 = su2_conj_grad(c1);
  EXPECT_GT(g1.df1.norm(), 1e-3);
  EXPECT_NEAR(std::abs(g1.df1.normalized().dot(c1.vec().normalized())), 1.0, 1e-12);
}

TEST(Su2ConjGrad, PairingWithKernelOnC0)
{
  // Exact value with the kernel normalized as |λ|cos(|λ|/2)(-v, u, 0) - 4 sin(|λ|/2) e_w.
  for (double wf : {0.3, -0.6}) {
    const Su2Covector c = on_sphere(kRadius2, 0.5, wf);
    const double L = c.norm();
    const Eigen::Vector3d k(-L * std::cos(L / 2) * c.v0, L * std::cos(L / 2) * c.u0, -4.0 * std::sin(L / 2));
    const double pairing = su2_conj_grad(c).df0.dot(k);
    EXPECT_NEAR(pairing, 2.0 * c.w0 * std::pow(std::sin(L / 2), 2), 1e-8);
    EXPECT_GT(std::abs(pairing), 1e-2);
  }
}

TEST(Su2ConjGrad, MatchesFiniteDifferences)
{
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> U(-5.0, 5.0);
  for (int i = 0; i < 20; ++i) {
    const Su2Covector c{U(rng), U(rng), U(rng)};
    const Su2Gradients g = su2_conj_grad(c);
    auto f0 = [](const Eigen::VectorXd & l) { return su2_conj_f({l[0], l[1], l[2]}).f0; };
    auto f1 = [](const Eigen::VectorXd & l) { return su2_conj_f({l[0], l[1], l[2]}).f1; };
    EXPECT_LT((g.df0 - numeric::fd_gradient(f0, c.vec())).norm(), 1e-6 * std::max(1.0, g.df0.norm()));
    EXPECT_LT((g.df1 - numeric::fd_gradient(f1, c.vec())).norm(), 1e-6 * std::max(1.0, g.df1.norm()));
  }
}

TEST(Su2Chart, RoundTripThroughEveryChart)
{
  const Su2Point p = su2_exp({1.3, -0.7, 2.2}, 1.0).point;
  const int chart = su2_chart(p);
  EXPECT_GE(chart, 0);
  EXPECT_LE(chart, 3);
  const Eigen::Vector3d x = su2_chart_coords(p, chart);
  EXPECT_TRUE(x.allFinite());
  EXPECT_THROW(su2_chart_coords(p, 4), InvalidInput);
}
