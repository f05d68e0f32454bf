#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/LU>

#include "srgeo/errors.hpp"
#include "srgeo/grushin.hpp"
#include "srgeo/numeric/differentiation.hpp"
#include "srgeo/numeric/rank.hpp"
#include "srgeo/numeric/roots.hpp"
#include "srgeo/oracle.hpp"

using namespace srgeo;
using std::numbers::pi;

namespace {

constexpr double kTanRoot1 = 4.49340945790906418;
const numeric::OdeOptions kTight{.rel_tol = 1e-12, .abs_tol = 1e-14};

Eigen::Vector2d fd_conj_grad(const GrushinBase & b, const GrushinCovector & c)
{
  auto f = [&](const Eigen::VectorXd & l) { return grushin_conj_f(b, {l[0], l[1]}); };
  return numeric::fd_gradient(f, Eigen::Vector2d(c.u0, c.v0), 1e-6);
}

// First root of f in v0 > lo with u0 held fixed.
GrushinCovector root_in_v(const GrushinBase & b, double u0, double lo, double hi)
{
  const auto roots = numeric::find_roots([&](double v0) { return grushin_conj_f(b, {u0, v0}); }, lo, hi, 800);
  if (roots.empty()) throw NotConjugate("no root in range");
  return {u0, roots.front()};
}

}  // namespace

TEST(GrushinExp, ConstantGeodesicAtZeroEnergy)
{
  const GrushinState s = grushin_exp({1.0, 1.0, 0.0}, {0.0, 0.0}, 1.0);
  EXPECT_EQ(s.x, 1.0);
  EXPECT_EQ(s.y, 0.0);
}

TEST(GrushinExp, EuclideanLine)
{
  const GrushinState s = grushin_exp({1.0, 0.0, 0.0}, {1.0, 0.0}, 1.0);
  EXPECT_NEAR(s.x, 1.0, 1e-15);
  EXPECT_NEAR(s.y, 0.0, 1e-15);
}

TEST(GrushinExp, HandEvaluatedEndpoint)
{
  const GrushinState s = grushin_exp({1.0, 0.0, 0.0}, {1.0, pi}, 1.0);
  EXPECT_NEAR(s.x, 0.0, 1e-12);
  EXPECT_NEAR(s.y, 1.0 / (2.0 * pi), 1e-12);
  EXPECT_NEAR(s.y, 0.1591549, 1e-7);
}

TEST(GrushinExp, MatchesHamiltonianFlow)
{
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (double a : {1.0, 1.5, 2.0, 3.0}) {
    for (int i = 0; i < 10; ++i) {
      const GrushinBase b{a, 1.5 * U(rng), U(rng)};
      const GrushinCovector c{3.0 * U(rng), 4.0 * U(rng)};
      const auto tr = oracle::grushin_flow(b, c, 1.0, kTight);
      for (double t = 0.0; t <= 1.0; t += 0.05) {
        const GrushinState s = grushin_exp(b, c, t);
        const auto y = tr(t);
        EXPECT_NEAR(s.x, y[0], 1e-8);
        EXPECT_NEAR(s.y, y[1], 1e-8);
        EXPECT_NEAR(s.u, y[2], 1e-8);
      }
    }
  }
}

TEST(GrushinExp, NegativeTime)
{
  const GrushinBase b{2.0, 0.3, 0.1};
  const GrushinCovector c{0.4, 1.7};
  const auto tr = oracle::grushin_flow(b, {-c.u0, -c.v0}, 0.8, kTight);
  const GrushinState s = grushin_exp(b, c, -0.8);
  EXPECT_NEAR(s.x, tr(0.8)[0], 1e-9);
  EXPECT_NEAR(s.y, tr(0.8)[1], 1e-9);
}

TEST(GrushinDexp, MatchesCentralDifferences)
{
  const GrushinBase b{1.0, 0.0, 0.0};
  const GrushinCovector c{1.0, pi};
  auto F = [&](const Eigen::VectorXd & z) {
    const auto s = grushin_exp(b, {z[0], z[1]}, 1.0);
    return Eigen::VectorXd(Eigen::Vector2d(s.x, s.y));
  };
  const Eigen::MatrixXd J = numeric::fd_jacobian(F, Eigen::Vector2d(c.u0, c.v0), 1e-5);
  const Eigen::Matrix2d A = grushin_dexp(b, c);
  EXPECT_LT((J - A).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(GrushinDexp, FlatLimit)
{
  const Eigen::Matrix2d A = grushin_dexp({1.0, 0.0, 0.0}, {1.0, 1e-7});
  EXPECT_NEAR(A(0, 0), 1.0, 1e-9);
  EXPECT_NEAR(A(0, 1), 0.0, 1e-6);
  const Eigen::Matrix2d B = grushin_dexp({1.0, 0.0, 0.0}, {1.0, 0.0});
  EXPECT_NEAR(B(0, 0), 1.0, 1e-15);
}

TEST(GrushinDexp, SingularAtConjugateCovector)
{
  const GrushinBase b{1.0, 0.0, 0.0};
  const GrushinCovector c{1.0, kTanRoot1};
  const Eigen::Matrix2d A = grushin_dexp(b, c);
  EXPECT_LT(std::abs(A.determinant()), 1e-7 * A.squaredNorm());
}

TEST(GrushinJacobi, ZeroInitialData)
{
  const auto J = grushin_jacobi({1.5, 0.4, 0.0}, {0.3, 1.2}, Eigen::Vector4d::Zero(), 0.7);
  EXPECT_EQ(J.norm(), 0.0);
}

TEST(GrushinJacobi, InitialConditionReproduced)
{
  const Eigen::Vector4d init(0.3, -0.7, 0.25, 1.1);
  for (double x0 : {0.0, 0.8}) {
    const auto J = grushin_jacobi({2.0, x0, 0.0}, {0.5, 1.3}, init, 0.0);
    EXPECT_LT((J - init).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(GrushinJacobi, MatchesNumericIntegration)
{
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (double a : {1.0, 1.5, 2.0, 3.0}) {
    for (int i = 0; i < 5; ++i) {
      const GrushinBase b{a, 1.5 * U(rng), 0.0};
      const GrushinCovector c{3.0 * U(rng), 0.5 + 2.0 * std::abs(U(rng))};
      Eigen::Vector4d init(U(rng), U(rng), U(rng), U(rng));
      const auto J = grushin_jacobi(b, c, init, 1.0);
      const auto N = oracle::grushin_jacobi_numeric(b, c, init, 1.0, kTight);
      EXPECT_LT((J - N).cwiseAbs().maxCoeff(), 1e-8);
    }
  }
  const Eigen::Vector4d pb(0.0, 1.0, 0.0, 0.0);
  const GrushinBase b{1.5, 0.6, 0.0};
  const GrushinCovector c{0.8, 1.9};
  EXPECT_NEAR(grushin_jacobi(b, c, pb, 0.9)[3], oracle::grushin_jacobi_numeric(b, c, pb, 0.9, kTight)[3], 1e-8);
}

TEST(GrushinJacobi, StraightLineFallback)
{
  const GrushinBase b{1.0, 0.5, 0.0};
  const Eigen::Vector4d init(0.2, 0.4, -0.1, 0.3);
  const auto J = grushin_jacobi(b, {1.0, 0.0}, init, 0.6);
  const auto N = oracle::grushin_jacobi_numeric(b, {1.0, 0.0}, init, 0.6, kTight);
  EXPECT_LT((J - N).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(GrushinConjF, Examples)
{
  EXPECT_NEAR(grushin_conj_f({1.0, 0.0, 0.0}, {1.0, kTanRoot1}), 0.0, 1e-8);
  EXPECT_NEAR(grushin_conj_f({1.0, 1.0, 0.0}, {0.0, pi}), 0.0, 1e-10);
  EXPECT_NEAR(grushin_conj_f({1.0, 0.0, 0.0}, {1.0, 1.0}), std::cos(1.0) - std::sin(1.0), 1e-12);
  EXPECT_NEAR(grushin_conj_f({1.0, 0.0, 0.0}, {1.0, 1.0}), -0.301168678939757, 1e-12);
}

TEST(GrushinConjF, ZeroEnergy) { EXPECT_THROW(grushin_conj_f({1.0, 0.0, 0.0}, {0.0, 2.0}), DegenerateCovector); }

TEST(GrushinConjGrad, NonzeroOnLocus)
{
  const Eigen::Vector2d g = grushin_conj_grad({1.0, 0.0, 0.0}, {1.0, kTanRoot1});
  EXPECT_GT(g.norm(), 1e-3);
}

TEST(GrushinConjGrad, MatchesFiniteDifferences)
{
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (double a : {1.0, 1.5, 2.0, 3.0}) {
    for (int i = 0; i < 10; ++i) {
      const GrushinBase b{a, 1.5 * U(rng), 0.0};
      const GrushinCovector c{3.0 * U(rng), 0.3 + 3.0 * std::abs(U(rng))};
      const Eigen::Vector2d g = grushin_conj_grad(b, c);
      const Eigen::Vector2d fd = fd_conj_grad(b, c);
      EXPECT_LT((g - fd).norm(), 1e-5 * std::max(1.0, fd.norm()));
    }
  }
}

TEST(GrushinConjGrad, OnLocusFormulaMatchesFiniteDifferences)
{
  // Generic fifth-case roots and roots on the u0 + x0 = 0 branch.
  for (double a : {1.0, 1.5, 2.0}) {
    for (double x0 : {0.5, 1.0, -0.8}) {
      const GrushinBase b{a, x0, 0.0};
      for (double u0 : {0.7, -x0}) {
        const GrushinCovector c = root_in_v(b, u0, 0.3, 15.0);
        ASSERT_NEAR(grushin_conj_f(b, c), 0.0, 1e-9);
        const Eigen::Vector2d g = grushin_conj_grad_on_locus(b, c);
        const Eigen::Vector2d fd = fd_conj_grad(b, c);
        EXPECT_LT((g - fd).norm(), 1e-5 * fd.norm()) << a << " " << x0 << " " << u0;
      }
    }
  }
}

TEST(GrushinKernel, CaseSpecificDirections)
{
  const Eigen::Vector2d k2 = grushin_kernel({1.0, 1.0, 0.0}, {0.0, pi});
  EXPECT_NEAR(std::abs(k2[0]), 1.0, 1e-12);
  EXPECT_NEAR(k2[1], 0.0, 1e-12);
  const Eigen::Vector2d k4 = grushin_kernel({1.0, 0.0, 0.0}, {1.0, kTanRoot1});
  EXPECT_NEAR(k4[0], 0.0, 1e-12);
  EXPECT_NEAR(std::abs(k4[1]), 1.0, 1e-12);
}

TEST(GrushinKernel, AnnihilatedByDifferential)
{
  for (double a : {1.0, 2.0}) {
    const GrushinBase b{a, 0.9, 0.0};
    const GrushinCovector c = root_in_v(b, 0.6, 0.3, 15.0);
    const Eigen::Matrix2d A = grushin_dexp(b, c);
    EXPECT_LT((A * grushin_kernel(b, c)).norm(), 1e-7 * A.norm());
    EXPECT_EQ(numeric::rank_nullspace(A).numeric_rank, 1);
  }
}

TEST(GrushinKernel, NotConjugate)
{
  EXPECT_THROW(grushin_kernel({1.0, 0.0, 0.0}, {1.0, 1.0}), NotConjugate);
  EXPECT_THROW(grushin_kernel({1.0, 0.0, 0.0}, {1.0, 0.0}), NotConjugate);
}

TEST(GrushinBase, RejectsAlphaBelowOne) { EXPECT_THROW(grushin_exp({0.5, 0.0, 0.0}, {1.0, 1.0}, 1.0), InvalidInput); }
