#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "srgeo/errors.hpp"
#include "srgeo/grushin.hpp"
#include "srgeo/numeric/roots.hpp"
#include "srgeo/singularity.hpp"

using namespace srgeo;
using std::numbers::pi;

namespace {

constexpr double kSu2Radii[] = {2.0 * pi, 8.98681891581812836, 4.0 * pi, 15.4505036738754137, 6.0 * pi};

ConjugateRecord first_record(const StructureAdapter & a, const Eigen::VectorXd & dir, double s_max, Stratum want)
{
  for (auto & r : scan_ray(a, dir, s_max)) {
    if (r.stratum == want) return r;
  }
  throw NotConjugate("no record on the requested stratum");
}

}  // namespace

TEST(ScanRay, Su2Radii)
{
  const StructureAdapter a = su2_adapter();
  for (const Eigen::Vector3d & d : {Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(0.3, -0.5, 0.8), Eigen::Vector3d(0, 1, 0)}) {
    const auto recs = scan_ray(a, d.normalized(), 20.0);
    ASSERT_EQ(recs.size(), 5u);
    for (std::size_t i = 0; i < 5; ++i) {
      EXPECT_NEAR(recs[i].s, kSu2Radii[i], 1e-6);
      EXPECT_EQ(recs[i].order, 1);
      EXPECT_EQ(recs[i].stratum, i % 2 == 0 ? Stratum::C1 : Stratum::C0);
    }
  }
}

TEST(ScanRay, EmptyRays)
{
  EXPECT_TRUE(scan_ray(sl2_adapter(), Eigen::Vector3d(1, 0, 0.5).normalized(), 20.0).empty());
  EXPECT_TRUE(scan_ray(grushin_adapter({1.0, 0.0, 0.0}), Eigen::Vector2d(1, 0), 20.0).empty());
}

TEST(ScanRay, Sl2TimelikeRadii)
{
  // Along (0, h, w) with w > h, conjugate times are where sqrt(r) s hits 2 pi k or 2 x tan roots.
  const Eigen::Vector3d d = Eigen::Vector3d(0.0, 0.6, 1.0).normalized();
  const double q = std::sqrt(d[2] * d[2] - d[1] * d[1]);
  const auto recs = scan_ray(sl2_adapter(), d, 20.0);
  ASSERT_GE(recs.size(), 3u);
  EXPECT_NEAR(recs[0].s * q, 2.0 * pi, 1e-8);
  EXPECT_NEAR(recs[1].s * q, 8.98681891581812836, 1e-8);
}

TEST(ScanRays, OrderedAndThreadIndependent)
{
  const StructureAdapter a = su2_adapter();
  std::vector<Fiber> dirs;
  for (int i = 0; i < 6; ++i) dirs.push_back(Eigen::Vector3d(std::cos(i), std::sin(i), 0.1 * i).normalized());
  const auto one = scan_rays(a, dirs, 14.0, 1);
  const auto three = scan_rays(a, dirs, 14.0, 3);
  ASSERT_EQ(one.size(), dirs.size());
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    ASSERT_EQ(one[i].size(), three[i].size());
    for (std::size_t k = 0; k < one[i].size(); ++k) EXPECT_EQ(one[i][k].s, three[i][k].s);
  }
}

TEST(Classify, Su2)
{
  const StructureAdapter a = su2_adapter();
  const Eigen::Vector3d d = Eigen::Vector3d(0.5, 0.2, 0.6).normalized();
  EXPECT_EQ(classify(a, first_record(a, d, 20.0, Stratum::C0)), SingularityClass::Fold);
  EXPECT_EQ(classify(a, first_record(a, d, 20.0, Stratum::C1)), SingularityClass::Tangential);
}

TEST(Classify, Su2EquatorialC0IsNotCertified)
{
  // w0 = 0 on C0: the pairing vanishes, so the fold test cannot certify.
  const StructureAdapter a = su2_adapter();
  const auto rec = first_record(a, Eigen::Vector3d(0, 1, 0), 20.0, Stratum::C0);
  EXPECT_LT(transversality_ratio(a, rec), 1e-10);
  EXPECT_EQ(classify(a, rec), SingularityClass::Undetermined);
}

TEST(Classify, Sl2)
{
  const StructureAdapter a = sl2_adapter();
  const Eigen::Vector3d d = Eigen::Vector3d(0.3, -0.4, 1.0).normalized();
  EXPECT_EQ(classify(a, first_record(a, d, 30.0, Stratum::C0)), SingularityClass::Fold);
  EXPECT_EQ(classify(a, first_record(a, d, 30.0, Stratum::C1)), SingularityClass::Tangential);
}

TEST(Classify, GrushinFifthCase)
{
  const StructureAdapter a = grushin_adapter({1.5, 0.7, 0.0});
  const auto recs = scan_ray(a, Eigen::Vector2d(0.5, 1.0).normalized(), 12.0);
  ASSERT_FALSE(recs.empty());
  for (const auto & r : recs) EXPECT_EQ(classify(a, r), SingularityClass::Fold);
}

TEST(Classify, ScaleInvariantUnderCovectorRescaling)
{
  const StructureAdapter a = su2_adapter();
  auto rec = first_record(a, Eigen::Vector3d(0.4, 0.4, 0.5).normalized(), 20.0, Stratum::C0);
  const SingularityClass base = classify(a, rec);
  rec.kernel_basis.front() *= -3.0;
  EXPECT_EQ(classify(a, rec), base);
}

TEST(FoldWitness, GrushinNearDegeneratePoint)
{
  // At u0 = 0 the kernel is tangent to the locus; folds accumulate there from u0 != 0.
  const GrushinBase b{1.0, 1.0, 0.0};
  const StructureAdapter a = grushin_adapter(b);
  const auto at_zero = first_record(a, Eigen::Vector2d(0, 1), 4.0, Stratum::C1);
  EXPECT_NEAR(at_zero.s, pi, 1e-9);
  EXPECT_NE(classify(a, at_zero), SingularityClass::Fold);

  auto rec = first_record(a, Eigen::Vector2d(0.05, 1.0).normalized(), 4.0, Stratum::C0);
  rec.cls = classify(a, rec);
  ASSERT_EQ(rec.cls, SingularityClass::Fold);
  const FoldWitness w = fold_witness(a, rec, 1e-3);
  EXPECT_LE(w.image_distance, 1e-9);
  EXPECT_GE(w.separation, 1e-3 / 4.0);
  EXPECT_LT((w.lambda1 - rec.covector).norm(), 1e-3 * 2.0);
}

TEST(FoldWitness, Su2)
{
  const StructureAdapter a = su2_adapter();
  auto rec = first_record(a, Eigen::Vector3d(0.2, 0.7, 0.5).normalized(), 10.0, Stratum::C0);
  EXPECT_NEAR(rec.s, 8.98681891581812836, 1e-8);
  rec.cls = classify(a, rec);
  ASSERT_EQ(rec.cls, SingularityClass::Fold);
  const FoldWitness w = fold_witness(a, rec, 1e-3);
  EXPECT_LE(w.image_distance, 1e-9);
  EXPECT_GE(w.separation, 1e-3 / 4.0);
}

TEST(FoldWitness, RejectsNonFold)
{
  const StructureAdapter a = su2_adapter();
  auto rec = first_record(a, Eigen::Vector3d(1, 0, 0), 10.0, Stratum::C1);
  rec.cls = classify(a, rec);
  EXPECT_THROW(fold_witness(a, rec), PreconditionViolation);
}

TEST(SecondOrder, Su2AtTwoPi)
{
  const StructureAdapter a = su2_adapter();
  const auto rec = first_record(a, Eigen::Vector3d(1, 0, 0), 10.0, Stratum::C1);
  EXPECT_NEAR(rec.s, 2.0 * pi, 1e-9);
  const double v = second_order_transversality(a, rec);
  EXPECT_GT(v, 1e-3);
  EXPECT_NEAR(second_order_transversality(a, rec, Eigen::VectorXd(-rec.kernel_basis.front())), v, 1e-4 * v);
}

TEST(SecondOrder, Sl2C1)
{
  const StructureAdapter a = sl2_adapter();
  const auto rec = first_record(a, Eigen::Vector3d(0.2, 0.3, 1.0).normalized(), 30.0, Stratum::C1);
  EXPECT_GT(second_order_transversality(a, rec), 1e-3);
}

TEST(SecondOrder, ZeroAtRegularCovector)
{
  const StructureAdapter a = su2_adapter();
  ConjugateRecord rec;
  rec.covector = Eigen::Vector3d(1.0, 0.5, 0.2);
  rec.order = 1;
  rec.kernel_basis = {Eigen::Vector3d(0, 1, 0)};
  EXPECT_EQ(second_order_transversality(a, rec), 0.0);
}

TEST(Regularity, IsomorphismChecks)
{
  const StructureAdapter su = su2_adapter();
  EXPECT_TRUE(regularity_isomorphism_check(su, first_record(su, Eigen::Vector3d(1, 0, 0), 10.0, Stratum::C1)));
  const StructureAdapter g = grushin_adapter({1.0, 0.8, 0.0});
  EXPECT_TRUE(regularity_isomorphism_check(g, scan_ray(g, Eigen::Vector2d(0.6, 1.0).normalized(), 12.0).at(0)));
  const StructureAdapter sl = sl2_adapter();
  EXPECT_TRUE(
    regularity_isomorphism_check(sl, first_record(sl, Eigen::Vector3d(0.3, 0.1, 1.0).normalized(), 30.0, Stratum::C0)));
}
