#include <gtest/gtest.h>

#include "srgeo/verify.hpp"

TEST(Invariants, AllHold)
{
  for (const auto & r : srgeo::verify::run_invariants()) {
    EXPECT_TRUE(r.passed) << r.id << ": measured " << r.measured << " vs " << r.threshold << " " << r.detail;
  }
}

TEST(Invariants, OverrideReplacesUpperBounds)
{
  srgeo::verify::Options opt;
  opt.tolerance_override = 1e-300;
  for (const auto & r : srgeo::verify::run_invariants(opt)) {
    if (r.bound == srgeo::verify::Bound::Upper) EXPECT_LE(r.threshold, 1e-300) << r.id;
  }
}

TEST(Invariants, DifferentSeedsStillPass)
{
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    srgeo::verify::Options opt;
    opt.seed = seed;
    EXPECT_TRUE(srgeo::verify::all_passed(srgeo::verify::run_invariants(opt))) << seed;
    EXPECT_TRUE(srgeo::verify::all_passed(srgeo::verify::run_acceptance(opt))) << seed;
  }
}
