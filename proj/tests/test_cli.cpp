#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

namespace {

struct CliRun
{
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args)
{
  args.insert(args.begin(), "srgeo");
  std::vector<const char *> argv;
  for (const auto & a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = srgeo::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string & s)
{
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(CliExpmap, Grushin)
{
  const CliRun r = run({"expmap", "--structure", "grushin", "--alpha", "1", "--base", "0,0", "--covector", "1,3.14159265",
                     "--t", "1", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["results"]["x"].get<double>(), 0.0, 1e-7);
  EXPECT_NEAR(j["results"]["y"].get<double>(), 0.1591549, 1e-7);
  for (const char * k : {"config", "results", "versions", "tolerances"}) EXPECT_TRUE(j.contains(k)) << k;
}

TEST(CliExpmap, Su2)
{
  const CliRun r = run({"expmap", "--structure", "su2", "--covector", "3.14159265,0,0", "--t", "1", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out)["results"];
  EXPECT_NEAR(j["alpha_re"].get<double>(), 0.0, 1e-7);
  EXPECT_NEAR(j["alpha_im"].get<double>(), 0.0, 1e-7);
  EXPECT_NEAR(j["beta_re"].get<double>(), 1.0, 1e-7);
  EXPECT_NEAR(j["beta_im"].get<double>(), 0.0, 1e-7);
}

TEST(CliExpmap, Sl2Identity)
{
  const CliRun r = run({"expmap", "--structure", "sl2", "--covector", "0,0,5", "--t", "1", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 2u);
  EXPECT_EQ(l[0], "m11,m12,m21,m22,u,v,w");
  EXPECT_EQ(l[1], "1,0,0,1,0,0,5");
}

TEST(CliExpmap, ArityAndParseErrors)
{
  EXPECT_EQ(run({"expmap", "--structure", "su2", "--covector", "1,2"}).code, 2);
  EXPECT_EQ(run({"expmap", "--structure", "grushin", "--covector", "1,abc"}).code, 2);
  EXPECT_EQ(run({"expmap", "--structure", "nope", "--covector", "1,2"}).code, 2);
  EXPECT_EQ(run({"expmap"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  const CliRun r = run({"expmap", "--structure", "grushin", "--base", "0", "--covector", "1,2"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("--base"), std::string::npos);
}

TEST(CliScan, Su2Csv)
{
  const CliRun r = run({"conj-scan", "--structure", "su2", "--direction", "1,0,0.5", "--s-max", "20"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto l = lines(r.out);
  ASSERT_GE(l.size(), 5u);
  EXPECT_EQ(l[0], "s,stratum,order,class,k1,k2,k3,f0,f1");
  EXPECT_EQ(l[1].substr(0, l[1].find(',')), "6.28318530718");
}

TEST(CliScan, EmptyRays)
{
  const CliRun sl = run({"conj-scan", "--structure", "sl2", "--direction", "1,0,0.5", "--s-max", "20"});
  ASSERT_EQ(sl.code, 0);
  EXPECT_EQ(lines(sl.out).size(), 1u);
  const CliRun gr = run({"conj-scan", "--structure", "grushin", "--alpha", "1", "--base", "0,0", "--direction", "1,0"});
  ASSERT_EQ(gr.code, 0);
  EXPECT_EQ(lines(gr.out).size(), 1u);
}

TEST(CliScan, GrushinLeavesK3Empty)
{
  const CliRun r = run({"conj-scan", "--structure", "grushin", "--alpha", "1.5", "--base", "0.7,0", "--direction", "0.5,1",
                     "--s-max", "8"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto l = lines(r.out);
  ASSERT_GE(l.size(), 2u);
  std::vector<std::string> cells;
  std::stringstream ss(l[1]);
  for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
  cells.resize(9);
  EXPECT_EQ(cells[3], "Fold");
  EXPECT_TRUE(cells[6].empty());
  EXPECT_TRUE(cells[8].empty());
}

TEST(CliScan, RepeatedDirectionsAndJson)
{
  const CliRun r = run({"conj-scan", "--structure", "su2", "--direction", "1,0,0.5", "--direction", "-1,0.2,0.1",
                     "--s-max", "10", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["results"].size(), 4u);
  EXPECT_EQ(j["results"][2]["ray"].get<int>(), 1);
}

TEST(CliScan, ZeroDirection) { EXPECT_EQ(run({"conj-scan", "--structure", "su2", "--direction", "0,0,0"}).code, 2); }

TEST(CliWitness, Su2Fold)
{
  const CliRun r = run({"witness", "--structure", "su2", "--direction", "1,0,0.5", "--s-max", "10", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto res = nlohmann::json::parse(r.out)["results"];
  ASSERT_EQ(res.size(), 1u);
  EXPECT_LE(res[0]["image_distance"].get<double>(), 1e-9);
  EXPECT_GE(res[0]["separation"].get<double>(), 2.5e-4);
}

TEST(CliTrig, Csv)
{
  const CliRun r = run({"trig", "--alpha", "2", "--points", "3"});
  ASSERT_EQ(r.code, 0);
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 4u);
  EXPECT_EQ(l[0], "t,sin,cos");
  EXPECT_EQ(l[2], "2.62205755429,0,-1");
}

TEST(CliOutput, WritesFile)
{
  const std::string path = ::testing::TempDir() + "srgeo_cli_out.csv";
  const CliRun r = run({"trig", "--alpha", "1", "--points", "2", "--out", path});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::string first;
  std::getline(in, first);
  EXPECT_EQ(first, "t,sin,cos");
  std::remove(path.c_str());
}

TEST(CliSelftest, PassesAndIsDeterministic)
{
  const CliRun a = run({"selftest", "--seed", "42"});
  const CliRun b = run({"selftest", "--seed", "42"});
  EXPECT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
}

TEST(CliSelftest, InjectedToleranceFails) { EXPECT_EQ(run({"selftest", "--tolerance", "1e-15"}).code, 1); }

TEST(CliScan, DeterministicOutput)
{
  const std::vector<std::string> args{"conj-scan", "--structure", "sl2", "--direction", "0.2,0.1,1", "--s-max", "25"};
  EXPECT_EQ(run(args).out, run(args).out);
}
