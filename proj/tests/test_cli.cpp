#include "cli_app.hpp"

#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

using namespace chebydev;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "chebydev");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST(Cli, ConstructTdCarriesExactLeadingCoefficient) {
  const auto r = run({"construct", "--family", "td", "--d", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["tool"], "chebydev");
  EXPECT_EQ(j["command"], "construct");
  EXPECT_EQ(j["leading_coefficient"], "896");
  EXPECT_EQ(j["leading_factorization"], "2^7 * 7");
}

TEST(Cli, ConstructR5Constants) {
  const auto r = run({"construct", "--family", "r5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  const double b = j["constants"]["b"].get<double>();
  EXPECT_NEAR(j["deviation"].get<double>(), 1.0 / (729.0 * b), 1e-15);
  EXPECT_EQ(j["constants"]["real_roots"].size(), 4u);
}

TEST(Cli, RejectsSmallDimension) {
  EXPECT_EQ(run({"construct", "--family", "td", "--d", "2"}).code, 2);
  EXPECT_EQ(run({"verify", "--suite", "signatures", "--d", "2..4"}).code, 2);
  EXPECT_EQ(run({"rd-table", "--max-d", "2"}).code, 2);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"verify", "--suite", "nonsense", "--d", "3"}).code, 2);
  EXPECT_EQ(run({"approx", "--monomial", "1,x,1", "--domain", "simplex", "--degree", "2"}).code, 2);
  EXPECT_EQ(run({"surface", "--poly", "u7"}).code, 2);
}

TEST(Cli, VerifyAllLowDimensionsPasses) {
  const auto r = run({"verify", "--suite", "all", "--d", "3..5"});
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = json::parse(r.out);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_EQ(j["summary"]["failed"], 0);
  EXPECT_GT(j["summary"]["asserting"].get<int>(), 40);
}

TEST(Cli, VerifySupnormAboveFiveIsConjectureMode) {
  const auto r = run({"verify", "--suite", "supnorm", "--d", "6"});
  ASSERT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  bool seen = false;
  for (const auto& c : j["checks"])
    if (c["name"] == "td_bound_conjecture") {
      seen = true;
      EXPECT_FALSE(c["asserting"].get<bool>());
    }
  EXPECT_TRUE(seen);
}

TEST(Cli, VerifyCombiWideRange) {
  const auto r = run({"verify", "--suite", "combi", "--d", "3..15"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["summary"]["failed"], 0);
}

TEST(Cli, ApproxProductOnSimplex) {
  const auto r = run({"approx", "--monomial", "1,1,1", "--domain", "simplex", "--degree", "2", "--grid", "32"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_TRUE(j["converged"].get<bool>());
  EXPECT_NEAR(j["deviation"].get<double>(), 1.0 / 72, 5e-4);
  EXPECT_LE(j["gap"].get<double>(), 1e-8);
  EXPECT_TRUE(j["gap_monotone"].is_boolean());
}

TEST(Cli, RdTableCsv) {
  const auto r = run({"rd-table", "--max-d", "11"});
  ASSERT_EQ(r.code, 0);
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 11u);  // comment, header, 9 rows
  EXPECT_EQ(ls[0].front(), '#');
  EXPECT_EQ(ls[1], "d,r_d,factorization,methods_agree");
  EXPECT_EQ(ls[2], "3,72,2^3 * 3^2,true");
  EXPECT_EQ(ls[10], "11,6939874934784,2^14 * 3^3 * 11^2 * 317 * 409,true");
}

TEST(Cli, SurfaceStaysInUnitBand) {
  const auto r = run({"surface", "--poly", "u5", "--grid", "3"});
  ASSERT_EQ(r.code, 0);
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 12u);
  EXPECT_EQ(ls[1], "x,y,value");
  for (std::size_t i = 2; i < ls.size(); ++i) {
    const double v = std::stod(ls[i].substr(ls[i].rfind(',') + 1));
    EXPECT_LE(std::abs(v), 1.0 + 1e-9) << ls[i];
  }
}

TEST(Cli, OutputIsDeterministic) {
  const std::vector<std::string> a = {"approx", "--monomial", "1,1,1", "--domain", "simplex", "--degree", "2",
                                      "--grid", "24"};
  EXPECT_EQ(run(a).out, run(a).out);
  EXPECT_EQ(run({"rd-table", "--max-d", "9", "--format", "json"}).out,
            run({"rd-table", "--max-d", "9", "--format", "json"}).out);
}
