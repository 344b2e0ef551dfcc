#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qdeg/cli.hpp"

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "qdeg");
  std::ostringstream out, err;
  Run r;
  r.code = qdeg::run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) v.push_back(line);
  return v;
}

std::size_t data_rows(const std::string& text) {
  std::size_t count = 0;
  for (const auto& l : lines(text)) count += !l.empty() && l[0] != '#';
  return count - 1;  // header
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("qdeg_cli_test_" + name);
}

}  // namespace

TEST(Cli, HelpAndUsageErrors) {
  const auto help = cli({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("simulate"), std::string::npos);
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
  EXPECT_EQ(cli({"simulate", "--family", "or", "--n", "4", "--mode", "guess"}).code, 2);
  EXPECT_EQ(cli({"simulate", "--n", "4"}).code, 2);
  EXPECT_EQ(cli({"simulate", "--family", "bogus", "--n", "4"}).code, 2);
  EXPECT_EQ(cli({"degree", "--family", "or", "--n", "8", "--check", "sideways"}).code, 2);
  EXPECT_EQ(cli({"degree", "--family", "or", "--n", "8", "--eps", "0.6"}).code, 2);
}

TEST(CliSimulate, EnumeratesEveryInput) {
  const auto r = cli({"simulate", "--family", "or", "--n", "6", "--eps", "0.1", "--mode", "enumerate"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out)[0], "input,weight,expected,p_one,error_mass,max_grover,max_verify,max_total,leaves,pruned_mass");
  EXPECT_EQ(data_rows(r.out), 64U);
  EXPECT_NE(r.out.find("# passed=1"), std::string::npos);
  EXPECT_NE(r.out.find("query_ok=1"), std::string::npos);
}

TEST(CliSimulate, ParityAndJson) {
  const auto r = cli({"simulate", "--family", "parity", "--n", "5", "--eps", "0.2", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["inputs"].size(), 32U);
  EXPECT_LE(doc["worst_error"].get<double>(), 0.2 + 1e-9);
  EXPECT_EQ(doc["t"], 3);
  EXPECT_TRUE(doc["passed"].get<bool>());
}

TEST(CliSimulate, SampleModeIsDeterministicPerSeed) {
  const std::vector<std::string> args{"simulate", "--family", "majority", "--n", "7", "--mode", "sample", "--seed", "42"};
  const auto a = cli(args), b = cli(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(data_rows(a.out), 128U);

  const auto one = cli({"simulate", "--family", "or", "--n", "8", "--mode", "sample", "--input", "00010000"});
  ASSERT_EQ(one.code, 0) << one.err;
  EXPECT_NE(one.out.find("# search side=ones"), std::string::npos);
}

TEST(CliSimulate, EnumerationBudget) {
  const auto big = cli({"simulate", "--family", "or", "--n", "11"});
  EXPECT_EQ(big.code, 2);
  EXPECT_NE(big.err.find("resource limit"), std::string::npos);
  EXPECT_EQ(cli({"simulate", "--family", "or", "--n", "11", "--input", "00000000001"}).code, 0);

  ::setenv("QDEG_BUDGET", "3", 1);
  EXPECT_EQ(qdeg::default_enumeration_budget(), 3);
  EXPECT_EQ(cli({"simulate", "--family", "or", "--n", "4"}).code, 2);
  ::setenv("QDEG_BUDGET", "junk", 1);
  EXPECT_EQ(qdeg::default_enumeration_budget(), qdeg::kDefaultEnumerationBudget);
  ::unsetenv("QDEG_BUDGET");
}

TEST(CliExtract, OrFour) {
  const auto r = cli({"extract", "--family", "or", "--n", "4", "--eps", "0.1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out)[0], "section,key,value");
  EXPECT_EQ(r.out.find("multilinear,{},"), std::string::npos);  // p(0000) = 0 exactly
  EXPECT_NE(r.out.find("multilinear,1,"), std::string::npos);
  EXPECT_NE(r.out.find("summary,degree_bound_ok,1"), std::string::npos);
  EXPECT_NE(r.out.find("summary,passed,1"), std::string::npos);

  const auto j = cli({"extract", "--family", "or", "--n", "4", "--eps", "0.1", "--json"});
  const auto doc = nlohmann::json::parse(j.out);
  EXPECT_EQ(doc["multilinear"]["basis"], "multilinear-subset");
  EXPECT_EQ(doc["univariate"]["basis"], "chebyshev");
  EXPECT_LE(doc["degree"].get<int>(), doc["two_T"].get<int>());
  EXPECT_TRUE(doc["approximation_ok"].get<bool>());
}

TEST(CliExtract, AndMirrorsOr) {
  const auto o = nlohmann::json::parse(cli({"extract", "--family", "or", "--n", "4", "--json"}).out);
  const auto a = nlohmann::json::parse(cli({"extract", "--family", "and", "--n", "4", "--json"}).out);
  EXPECT_TRUE(a["passed"].get<bool>());
  EXPECT_EQ(a["two_T"], o["two_T"]);
  EXPECT_EQ(a["degree"], o["degree"]);
}

TEST(CliExtract, ConstantSpectrumFile) {
  const auto path = temp_file("constant.txt");
  {
    std::ofstream f(path);
    f << "n= 3\n1 1 1 1\n";
  }
  const auto r = cli({"extract", "--spectrum-file", path.string(), "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["degree"], 0);
  EXPECT_EQ(doc["two_T"], 0);
  std::filesystem::remove(path);
  EXPECT_EQ(cli({"extract", "--spectrum-file", path.string()}).code, 2);
}

TEST(CliDegree, Rows) {
  const auto r = cli({"degree", "--family", "or", "--n", "16", "--eps", "0.01"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 2U);
  EXPECT_EQ(ls[0], "family,n,t,eps,deg_eps,deg_13,ratio,e_star");
  EXPECT_EQ(ls[1].rfind("or,16,1,0.01,", 0), 0U);

  const auto p = nlohmann::json::parse(cli({"degree", "--family", "parity", "--n", "8", "--eps", "0.4", "--json"}).out);
  EXPECT_EQ(p["rows"][0]["deg_eps"], 8);

  const auto grid = cli({"degree", "--family", "or", "--n", "8,16", "--eps", "0.3,0.1", "--workers", "2"});
  const auto gl = lines(grid.out);
  ASSERT_EQ(gl.size(), 5U);
  EXPECT_EQ(gl[1].rfind("or,8,1,0.3,", 0), 0U);
  EXPECT_EQ(gl[4].rfind("or,16,1,0.1,", 0), 0U);
}

TEST(CliDegree, Checks) {
  const auto r = cli({"degree", "--family", "threshold:2", "--n", "6", "--eps", "0.1", "--check", "lower,upper"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("# passed=1"), std::string::npos);
  EXPECT_NE(lines(r.out)[0].find("lower_m,lower_passed,two_T,poly_ok,upper_passed"), std::string::npos);
}

TEST(CliDegree, BandAndThreshold) {
  const auto band = cli({"degree", "--family", "or", "--band", "--n", "8,16", "--eps", "0.3333333333,0.0625"});
  ASSERT_EQ(band.code, 0) << band.err;
  EXPECT_NE(band.out.find("passed=1"), std::string::npos);
  EXPECT_EQ(cli({"degree", "--family", "or", "--band", "--n", "8", "--eps", "0.001"}).code, 2);

  const auto pat = nlohmann::json::parse(cli({"degree", "--threshold-band", "--tau", "1,2", "--n", "16", "--json"}).out);
  EXPECT_EQ(pat["rows"].size(), 2U);
}

TEST(Cli, OutFile) {
  const auto path = temp_file("out.csv");
  const auto r = cli({"degree", "--family", "and", "--n", "4", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_EQ(text.str().rfind("family,n,t,eps", 0), 0U);
  std::filesystem::remove(path);
}
