#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <gtest/gtest.h>

#include "thetasum/errors.hpp"

namespace thetasum::cli {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "thetasum");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream ss(text);
  while (std::getline(ss, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("thetasum_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::filesystem::path dir_;
};

TEST(ParseComplex, Forms) {
  EXPECT_EQ(parse_complex("0.5"), Complex(0.5, 0.0));
  EXPECT_EQ(parse_complex("0.5+0.3j"), Complex(0.5, 0.3));
  EXPECT_EQ(parse_complex("0.5-0.3j"), Complex(0.5, -0.3));
  EXPECT_EQ(parse_complex("-2j"), Complex(0.0, -2.0));
  EXPECT_EQ(parse_complex("1e-3+2e-2j"), Complex(1e-3, 2e-2));
  EXPECT_EQ(parse_complex("1e-3-2e+2j"), Complex(1e-3, -200.0));
  EXPECT_EQ(parse_complex(" +1.5 "), Complex(1.5, 0.0));
  for (const char* bad : {"", "j", "abc", "1+j", "0.5+0.3i", "1,2"}) EXPECT_THROW(parse_complex(bad), DomainError) << bad;
  const auto list = parse_complex_list("0.1,0.2+1j,3");
  ASSERT_EQ(list.size(), 3u);
  EXPECT_EQ(list[1], Complex(0.2, 1.0));
}

TEST(FormatReal, RoundTrips) {
  for (double x : {0.1, 1.0 / 3.0, 6.02214076e23, -1e-300, 0.36902569261942918}) {
    const std::string s = format_real(x);
    EXPECT_EQ(std::strtod(s.c_str(), nullptr), x) << s;
  }
}

TEST(Eval, TableRow) {
  const Outcome r = invoke({"eval", "--a", "1.0", "--w", "4"});
  EXPECT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("method: even"), std::string::npos);
  EXPECT_NE(r.out.find("value_re: 0.36902569"), std::string::npos);
  EXPECT_NE(r.out.find("j0: n=1:7"), std::string::npos);
  EXPECT_NE(r.out.find("abs_error: "), std::string::npos);
}

TEST(Eval, WarnsNearOdd) {
  const Outcome r = invoke({"eval", "--a", "0.1", "--w", "2.98"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("warning:"), std::string::npos);
}

TEST(Eval, ExitCodes) {
  const Outcome bad_a = invoke({"eval", "--a", "-1", "--w", "4"});
  EXPECT_EQ(bad_a.code, kPrecondition);
  EXPECT_NE(bad_a.err.find("Re(a) > 0"), std::string::npos);
  EXPECT_EQ(invoke({"eval", "--a", "1e-15", "--w", "1.5", "--method", "direct"}).code, kConvergence);
  EXPECT_EQ(invoke({"eval", "--a", "1", "--w", "4", "--method", "generic"}).code, kPrecondition);
  EXPECT_EQ(invoke({"eval", "--a", "1", "--w", "4", "--policy", "fixed:0"}).code, kPrecondition);
  EXPECT_EQ(invoke({"eval", "--a", "1", "--w", "4", "--method", "nope"}).code, kPrecondition);
  EXPECT_EQ(invoke({"eval", "--w", "4"}).code, kPrecondition);
  EXPECT_EQ(invoke({}).code, kPrecondition);
}

TEST(Eval, SmallAWithoutOracle) {
  const Outcome r = invoke({"eval", "--a", "1e-15", "--w", "1.5"});
  EXPECT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("abs_error: n/a"), std::string::npos);
}

TEST(Eval, ExplicitTailCount) {
  const Outcome r = invoke({"eval", "--a", "1", "--w", "4", "--nmax", "3"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("n=3"), std::string::npos);
  EXPECT_EQ(invoke({"eval", "--a", "1", "--w", "4", "--nmax", "0"}).code, kPrecondition);
}

TEST(Eval, MaxTermsEnvironment) {
  ::setenv("THETA_SUM_MAX_TERMS", "k=5", 1);
  const Outcome r = invoke({"eval", "--a", "0.01", "--w", "1.5"});
  ::unsetenv("THETA_SUM_MAX_TERMS");
  EXPECT_NE(r.out.find("k=5"), std::string::npos);
  ::setenv("THETA_SUM_MAX_TERMS", "k=", 1);
  EXPECT_EQ(invoke({"eval", "--a", "0.01", "--w", "1.5"}).code, kPrecondition);
  ::unsetenv("THETA_SUM_MAX_TERMS");
}

TEST(Eval, Deterministic) {
  const std::vector<std::string> args{"eval", "--a", "0.3+0.2j", "--w", "2.5"};
  EXPECT_EQ(invoke(args).out, invoke(args).out);
}

TEST_F(TempDir, SweepWritesEveryRow) {
  const auto path = dir_ / "sweep.csv";
  const Outcome r = invoke({"sweep", "--a", "0.1,0.2,0.25,0.5,0.75,1,1.5,2", "--w", "4", "--out", path.string()});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto lines = read_lines(path);
  ASSERT_EQ(lines.size(), 9u);
  EXPECT_EQ(lines[0], kSweepHeader);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split(lines[i], ',');
    ASSERT_EQ(fields.size(), 12u) << lines[i];
    EXPECT_EQ(fields[3], "even");
  }
  EXPECT_EQ(split(lines[1], ',')[0], "0.10000000000000001");
  EXPECT_EQ(split(lines[6], ',')[11], "7");
}

TEST_F(TempDir, SweepComplexAgainstOracle) {
  const auto path = dir_ / "complex.csv";
  ASSERT_EQ(invoke({"sweep", "--a", "0.5+0.3j", "--w", "4", "--methods", "even,direct", "--out", path.string()}).code,
            kOk);
  const auto lines = read_lines(path);
  ASSERT_EQ(lines.size(), 3u);
  const auto even = split(lines[1], ',');
  EXPECT_EQ(even[1], "0.29999999999999999");
  EXPECT_LE(std::strtod(even[7].c_str(), nullptr), 1e-9);
  EXPECT_EQ(split(lines[2], ',')[3], "direct");
}

TEST_F(TempDir, SweepValuesRoundTrip) {
  const auto path = dir_ / "rt.csv";
  ASSERT_EQ(invoke({"sweep", "--a", "0.05,0.1", "--w", "1.5", "--out", path.string()}).code, kOk);
  const auto lines = read_lines(path);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    for (const auto& field : split(lines[i], ',')) {
      if (field.empty() || field == "generic") continue;
      EXPECT_EQ(format_real(std::strtod(field.c_str(), nullptr)), field);
    }
  }
}

TEST_F(TempDir, SweepIsDeterministic) {
  const auto p1 = dir_ / "one.csv";
  const auto p2 = dir_ / "two.csv";
  const std::string a = "0.01,0.02,0.03,0.04,0.05,0.06,0.07,0.08+0.01j";
  ASSERT_EQ(invoke({"sweep", "--a", a, "--w", "2.5", "--out", p1.string()}).code, kOk);
  ASSERT_EQ(invoke({"sweep", "--a", a, "--w", "2.5", "--out", p2.string()}).code, kOk);
  EXPECT_EQ(read_lines(p1), read_lines(p2));
}

TEST(Sweep, Errors) {
  EXPECT_EQ(invoke({"sweep", "--a", "0.1", "--w", "4", "--out", "/nonexistent-dir/x.csv"}).code, kUnwritable);
  EXPECT_EQ(invoke({"sweep", "--a", "-0.1", "--w", "4", "--out", "/tmp/never.csv"}).code, kPrecondition);
  EXPECT_EQ(invoke({"sweep", "--a", "0.1", "--w", "4", "--methods", "bad", "--out", "/tmp/never.csv"}).code,
            kPrecondition);
}

TEST_F(TempDir, Table1) {
  const Outcome all = invoke({"table1"});
  ASSERT_EQ(all.code, kOk) << all.err;
  EXPECT_NE(all.out.find("binary64-noise"), std::string::npos);
  EXPECT_NE(all.out.find("reachable"), std::string::npos);
  const auto csv = dir_ / "t1.csv";
  const Outcome some = invoke({"table1", "--rows", "0.75,1.00", "--csv", csv.string()});
  ASSERT_EQ(some.code, kOk);
  const auto lines = read_lines(csv);
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(split(lines[2], ',')[4], "7");
  EXPECT_EQ(invoke({"table1", "--rows", "0.3"}).code, kPrecondition);
}

TEST(Verify, Suites) {
  const Outcome r = invoke({"verify", "--suite", "specfun"});
  EXPECT_EQ(r.code, kOk) << r.out;
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
  EXPECT_EQ(invoke({"verify", "--suite", "nope"}).code, kPrecondition);
}

TEST(Timing, ReportsOnStderr) {
  const Outcome r = invoke({"--timing", "eval", "--a", "1", "--w", "4"});
  EXPECT_NE(r.err.find("elapsed:"), std::string::npos);
}

}  // namespace
}  // namespace thetasum::cli
