#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "secjam/harness.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "secjam");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = secjam::cli::parse_and_dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("secjam_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Cli, AnalyzePrintsFixtureValues) {
  const auto r = run({"analyze"});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* v : {"1.2693", "0.9560", "0.1027", "0.0808", "0.4013", "6.3263", "0.1138", "0.9587"})
    EXPECT_NE(r.out.find(v), std::string::npos) << v;
}

TEST(Cli, RunIsDeterministic) {
  const std::vector<std::string> args{"run", "--users", "4", "--subcarriers", "16", "--seed", "3"};
  const auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(run({"run", "--users", "4", "--subcarriers", "16", "--seed", "4"}).out, a.out);
}

TEST(Cli, RunOnFixtureWithEverySchemeName) {
  for (const auto& s : secjam::scheme_names()) {
    const auto r = run({"run", "--fixture", "paper3x5", "--ps-db", "10", "--pj-db", "10", "--scheme", s});
    EXPECT_EQ(r.code, 0) << s << ": " << r.err;
  }
}

TEST(Cli, SweepRowCount) {
  const auto r = run({"sweep", "--var", "ps_db", "--grid", "0:5:40", "--trials", "2", "--users", "3",
                      "--subcarriers", "4", "--schemes", "jpa,epa,ospwj"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = secjam::parse_csv(r.out);
  EXPECT_EQ(rows.size(), 27u);
}

TEST(Cli, JammerPositionSweep) {
  const auto r = run({"sweep", "--var", "jammer_pos", "--grid", "0.5;0.5,1;1", "--trials", "1",
                      "--users", "3", "--subcarriers", "4", "--schemes", "jpa"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("jammer_pos,0.5;0.5,jpa"), std::string::npos);
}

TEST(Cli, BadInputsExitNonZero) {
  EXPECT_NE(run({"run", "--bogus"}).code, 0);
  EXPECT_NE(run({}).code, 0);
  EXPECT_NE(run({"sweep", "--var", "nope", "--grid", "1"}).code, 0);
  EXPECT_EQ(run({"run", "--scheme", "nope", "--users", "3", "--subcarriers", "4"}).code, 2);
  const auto missing = run({"run", "--fixture", "/no/such/file.txt"});
  EXPECT_EQ(missing.code, 1);
  EXPECT_NE(missing.err.find("/no/such/file.txt"), std::string::npos);
}

TEST(Cli, ConfigFileSuppliesDefaults) {
  const auto dir = scratch_dir("config");
  const auto cfg = dir / "run.ini";
  {
    std::ofstream f(cfg);
    f << "users=4\nsubcarriers=16\nseed=3\n";
  }
  const auto a = run({"run", "--config", cfg.string()});
  const auto b = run({"run", "--users", "4", "--subcarriers", "16", "--seed", "3"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, OutputDirectoryFromEnvironment) {
  const auto dir = scratch_dir("env");
  ::setenv("SECJAM_OUTPUT_DIR", dir.c_str(), 1);
  const auto r = run({"fixture", "--output", "fx.txt"});
  ::unsetenv("SECJAM_OUTPUT_DIR");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(slurp(dir / "fx.txt").find("# 3 5 1"), std::string::npos);
}

TEST(Cli, TraceOutput) {
  const auto dir = scratch_dir("trace");
  const auto r = run({"run", "--fixture", "paper3x5", "--ps-db", "10", "--pj-db", "10", "--trace",
                      (dir / "trace.csv").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(dir / "trace.csv").rfind("iter,t,lambda1,lambda2,objective", 0), 0u);
}
