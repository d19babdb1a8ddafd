#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "maxclass5/cli.hpp"
#include "maxclass5/maxclass5.hpp"

using namespace maxclass5;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "maxclass5");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_command(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("maxclass5_test_" + name);
}

std::string table_path() { return std::string(MAXCLASS5_DATA_DIR) + "/table1.csv"; }

}  // namespace

TEST(Cli, BuildWritesDescriptor) {
  const auto path = temp_file("g.json");
  const CliResult r = run({"build", "--n", "6", "--z", "1", "--w", "0", "--a", "1", "-o", path.string()});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(descriptor_from_string(ss.str()), validate_params({5, 6, 0, 1, {1}}));
  // The written file drives later commands.
  const CliResult inv = run({"invariants", "--group", path.string()});
  EXPECT_EQ(inv.code, kExitOk);
  EXPECT_EQ(Json::parse(inv.out)["defect_k"], 1);
  std::filesystem::remove(path);
}

TEST(Cli, BuildPrintsConsistency) {
  const CliResult r = run({"build", "--n", "4"});
  ASSERT_EQ(r.code, kExitOk);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["consistency"]["mode"], "exhaustive");
  EXPECT_EQ(j["consistency"]["passed"], true);
}

TEST(Cli, VerifyProp31) {
  const CliResult r = run({"verify", "prop31", "--n", "4..7", "--summary"});
  EXPECT_EQ(r.code, kExitOk);
  const Json j = Json::parse(r.out);
  EXPECT_TRUE(j["violations"].empty());
  EXPECT_EQ(j["tuples_tested"], j["tuples_expected"]);
  EXPECT_FALSE(j.contains("observations"));
}

TEST(Cli, VerifyReportsViolationsWithExitTwo) {
  // prop33 at n = 5: k = 1 groups satisfy the hypothesis.
  const CliResult r = run({"verify", "prop33", "--n-range", "5..5", "--summary"});
  EXPECT_EQ(r.code, kExitViolations);
  const Json j = Json::parse(r.out);
  EXPECT_FALSE(j["violations"].empty());
  for (const auto& v : j["violations"]) EXPECT_EQ(v["category"], "k<=2");
}

TEST(Cli, Predict) {
  const CliResult r = run({"predict", "--table", table_path(), "--scenario", "HL"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json j = Json::parse(r.out);
  ASSERT_EQ(j.size(), 10u);
  int flagged = 0;
  for (const auto& rec : j) {
    if (!rec["flags"].empty()) {
      ++flagged;
      EXPECT_EQ(rec["record"]["p"], 559);
      EXPECT_TRUE(rec["candidates"].empty());
    } else {
      EXPECT_EQ(rec["candidates"].size(), 12u);
    }
  }
  EXPECT_EQ(flagged, 1);
  EXPECT_EQ(run({"predict", "--table", table_path(), "--scenario", "Htilde", "--claim-large"}).code,
            kExitUsage);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  const CliResult bad = run({"build", "--n", "4", "--a", "1"});
  EXPECT_EQ(bad.code, kExitUsage);
  EXPECT_NE(bad.err.find("a"), std::string::npos);
  EXPECT_EQ(run({"build", "--n", "x"}).code, kExitUsage);
  EXPECT_EQ(run({"verify", "prop99"}).code, kExitUsage);
  EXPECT_EQ(run({"verify", "prop31", "--n", "3..5"}).code, kExitUsage);
  EXPECT_EQ(run({"export", "--n", "5", "--format", "table"}).code, kExitUsage);
  EXPECT_EQ(run({"invariants", "--group", "/nonexistent/g.json"}).code, kExitUsage);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST(Cli, ThreadCapFromEnvironment) {
  ::setenv("MAXCLASS5_THREADS", "2", 1);
  EXPECT_LE(worker_count(8), 2u);
  ::setenv("MAXCLASS5_THREADS", "1", 1);
  EXPECT_EQ(worker_count(0), 1u);
  ::unsetenv("MAXCLASS5_THREADS");
  EXPECT_GE(worker_count(0), 1u);
}

TEST(Cli, DeterministicOutput) {
  const CliResult a = run({"transfers", "--n", "7", "--a", "1,0,2", "--w", "3"});
  const CliResult b = run({"transfers", "--n", "7", "--a", "1,0,2", "--w", "3"});
  EXPECT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
  const CliResult c = run({"build", "--n", "6", "--seed", "9", "--samples", "3000"});
  const CliResult d = run({"build", "--n", "6", "--seed", "9", "--samples", "3000"});
  EXPECT_EQ(c.out, d.out);
}
