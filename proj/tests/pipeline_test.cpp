#include <lat40/pipeline.hpp>

#include <gtest/gtest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>

namespace lat40 {
namespace {

namespace fs = std::filesystem;

fs::path corrupted_fixtures(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::copy(default_fixture_dir(), dir);
  std::ofstream(dir / "b1.mat", std::ios::app) << "0\n";
  return dir;
}

TEST(Pipeline, CorruptFixtureFailsConstructionAndBlocksTheRest) {
  const fs::path dir = corrupted_fixtures("lat40_fault");
  PipelineOptions o;
  o.fixture_dir = dir.string();
  o.cache_dir = (fs::temp_directory_path() / "lat40_fault_cache").string();
  Pipeline p(o);
  const VerificationReport r = verify_all(p);
  ASSERT_EQ(r.claims.size(), 11u);
  EXPECT_EQ(r.claims[0].status, ClaimStatus::fail);
  for (std::size_t i = 1; i < r.claims.size(); ++i)
    EXPECT_EQ(r.claims[i].status, ClaimStatus::blocked) << r.claims[i].key;
  EXPECT_FALSE(r.all_passed());
  fs::remove_all(dir);
}

TEST(Pipeline, ReportSerializations) {
  VerificationReport r;
  ClaimResult c;
  c.id = 1;
  c.key = "k";
  c.topic = "t";
  c.expected = "e";
  c.computed = "x";
  c.status = ClaimStatus::pass;
  c.seconds = 1.5;
  r.claims.push_back(c);
  const auto j = nlohmann::json::parse(report_json(r, false));
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["claims"][0]["status"], "pass");
  EXPECT_FALSE(j["claims"][0].contains("seconds"));
  EXPECT_TRUE(nlohmann::json::parse(report_json(r))["claims"][0].contains("seconds"));
  EXPECT_NE(report_text(r).find("[PASS]"), std::string::npos);
  EXPECT_TRUE(r.all_passed());
}

TEST(Pipeline, ReferenceTablesAreConsistent) {
  std::size_t total = 0;
  for (const auto& row : reference_level1()) total += row.size;
  EXPECT_EQ(total, 39600u);
  total = 0;
  for (const auto& row : reference_irreducible()) total += row.size;
  EXPECT_EQ(total, 39600u);
  EXPECT_EQ(reference_level1().size(), 18u);
  EXPECT_EQ(reference_irreducible().size(), 64u);
  std::size_t reps = 0;
  for (auto [m, n] : reference_census()) reps += n;
  EXPECT_EQ(reps, 132u);
}

TEST(Pipeline, LinalgInvariants) {
  for (const auto& r : linalg_invariant_suite(3, 25)) EXPECT_TRUE(r.ok) << r.name;
}

TEST(Pipeline, DefaultCacheDirFollowsEnvironment) {
  ::setenv("LAT40_CACHE", "/tmp/somewhere", 1);
  EXPECT_EQ(default_cache_dir(), "/tmp/somewhere");
  ::unsetenv("LAT40_CACHE");
  ::setenv("XDG_CACHE_HOME", "/tmp/xdg", 1);
  EXPECT_EQ(default_cache_dir(), "/tmp/xdg/lat40");
}

// The command-line tool: exit codes and machine-readable output.
int run(const std::string& args, std::string* out = nullptr) {
  const fs::path tmp = fs::temp_directory_path() / "lat40_cli_out.txt";
  const std::string cmd = std::string(LAT40_CLI) + " " + args + " >" + tmp.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  if (out) {
    std::ifstream f(tmp);
    out->assign(std::istreambuf_iterator<char>(f), {});
  }
  return WEXITSTATUS(status);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("--help"), 0);
  EXPECT_EQ(run("no-such-command"), 2);
  EXPECT_EQ(run("types --lattice /nonexistent/file.lat --quiet"), 2);
  EXPECT_EQ(run("search --p3 3:1,2"), 2);
  EXPECT_EQ(run("minvec --norm 3 --quiet"), 2);
  const fs::path dir = corrupted_fixtures("lat40_cli_fault");
  EXPECT_EQ(run("build --quiet --fixtures " + dir.string()), 2);
  fs::remove_all(dir);
}

TEST(Cli, BuildJsonAndSearchLine) {
  std::string out;
  ASSERT_EQ(run("build --quiet --format json", &out), 0);
  const auto j = nlohmann::json::parse(out);
  EXPECT_EQ(j["rank"], 40);
  EXPECT_EQ(j["even"], true);
  EXPECT_EQ(j["unimodular"], true);
  EXPECT_EQ(j["equals_fixture_glue_matrix"], true);

  ASSERT_EQ(run("search --p3 3:1,0,0,0,1,1 --p21 21:0,7,1,0,4,17", &out), 0);
  const auto hit = nlohmann::json::parse(out);
  EXPECT_EQ(hit["isotropic"], true);
  EXPECT_EQ(hit["index"], true);
}

}  // namespace
}  // namespace lat40
