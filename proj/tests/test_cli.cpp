#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "hyperdist");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = hyperdist::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "hyperdist_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Cli, ConstructAndRho) {
  auto c = run({"construct", "cat:3,5,3,1,2"});
  ASSERT_EQ(c.code, 0) << c.err;
  auto g = nlohmann::json::parse(c.out);
  EXPECT_EQ(g["vertex_count"], 17);
  EXPECT_EQ(g["edges"].size(), 8u);

  fs::path file = scratch("edge.json");
  std::ofstream(file) << run({"construct", "path:1,3"}).out;
  auto r = run({"rho", file.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(nlohmann::json::parse(r.out)["rho"].get<double>(), 2.0, 1e-10);

  auto fam = run({"rho", "--family", "cat:3,5,3,1,2"});
  EXPECT_NEAR(nlohmann::json::parse(fam.out)["rho"].get<double>(), 45.3266817036, 1e-8);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({"construct", "path:5"}).code, 2);
  EXPECT_EQ(run({"verify", "bogus"}).code, 2);
  EXPECT_EQ(run({"no-such-command"}).code, 2);
  EXPECT_EQ(run({"rho", scratch("missing.json").string()}).code, 2);
}

TEST(Cli, VerifySweep) {
  auto v = run({"verify", "lem5", "--k", "3", "--mstar", "6"});
  EXPECT_EQ(v.code, 0) << v.err;
  std::istringstream lines(v.out);
  std::string line;
  std::size_t n = 0;
  while (std::getline(lines, line)) {
    auto j = nlohmann::json::parse(line);
    EXPECT_EQ(j["target"], "lem5");
    EXPECT_EQ(j["verdict"], "pass");
    ++n;
  }
  EXPECT_GT(n, 0u);
  EXPECT_NE(v.err.find("0 fail"), std::string::npos);
}

TEST(Cli, NonUniformCounterexampleIsLabelled) {
  auto v = run({"verify", "graft2", "--nonuniform-counterexample"});
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find("paper-confirmed-counterexample"), std::string::npos);
}

TEST(Cli, ReproduceTable) {
  auto r = run({"reproduce-paper"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("45.33"), std::string::npos);
  EXPECT_NE(r.out.find("46.31"), std::string::npos);
}

TEST(Cli, OutputIsDeterministic) {
  std::vector<std::string> args{"verify", "nlem1", "--k", "3", "--mstar", "7"};
  auto a = run(args), b = run(args);
  EXPECT_EQ(a.code, b.code);
  EXPECT_EQ(a.out, b.out);
  auto e1 = run({"extremal", "--k", "2", "--m", "7", "--delta", "3", "--n", "2"});
  auto e2 = run({"extremal", "--k", "2", "--m", "7", "--delta", "3", "--n", "2"});
  EXPECT_EQ(e1.out, e2.out);
}

TEST(Cli, ManifestRecordsTheRun) {
  fs::path manifest = scratch("manifest.json");
  fs::path out = scratch("lem6.jsonl");
  fs::remove(manifest);
  auto v = run({"verify", "lem6", "--k", "3", "--out", out.string(), "--manifest", manifest.string()});
  ASSERT_EQ(v.code, 0) << v.err;
  EXPECT_TRUE(v.out.empty());
  EXPECT_GT(fs::file_size(out), 0u);
  std::ifstream in(manifest);
  auto m = nlohmann::json::parse(in);
  EXPECT_EQ(m["exit_code"], 0);
  EXPECT_EQ(m["tool_version"], "0.1.0");
  for (const char* key : {"command", "parameters", "tolerance", "wall_clock_seconds", "outputs"}) {
    EXPECT_TRUE(m.contains(key)) << key;
  }
}
