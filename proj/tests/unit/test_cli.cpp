#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

namespace fs = std::filesystem;

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(PLR_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  const int raw = ::pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("plr_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(Cli, ReflexiveCheckPrintsTrue) {
  const auto p = file("p.plp", "(and A (some R (int f 0 9)))\n");
  const auto kb = file("kb.plkb", "func R\n");
  const auto o = file("o.horn", "");
  const auto r = run("check --kb " + kb + " --oracle " + o + " --lhs " + p + " --rhs " + p);
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out.substr(0, 5), "TRUE\n");
}

TEST_F(Cli, ExitStatusReflectsAnswer) {
  const auto a = file("a.plp", "A\n");
  const auto b = file("b.plp", "B\n");
  const auto kb = file("kb.plkb", "");
  const auto o = file("o.horn", "sub A B\n");
  const std::string base = "check --exit-status --kb " + kb + " --oracle " + o;
  EXPECT_EQ(run(base + " --lhs " + a + " --rhs " + b).status, 0);
  const auto r = run(base + " --lhs " + b + " --rhs " + a);
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(r.out.substr(0, 6), "FALSE\n");
}

TEST_F(Cli, SharedRoleExitsWithSignatureError) {
  const auto p = file("p.plp", "A\n");
  const auto kb = file("kb.plkb", "func has_data\n");
  const auto o = file("o.horn", "supex A has_data B\n");
  const std::string cmd = std::string(PLR_CLI) + " check --kb " + kb + " --oracle " + o + " --lhs " + p +
                          " --rhs " + p + " 2>&1";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  std::string all;
  std::array<char, 1024> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) all.append(buf.data(), n);
  const int raw = ::pclose(pipe);
  EXPECT_EQ(WEXITSTATUS(raw), 4);
  EXPECT_NE(all.find("has_data"), std::string::npos);
}

TEST_F(Cli, ParseErrorExitCode) {
  const auto bad = file("bad.plp", "(some R (or A B))\n");
  const auto kb = file("kb.plkb", "");
  const auto o = file("o.horn", "");
  EXPECT_EQ(run("check --kb " + kb + " --oracle " + o + " --lhs " + bad + " --rhs " + bad).status, 3);
}

TEST_F(Cli, MissingFileAndUsage) {
  const auto kb = file("kb.plkb", "");
  const auto o = file("o.horn", "");
  EXPECT_EQ(run("check --kb " + kb + " --oracle " + o + " --lhs " + path("nope") + " --rhs " + path("nope")).status, 6);
  EXPECT_EQ(run("check --kb " + kb).status, 2);
  EXPECT_EQ(run("frobnicate").status, 2);
}

TEST_F(Cli, NoCacheSameAnswerDifferentCalls) {
  // Both split pieces ask the same name query.
  const auto lhs = file("l.plp", "(and A C (int f 0 10))\n");
  const auto rhs = file("r.plp", "(or (and B (int f 0 4)) (and B (int f 5 20)))\n");
  const auto kb = file("kb.plkb", "");
  const auto o = file("o.horn", "sub A B\n");
  const std::string base = "check --stats json --kb " + kb + " --oracle " + o + " --lhs " + lhs + " --rhs " + rhs;
  const auto cached = run(base);
  const auto uncached = run(base + " --no-cache");
  EXPECT_NE(cached.out.find("\"answer\":true"), std::string::npos) << cached.out;
  EXPECT_NE(uncached.out.find("\"answer\":true"), std::string::npos) << uncached.out;
  EXPECT_NE(uncached.out.find("\"cache_hits\":0,"), std::string::npos) << uncached.out;
  auto field = [](const std::string& json, const std::string& key) {
    const auto at = json.find("\"" + key + "\":");
    return at == std::string::npos ? 0ul : std::stoul(json.substr(at + key.size() + 3));
  };
  EXPECT_GT(field(cached.out, "cache_hits"), 0u) << cached.out;
  EXPECT_LT(field(cached.out, "oracle_calls"), field(uncached.out, "oracle_calls"));
}

TEST_F(Cli, ClassifyExamples) {
  const auto o = file("o.horn", "sub A B\nsub B C\n");
  const auto r = run("classify --oracle " + o + " --class A");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "A B C Top\n");
  EXPECT_EQ(run("classify --oracle " + file("e.horn", "") + " --class A").out, "A Top\n");
  EXPECT_EQ(run("classify --oracle " + o + " --class Zed").status, 7);
}

TEST_F(Cli, GenIsDeterministic) {
  const std::string common = "gen --preset K1 --policy-preset P1 --count 10 --seed 7 --synthetic-classes 300 --out ";
  ASSERT_EQ(run(common + path("a")).status, 0);
  ASSERT_EQ(run(common + path("b")).status, 0);
  std::size_t files = 0;
  for (const auto& e : fs::recursive_directory_iterator(path("a"))) {
    if (!e.is_regular_file()) continue;
    std::ifstream x(e.path(), std::ios::binary), y(fs::path(path("b")) / fs::relative(e.path(), path("a")), std::ios::binary);
    std::stringstream sx, sy;
    sx << x.rdbuf();
    sy << y.rdbuf();
    EXPECT_EQ(sx.str(), sy.str()) << e.path();
    ++files;
  }
  EXPECT_EQ(files, 3u + 20u);
}

TEST_F(Cli, GenCountZeroAndBench) {
  ASSERT_EQ(run("gen --preset K1 --count 0 --synthetic-classes 50 --out " + path("z")).status, 0);
  EXPECT_TRUE(fs::exists(path("z") + "/manifest.txt"));
  const auto r = run("bench --suite " + path("z"));
  EXPECT_EQ(r.status, 0);
}

TEST_F(Cli, BenchReportsNoMismatches) {
  ASSERT_EQ(run("gen --preset K1 --policy-preset P1 --count 6 --ni 0,2 --seed 3 --synthetic-classes 200 --out " +
                path("s"))
                .status,
            0);
  const auto r = run("bench --suite " + path("s") + " --report " + path("report.json"));
  EXPECT_EQ(r.status, 0) << r.out;
  std::ifstream in(path("report.json"));
  std::stringstream s;
  s << in.rdbuf();
  EXPECT_NE(s.str().find("\"mismatches\": 0"), std::string::npos) << s.str();
}

TEST_F(Cli, ExternalOracleCommand) {
  const auto a = file("a.plp", "A\n");
  const auto b = file("b.plp", "B\n");
  const auto kb = file("kb.plkb", "sub A B\n");
  const auto r = run("check --kb " + kb + " --oracle-cmd \"" + std::string(PLR_ORACLE_SERVER) + "\" --lhs " + a +
                     " --rhs " + b);
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out.substr(0, 5), "TRUE\n");
}

}  // namespace
