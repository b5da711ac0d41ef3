#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int status = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(FORMLAB_BIN) + " " + args + " 2>&1";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int raw = pclose(p);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  fs::path dir;
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("formlab_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  std::string file(const std::string& name, const std::string& body) {
    const auto p = dir / name;
    std::ofstream(p) << body;
    return p.string();
  }
};

}  // namespace

TEST_F(Cli, ConstructMultiplesIsMinimal) {
  const Result r = run("--format structured construct multiples 5");
  ASSERT_EQ(r.status, 0) << r.out;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["states"].size(), 5u);
  EXPECT_EQ(j["accept"], nlohmann::json::array({0}));
}

TEST_F(Cli, EquivExitStatus) {
  const auto a = file("a.regex", "(0|1)*");
  const auto b = file("b.regex", "(1|0)*");
  const auto c = file("c.regex", "(0|1)*1");
  EXPECT_EQ(run("--alphabet 01 equiv " + a + " " + b).status, 0);
  const Result differ = run("--alphabet 01 equiv " + a + " " + c);
  EXPECT_EQ(differ.status, 1) << differ.out;
  EXPECT_NE(differ.out.find("\"0\" is accepted only by the first"), std::string::npos) << differ.out;
}

TEST_F(Cli, ConvertThenCompare) {
  const auto re = file("r.regex", "a(b|a)*b");
  const auto out = (dir / "r.json").string();
  ASSERT_EQ(run("--alphabet ab -o " + out + " convert " + re + " --to dfa").status, 0);
  EXPECT_EQ(run("--alphabet ab equiv " + re + " " + out).status, 0);
}

TEST_F(Cli, FormulaEquiv) {
  const auto f = file("f.formula", "X => Y");
  const auto g = file("g.formula", "~X | Y");
  const auto h = file("h.formula", "X & Y");
  EXPECT_EQ(run("equiv " + f + " " + g).status, 0);
  EXPECT_EQ(run("equiv " + f + " " + h).status, 1);
}

TEST_F(Cli, CheckReportsDefects) {
  const auto good = file("g.json", R"({"kind":"dfa","states":[0],"alphabet":"a",
    "transitions":[[0,"a",0]],"start":0,"accept":[0]})");
  const auto bad = file("b.json", R"({"kind":"dfa","states":[0],"alphabet":"a",
    "transitions":[[0,"a",7]],"start":0,"accept":[0]})");
  EXPECT_EQ(run("check " + good).status, 0);
  EXPECT_EQ(run("check " + bad).status, 1);
}

TEST_F(Cli, UsageAndIoErrorsExitTwo) {
  EXPECT_EQ(run("frobnicate").status, 2);
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("check " + (dir / "missing.json").string()).status, 2);
  EXPECT_EQ(run("construct nosuch 3").status, 2);
}
