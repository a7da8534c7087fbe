#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

const fs::path kFixtures = LMMNS_FIXTURE_DIR;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("lmmns_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(const std::string& args) {
    std::string cmd = std::string("\"") + LMMNS_CLI + "\" " + args + " > \"" +
                      (dir_ / "stdout.txt").string() + "\" 2> \"" + (dir_ / "stderr.txt").string() + "\"";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  fs::path write(const std::string& name, const std::string& text) {
    fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  std::string read(const std::string& name) const {
    std::ifstream in(dir_ / name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  static std::string fixture(const std::string& name) {
    return "\"" + (kFixtures / (name + ".instance.json")).string() + "\"";
  }

  fs::path dir_;
};

TEST_F(Cli, SolveExample1) {
  ASSERT_EQ(run("solve " + fixture("example1") + " --mechanism lmmns --p inf"), 0);
  auto j = nlohmann::json::parse(read("stdout.txt"));
  EXPECT_NEAR(j["tasks"][0].get<double>(), 5.0, 1e-9);
  EXPECT_NEAR(j["tasks"][1].get<double>(), 3.0, 1e-9);
}

TEST_F(Cli, SolveTable1P1ToFile) {
  fs::path out = dir_ / "alloc.json";
  ASSERT_EQ(run("solve " + fixture("table1") + " --p 1 --out \"" + out.string() + "\""), 0);
  std::ifstream in(out);
  auto j = nlohmann::json::parse(in);
  double total = 0;
  for (const auto& x : j["tasks"]) total += x.get<double>();
  EXPECT_NEAR(total, 15.0, 1e-9);
}

TEST_F(Cli, MalformedJsonExit2) {
  fs::path bad = write("bad.json", "{\"users\": 2,");
  EXPECT_EQ(run("solve \"" + bad.string() + "\""), 2);
  EXPECT_NE(read("stderr.txt").find("byte"), std::string::npos);
}

TEST_F(Cli, UsageErrorExit2) {
  EXPECT_EQ(run("solve " + fixture("example1") + " --mechanism nope"), 2);
  EXPECT_EQ(run("frobnicate"), 2);
}

TEST_F(Cli, InfeasibleFloorsExit3) {
  fs::path inst = write("inst.json", R"({"users":2,"resources":2,"demands":[[0.1,0.4],[0.5,0.2]],"bounds":[1,10],"p":"inf"})");
  EXPECT_EQ(run("solve \"" + inst.string() + "\" --mechanism modified"), 3);
}

TEST_F(Cli, CheckTheorem10) {
  fs::path alloc = write("alloc.json", R"({"tasks":[1,1,1]})");
  int code = run("check " + fixture("thm10_bbf_ef") + " \"" + alloc.string() + "\" --properties bbf,ef");
  EXPECT_EQ(code, 1);
  auto j = nlohmann::json::parse(read("stdout.txt"));
  std::string text = j.dump();
  bool bbf = false, ef = true;
  for (const auto& r : j) {
    if (r["property"] == "BBF" || r["property"] == "bbf") bbf = r["holds"].get<bool>();
    if (r["property"] == "EF" || r["property"] == "ef") ef = r["holds"].get<bool>();
  }
  EXPECT_TRUE(bbf) << text;
  EXPECT_FALSE(ef) << text;
}

TEST_F(Cli, CheckLmmdsSiHoldsAndDimensionMismatch) {
  fs::path out = dir_ / "alloc.json";
  ASSERT_EQ(run("solve " + fixture("table2") + " --out \"" + out.string() + "\""), 0);
  EXPECT_EQ(run("check " + fixture("table2") + " \"" + out.string() + "\" --properties si"), 0);
  fs::path wrong = write("wrong.json", R"({"tasks":[1,1]})");
  EXPECT_EQ(run("check " + fixture("table2") + " \"" + wrong.string() + "\""), 2);
}

TEST_F(Cli, BenchDeterministic) {
  fs::path a = dir_ / "a.csv", b = dir_ / "b.csv";
  std::string args = "bench --n 20 --m 2 --p-sweep 1:3 --trials 1 --seed 7 --objective welfare --csv ";
  ASSERT_EQ(run(args + "\"" + a.string() + "\""), 0);
  std::string summary = read("stdout.txt");
  ASSERT_EQ(run(args + "\"" + b.string() + "\""), 0);
  std::ifstream fa(a), fb(b);
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  EXPECT_FALSE(sa.str().empty());
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_EQ(std::count(summary.begin(), summary.end(), '\n'), 4);  // header + 3 rows
}

TEST_F(Cli, GenAndCompare) {
  fs::path inst = dir_ / "gen.json";
  ASSERT_EQ(run("gen --n 10 --m 3 --seed 3 --out \"" + inst.string() + "\""), 0);
  EXPECT_EQ(run("compare \"" + inst.string() + "\""), 0);
}

TEST_F(Cli, FixturesPass) { EXPECT_EQ(run("fixture"), 0); }

}  // namespace
