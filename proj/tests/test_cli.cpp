#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "support/support.hpp"

namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome cfc(const std::string& args) {
  std::string cmd = std::string(CFC_PATH) + " " + args + " 2>&1";
  Outcome o;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return o;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) o.out.append(buf, n);
  int status = pclose(pipe);
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return o;
}

std::string corpus(const std::string& name) {
  return (cftest::data_dir() / "corpus" / name).string();
}
std::string machine(const std::string& name) {
  return (cftest::data_dir() / "machines" / name).string();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("cfc_test_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name) << text;
    return path(name);
  }

  fs::path dir_;
};

TEST_F(Cli, CheckConsFreeProgram) {
  auto o = cfc("--format records check " + corpus("lincount.cf"));
  EXPECT_EQ(o.code, 0) << o.out;
  EXPECT_EQ(o.out, "cons_free=true\nunary_variables=true\ndata_order=0\ndeterministic=true\n");
}

TEST_F(Cli, CheckFailsOnConsProducingRule) {
  auto file = write("g.cf", R"(sorts: bool list
constructors:
  true : bool
  false : bool
  [] : list
  :: : bool => list => list
defined:
  g : list => list
rules:
  g xs -> true :: xs
)");
  auto o = cfc("--format records check " + file);
  EXPECT_EQ(o.code, 1);
  EXPECT_NE(o.out.find("cons_free=false\n"), std::string::npos) << o.out;
  EXPECT_NE(o.out.find("cons_free.witness=true :: xs\n"), std::string::npos) << o.out;
}

TEST_F(Cli, NonUnaryIsOnlyAWarning) {
  auto o = cfc("check " + corpus("bitset2.cf"));
  EXPECT_EQ(o.code, 0) << o.out;
  EXPECT_NE(o.out.find("warning"), std::string::npos) << o.out;
  EXPECT_NE(o.out.find("F : bool => bool => list"), std::string::npos) << o.out;
}

TEST_F(Cli, ParseErrorsExitOneWithPosition) {
  auto file = write("bad.cf", "sorts: bool\nconstructors:\n  true : bool\ndefined:\n  f : bool => bool\nrules:\n  f x = x\n");
  auto o = cfc("check " + file);
  EXPECT_EQ(o.code, 1);
  EXPECT_EQ(o.out.rfind("7:7: syntax error", 0), 0u) << o.out;
}

TEST_F(Cli, MissingFileIsAUsageError) {
  EXPECT_EQ(cfc("check " + path("absent.cf")).code, 2);
}

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(cfc("").code, 2);
  EXPECT_EQ(cfc("frobnicate").code, 2);
  EXPECT_EQ(cfc("run " + corpus("choose.cf") + " 1 --budget-depth 0").code, 2);
  EXPECT_EQ(cfc("saturate " + corpus("choose.cf") + " 1 --mode fast").code, 2);
  EXPECT_EQ(cfc("--format xml check " + corpus("choose.cf")).code, 2);
}

TEST_F(Cli, RunChoose) {
  auto o = cfc("--format records run " + corpus("choose.cf") + " '\"10\"'");
  EXPECT_EQ(o.code, 0) << o.out;
  EXPECT_EQ(o.out.rfind("result=false\nresult=true\ncomplete=true\n", 0), 0u) << o.out;
}

TEST_F(Cli, SaturateChoose) {
  auto o = cfc("--format records saturate " + corpus("choose.cf") + " 1");
  EXPECT_EQ(o.code, 0) << o.out;
  EXPECT_EQ(o.out.rfind("result=false\nresult=true\nmode=", 0), 0u) << o.out;
  EXPECT_NE(o.out.find("statements_confirmed="), std::string::npos);
}

TEST_F(Cli, IncompleteRunExitsThree) {
  auto o = cfc("--format records run " + corpus("bitset1.cf") + " 11 --budget-depth 6");
  EXPECT_EQ(o.code, 3) << o.out;
  EXPECT_NE(o.out.find("complete=false"), std::string::npos);
  auto s = cfc("--format records saturate " + corpus("bitset1.cf") + " 11");
  EXPECT_EQ(s.code, 0) << s.out;
  EXPECT_EQ(s.out.rfind("result=true\nmode=", 0), 0u) << s.out;
}

TEST_F(Cli, DomainCapExitsThree) {
  auto o = cfc("saturate " + corpus("compose.cf") + " 1 --mode eager --domain-cap 8");
  EXPECT_EQ(o.code, 3) << o.out;
}

TEST_F(Cli, DumpStatements) {
  auto o = cfc("--format records saturate " + corpus("choose.cf") +
               " 1 --mode eager --dump-statements");
  EXPECT_EQ(o.code, 0) << o.out;
  EXPECT_NE(o.out.find("statement="), std::string::npos) << o.out;
}

TEST_F(Cli, ExplicitEntryAndDataTerms) {
  auto o = cfc("--format records saturate " + corpus("choose.cf") +
               " --entry choose 'true :: false :: []'");
  EXPECT_EQ(o.code, 0) << o.out;
  EXPECT_EQ(o.out.rfind("result=false\nresult=true\n", 0), 0u) << o.out;
}

TEST_F(Cli, TraceWritesSteps) {
  auto o = cfc("run " + corpus("choose.cf") + " 1 --trace");
  EXPECT_EQ(o.code, 0) << o.out;
  EXPECT_NE(o.out.find("step 1 depth 1 rule 1: start (true :: []) => choose (true :: [])"),
            std::string::npos)
      << o.out;
}

TEST_F(Cli, GeneratedModuleChecks) {
  auto file = path("lin.cf");
  ASSERT_EQ(cfc("gen lin -o " + file).code, 0);
  EXPECT_EQ(cfc("check " + file).code, 0);
  auto bin = path("bin.cf");
  ASSERT_EQ(cfc("gen bin --k 1 --a 1 --b 1 --probes 7 -o " + bin).code, 0);
  auto o = cfc("--format records saturate " + bin + " 101 --entry probe_7");
  EXPECT_EQ(o.out.rfind("result=true\n", 0), 0u) << o.out;
  EXPECT_EQ(cfc("gen poly --a 0 -o " + path("p.cf")).code, 2);
}

TEST_F(Cli, CompileParityThenSaturate) {
  auto file = path("parity.cf");
  ASSERT_EQ(cfc("compile " + machine("parity.tm") + " -o " + file).code, 0);
  EXPECT_EQ(cfc("check " + file).code, 0);
  auto odd = cfc("--format records saturate " + file + " 101");
  EXPECT_EQ(odd.out.rfind("result=false\n", 0), 0u) << odd.out;
  auto even = cfc("--format records saturate " + file + " 11");
  EXPECT_EQ(even.out.rfind("result=true\n", 0), 0u) << even.out;
}

TEST_F(Cli, SeedErratumFlag) {
  auto file = path("paper.cf");
  ASSERT_EQ(cfc("--seed-erratum paper gen lin --probes 0 -o " + file).code, 0);
  auto o = cfc("--format records saturate " + file + " 10 --entry probe_0");
  EXPECT_EQ(o.out.rfind("result=true\n", 0), 0u) << o.out;
}

TEST_F(Cli, BenchReportsMonotoneRowsAndSlope) {
  auto o = cfc("--format records bench --sizes 2,4,6");
  ASSERT_EQ(o.code, 0) << o.out;
  std::vector<unsigned long> confirmed;
  std::istringstream in(o.out);
  std::string line;
  bool slope = false;
  while (std::getline(in, line)) {
    if (line.rfind("row=", 0) == 0) {
      std::istringstream row(line.substr(4));
      std::string n, gen, conf;
      std::getline(row, n, ',');
      std::getline(row, gen, ',');
      std::getline(row, conf, ',');
      confirmed.push_back(std::stoul(conf));
    }
    slope |= line.rfind("slope=", 0) == 0;
  }
  ASSERT_EQ(confirmed.size(), 3u);
  EXPECT_LT(confirmed[0], confirmed[1]);
  EXPECT_LT(confirmed[1], confirmed[2]);
  EXPECT_TRUE(slope);
}

}  // namespace
