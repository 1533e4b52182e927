#include <gtest/gtest.h>

#include "cf/analysis.hpp"
#include "cf/interpreter.hpp"
#include "cf/saturation.hpp"
#include "support/support.hpp"

namespace {

using cftest::printed;

class Corpus : public ::testing::TestWithParam<std::filesystem::path> {};

TEST_P(Corpus, ParsesWithAnEntryPoint) {
  auto p = cftest::load_program(GetParam());
  ASSERT_TRUE(p.symbols().is_defined("start"));
  EXPECT_EQ(p.symbols().defined_type("start").argument_types().size(), 1u);
}

TEST_P(Corpus, SaturationMatchesCompleteEvaluation) {
  auto p = cftest::load_program(GetParam());
  if (!cf::is_cons_free(p).cons_free) GTEST_SKIP() << "not cons-free";
  cf::Budget budget;
  budget.max_depth = 24;
  budget.max_branchings = 200'000;
  for (const auto& bits : cftest::bitstrings(3)) {
    std::vector<cf::Term> args{cftest::input(p, bits)};
    auto sat = printed(cf::saturate(p, "start", args).results);
    auto all = cf::eval_all(p, cftest::call(p, "start", args), budget);
    if (all.complete) {
      EXPECT_EQ(sat, printed(all.results)) << bits;
    } else {
      for (const auto& v : printed(all.results)) EXPECT_TRUE(sat.count(v)) << bits << " " << v;
    }
  }
}

TEST_P(Corpus, DocumentedResults) {
  auto p = cftest::load_program(GetParam());
  if (!cf::is_cons_free(p).cons_free) GTEST_SKIP() << "not cons-free";
  for (const auto& e : cftest::expectations(cftest::read_file(GetParam()))) {
    auto r = cf::saturate(p, "start", {cftest::input(p, e.bits)});
    EXPECT_EQ(printed(r.results), e.results) << '"' << e.bits << '"';
  }
}

std::string name_of(const ::testing::TestParamInfo<std::filesystem::path>& info) {
  return info.param.stem().string();
}

INSTANTIATE_TEST_SUITE_P(Files, Corpus, ::testing::ValuesIn(cftest::corpus_files()), name_of);

TEST(CorpusShape, EnoughProgramsAndExpectations) {
  std::size_t programs = 0, documented = 0;
  for (const auto& path : cftest::corpus_files()) {
    ++programs;
    documented += !cftest::expectations(cftest::read_file(path)).empty();
  }
  EXPECT_GE(programs, 20u);
  EXPECT_GE(documented, 10u);
}

}  // namespace
