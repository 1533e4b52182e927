#include <gtest/gtest.h>

#include "cf/analysis.hpp"
#include "cf/error.hpp"
#include "cf/interpreter.hpp"
#include "cf/saturation.hpp"
#include "cf/syntax.hpp"
#include "support/support.hpp"

namespace {

using cftest::printed;

constexpr int kPrograms = 150;

struct Sample {
  std::string source;
  cf::Program program;
};

// Seeded, so every run sees the same programs.
const std::vector<Sample>& samples() {
  static const std::vector<Sample> all = [] {
    std::vector<Sample> out;
    cftest::RandomProgramGenerator gen(20261016);
    for (int i = 0; i < kPrograms; ++i) {
      auto src = gen.generate();
      out.push_back({src, cf::parse_program(src)});
    }
    return out;
  }();
  return all;
}

cf::Budget small_budget(std::size_t depth) {
  cf::Budget b;
  b.max_depth = depth;
  b.max_branchings = 200'000;
  return b;
}

TEST(Generated, AreConsFree) {
  for (const auto& s : samples()) EXPECT_TRUE(cf::is_cons_free(s.program).cons_free) << s.source;
}

TEST(Generated, PrintParseRoundTrip) {
  for (const auto& s : samples()) {
    auto text = cf::print_program(s.program);
    EXPECT_EQ(cf::parse_program(text), s.program) << text;
  }
}

TEST(Generated, ReTypeCheckingIsStable) {
  for (const auto& s : samples()) {
    for (const auto& r : s.program.rules()) {
      auto again = cf::parse_term(s.program.symbols(), cf::print_term(r.rhs), r.var_types);
      EXPECT_EQ(again, r.rhs);
      EXPECT_EQ(again.type(), r.rhs.type());
    }
  }
}

TEST(Subterms, ReflexiveTransitiveAndBounded) {
  for (const auto& s : samples()) {
    for (const auto& r : s.program.rules()) {
      for (const cf::Term* t : {&r.lhs, &r.rhs}) {
        auto subs = cf::subterms(*t);
        EXPECT_LE(subs.size(), t->size());
        EXPECT_TRUE(cf::is_subterm(*t, *t));
        for (const auto& u : subs) {
          EXPECT_TRUE(cf::is_subterm(*t, u));
          for (const auto& w : cf::subterms(u)) EXPECT_TRUE(cf::is_subterm(*t, w));
        }
      }
    }
  }
}

TEST(DataOrder, RemovingRulesNeverRaisesIt) {
  for (const auto& s : samples()) {
    const auto& rules = s.program.rules();
    std::vector<cf::Rule> half(rules.begin(), rules.begin() + rules.size() / 2);
    EXPECT_LE(cf::data_order(s.program.with_rules(half)), cf::data_order(s.program));
  }
}

TEST(ConsFree, RemovingRulesPreservesIt) {
  for (const auto& s : samples()) {
    const auto& rules = s.program.rules();
    std::vector<cf::Rule> odd;
    for (std::size_t i = 1; i < rules.size(); i += 2) odd.push_back(rules[i]);
    EXPECT_TRUE(cf::is_cons_free(s.program.with_rules(odd)).cons_free);
  }
}

TEST(Evaluation, ValuesAtSortsAreDataAndTypesArePreserved) {
  for (const auto& s : samples()) {
    for (const auto& bits : {"", "1", "01"}) {
      auto query = cftest::call(s.program, "start", {cftest::input(s.program, bits)});
      auto r = cf::eval_all(s.program, query, small_budget(8));
      for (const auto& v : r.results) {
        EXPECT_EQ(v.type(), query.type());
        EXPECT_TRUE(cf::is_value(s.program, v));
        EXPECT_TRUE(cf::is_data_term(v)) << cf::print_term(v);
      }
    }
  }
}

TEST(Evaluation, PartialValuesAreValues) {
  for (const auto& s : samples()) {
    for (const auto& [name, type] : s.program.symbols().defined()) {
      if (s.program.arity(name) < 2) continue;
      auto first = type.argument_types()[0];
      const cf::Term arg = first == cf::Type::sort("bool")
                               ? cf::parse_term(s.program.symbols(), "true")
                               : first == cf::Type::sort("list")
                                     ? cftest::input(s.program, "1")
                                     : cf::Term::var("", first);
      if (!arg.is_ground()) continue;
      auto partial = cftest::call(s.program, name, {arg});
      EXPECT_TRUE(cf::is_value(s.program, partial));
      EXPECT_FALSE(cf::is_data_term(partial));
    }
  }
}

TEST(Evaluation, BudgetMonotone) {
  for (const auto& s : samples()) {
    auto query = cftest::call(s.program, "start", {cftest::input(s.program, "10")});
    auto small = printed(cf::eval_all(s.program, query, small_budget(3)).results);
    auto large = printed(cf::eval_all(s.program, query, small_budget(7)).results);
    for (const auto& v : small) EXPECT_TRUE(large.count(v)) << s.source;
  }
}

TEST(Evaluation, DeterministicProgramsGiveAtMostOneValue) {
  std::size_t checked = 0;
  for (const auto& s : samples()) {
    if (!cf::is_syntactically_deterministic(s.program).deterministic) continue;
    ++checked;
    for (const auto& bits : {"", "1", "10"}) {
      auto query = cftest::call(s.program, "start", {cftest::input(s.program, bits)});
      auto all = cf::eval_all(s.program, query, small_budget(10));
      EXPECT_LE(all.results.size(), 1u) << s.source;
      auto det = cf::eval_deterministic(s.program, query, 100'000);
      if (det.value && all.complete) {
        ASSERT_EQ(all.results.size(), 1u);
        EXPECT_EQ(*det.value, all.results[0]);
      }
    }
  }
  for (const auto& path : cftest::corpus_files()) {
    auto p = cftest::load_program(path);
    if (!cf::is_syntactically_deterministic(p).deterministic) continue;
    ++checked;
    auto r = cf::eval_all(p, cftest::call(p, "start", {cftest::input(p, "101")}), small_budget(12));
    EXPECT_LE(r.results.size(), 1u) << path;
  }
  EXPECT_GT(checked, 0u);
}

TEST(Evaluation, SubtermClosure) {
  for (const auto& s : samples()) {
    auto in = cftest::input(s.program, "110");
    cf::SubtermClosureChecker checker(s.program, {in});
    cf::eval_all(s.program, cftest::call(s.program, "start", {in}), small_budget(6), &checker);
    EXPECT_TRUE(checker.violations().empty()) << s.source;
  }
}

TEST(Saturation, MatchesTheInterpreter) {
  std::size_t complete = 0, nonempty = 0, several = 0;
  for (const auto& s : samples()) {
    for (const auto& bits : {"", "0", "11", "101"}) {
      std::vector<cf::Term> args{cftest::input(s.program, bits)};
      auto sat = printed(cf::saturate(s.program, "start", args).results);
      auto all = cf::eval_all(s.program, cftest::call(s.program, "start", args), small_budget(10));
      auto got = printed(all.results);
      nonempty += !sat.empty();
      several += sat.size() > 1;
      if (all.complete) {
        ++complete;
        EXPECT_EQ(sat, got) << s.source << "input " << bits;
      } else {
        for (const auto& v : got) EXPECT_TRUE(sat.count(v)) << s.source << "input " << bits;
      }
    }
  }
  // Guards against a generator that only produces trivial programs.
  EXPECT_GT(complete, kPrograms * 2u);
  EXPECT_GT(nonempty, kPrograms * 2u);
  EXPECT_GT(several, 10u);
}

TEST(Saturation, EagerAndDemandAgree) {
  std::size_t compared = 0;
  cf::SaturationOptions capped;
  capped.statement_cap = 200'000;
  for (const auto& s : samples()) {
    std::vector<cf::Term> args{cftest::input(s.program, "10")};
    cf::SaturationResult eager;
    try {
      eager = cf::saturate_eager(s.program, "start", args, capped);
    } catch (const cf::Error&) {
      continue;
    }
    auto demand = cf::saturate_demand_driven(s.program, "start", args);
    EXPECT_EQ(printed(demand.results), printed(eager.results)) << s.source;
    ++compared;
  }
  EXPECT_GT(compared, kPrograms / 2u);
}

}  // namespace
