#include <gtest/gtest.h>

#include "cf/analysis.hpp"
#include "cf/programgen.hpp"
#include "cf/syntax.hpp"
#include "cf/term.hpp"

namespace {

const char* kPrelude = R"(
sorts: bool list
constructors:
  true : bool
  false : bool
  [] : list
  :: : bool => list => list
)";

cf::Program prog(const std::string& rest) { return cf::parse_program(kPrelude + rest); }

TEST(ConsFree, ChooseIsConsFree) {
  auto p = prog(R"(defined:
  choose : bool => bool => bool
rules:
  choose x y -> x
  choose x y -> y
)");
  EXPECT_TRUE(cf::is_cons_free(p).cons_free);
}

TEST(ConsFree, ConsOnVariableIsAViolation) {
  auto p = prog(R"(defined:
  g : list => list
rules:
  g xs -> true :: xs
)");
  auto r = cf::is_cons_free(p);
  ASSERT_FALSE(r.cons_free);
  EXPECT_EQ(*r.rule, 0u);
  EXPECT_EQ(cf::print_term(*r.witness), "true :: xs");
}

TEST(ConsFree, GroundRhsIsAllowed) {
  auto p = prog(R"(defined:
  f : bool => list
rules:
  f x -> true :: false :: []
)");
  EXPECT_TRUE(cf::is_cons_free(p).cons_free);
}

TEST(ConsFree, LhsSubtermMayBeRebuilt) {
  auto p = prog(R"(defined:
  f : list => list
rules:
  f (x :: xs) -> x :: xs
)");
  EXPECT_TRUE(cf::is_cons_free(p).cons_free);
}

TEST(ConsFree, ReorderedLhsDataIsAViolation) {
  auto p = prog(R"(defined:
  f : list => list
rules:
  f (x :: y :: ys) -> y :: x :: ys
)");
  EXPECT_FALSE(cf::is_cons_free(p).cons_free);
}

TEST(ConsFree, WitnessRevalidates) {
  auto p = prog(R"(defined:
  g : list => list
  h : list => list
rules:
  h xs -> xs
  g (x :: xs) -> h (false :: xs)
)");
  auto r = cf::is_cons_free(p);
  ASSERT_FALSE(r.cons_free);
  const auto& rule = p.rules()[*r.rule];
  EXPECT_TRUE(cf::is_subterm(rule.rhs, *r.witness));
  EXPECT_FALSE(cf::is_strict_subterm(rule.lhs, *r.witness));
  EXPECT_TRUE(r.witness->is_cons());
  EXPECT_FALSE(cf::is_cons_free_rule(rule));
}

TEST(ConsFree, RemovingRulesKeepsItConsFree) {
  auto p = cf::gen_lin_count().program();
  ASSERT_TRUE(cf::is_cons_free(p).cons_free);
  for (std::size_t drop = 0; drop < p.rules().size(); ++drop) {
    std::vector<cf::Rule> rest;
    for (std::size_t i = 0; i < p.rules().size(); ++i)
      if (i != drop) rest.push_back(p.rules()[i]);
    EXPECT_TRUE(cf::is_cons_free(p.with_rules(rest)).cons_free);
  }
}

TEST(Unary, LincountIsUnary) {
  EXPECT_TRUE(cf::has_unary_variables(cf::gen_lin_count().program()).unary);
}

TEST(Unary, NondetLevelTwoHasWitnessF) {
  auto r = cf::has_unary_variables(cf::gen_nondet_count(2).program());
  ASSERT_FALSE(r.unary);
  EXPECT_EQ(*r.variable, "F");
  EXPECT_EQ(r.variable_type->to_string(), "bool => bool => list");
}

TEST(Unary, ProductDomainIsUnary) {
  EXPECT_TRUE(cf::is_unary_type(cf::parse_type("bool * list => bool")));
  EXPECT_TRUE(cf::is_unary_type(cf::parse_type("bool * list")));
  EXPECT_FALSE(cf::is_unary_type(cf::parse_type("bool => bool => bool")));
  EXPECT_TRUE(cf::is_unary_type(cf::parse_type("(bool => bool) => bool")));
  EXPECT_FALSE(cf::is_unary_type(cf::parse_type("bool => bool * (bool => bool)")));
}

TEST(Determinism, ChooseOverlaps) {
  auto p = prog(R"(defined:
  choose : bool => bool => bool
rules:
  choose x y -> x
  choose x y -> y
)");
  auto r = cf::is_syntactically_deterministic(p);
  ASSERT_FALSE(r.deterministic);
  EXPECT_EQ(*r.overlap, std::make_pair(std::size_t{0}, std::size_t{1}));
}

TEST(Determinism, DisjointConstructorsAreDeterministic) {
  auto p = prog(R"(defined:
  pred : list => list * list => list * list
  zero : list => list * list => bool
rules:
  pred cs (xs, y :: ys) -> (xs, ys)
  pred cs (x :: xs, []) -> (xs, cs)
  zero cs ([], []) -> true
  zero cs (xs, y :: ys) -> false
  zero cs (x :: xs, []) -> false
)");
  EXPECT_TRUE(cf::is_syntactically_deterministic(p).deterministic);
}

TEST(Determinism, SingleRule) {
  auto p = prog("defined:\n  f : bool => bool\nrules:\n  f x -> x\n");
  EXPECT_TRUE(cf::is_syntactically_deterministic(p).deterministic);
}

TEST(Determinism, PatternsUnify) {
  auto p = prog("defined:\n  f : list => bool\n");
  cf::VarTypes v{{"x", cf::Type::sort("bool")}, {"xs", cf::Type::sort("list")},
                 {"ys", cf::Type::sort("list")}};
  auto a = cf::parse_term(p.symbols(), "x :: xs", v);
  auto b = cf::parse_term(p.symbols(), "true :: ys", v);
  auto c = cf::parse_term(p.symbols(), "[]", v);
  EXPECT_TRUE(cf::patterns_unify(a, b));
  EXPECT_FALSE(cf::patterns_unify(a, c));
}

TEST(Classify, Lincount) {
  auto r = cf::classify(cf::gen_lin_count().program());
  EXPECT_TRUE(r.cons_free.cons_free);
  EXPECT_TRUE(r.unary.unary);
  EXPECT_EQ(r.data_order, 0);
  EXPECT_TRUE(r.determinism.deterministic);
}

TEST(Classify, BinaryCounterLevelOne) {
  auto r = cf::classify(cf::gen_bin_count(1, 1, 1).program());
  EXPECT_TRUE(r.cons_free.cons_free);
  EXPECT_TRUE(r.unary.unary);
  EXPECT_EQ(r.data_order, 1);
}

TEST(Classify, NondetLevelTwo) {
  auto r = cf::classify(cf::gen_nondet_count(2).program());
  EXPECT_TRUE(r.cons_free.cons_free);
  EXPECT_FALSE(r.unary.unary);
  EXPECT_GE(r.data_order, 1);
}

TEST(Classify, RecordsAreKeyValueLines) {
  auto text = cf::to_records(cf::classify(cf::gen_lin_count().program()));
  EXPECT_NE(text.find("cons_free=true\n"), std::string::npos) << text;
  EXPECT_NE(text.find("data_order=0\n"), std::string::npos) << text;
}

TEST(Classify, NotConsFree) {
  auto r = cf::classify(prog("defined:\n  g : list => list\nrules:\n  g xs -> true :: xs\n"));
  EXPECT_FALSE(r.cons_free.cons_free);
}

}  // namespace
