#include <gtest/gtest.h>

#include "cf/error.hpp"
#include "cf/program.hpp"
#include "cf/syntax.hpp"
#include "cf/typing.hpp"
#include "support/support.hpp"

namespace {

using cf::Term;
using cf::Type;

const char* kChoose = R"(
sorts: bool list
constructors:
  true : bool
  false : bool
  [] : list
  :: : bool => list => list
defined:
  choose : bool => bool => bool
  f : list => bool
rules:
  choose x y -> x
  choose x y -> y
)";

Type bool_t() { return Type::sort("bool"); }
Type list_t() { return Type::sort("list"); }

TEST(TypeOrder, SortIsZero) { EXPECT_EQ(cf::type_order(bool_t()), 0); }

TEST(TypeOrder, FirstOrderArrowIsOne) {
  EXPECT_EQ(cf::type_order(Type::arrow(list_t(), bool_t())), 1);
}

TEST(TypeOrder, FunctionArgumentRaisesOrder) {
  Type bb = Type::arrow(bool_t(), bool_t());
  EXPECT_EQ(cf::type_order(Type::arrow(bb, list_t())), 2);
}

TEST(TypeOrder, ProductTakesMaximum) {
  Type bb = Type::arrow(bool_t(), bool_t());
  EXPECT_EQ(cf::type_order(Type::product(bool_t(), list_t())), 0);
  EXPECT_EQ(cf::type_order(Type::product(bb, list_t())), 1);
}

TEST(TypeOrder, ResultSideDoesNotAddOne) {
  Type t = Type::arrow(bool_t(), Type::arrow(bool_t(), list_t()));
  EXPECT_EQ(cf::type_order(t), 1);
}

TEST(Types, PrintingRoundTrips) {
  for (const char* text : {"bool", "bool => list => bool", "(bool => bool) => list",
                           "bool * list => bool * bool", "(bool * list) * bool",
                           "bool => (bool => bool) * list"}) {
    Type t = cf::parse_type(text);
    EXPECT_EQ(cf::parse_type(t.to_string()), t) << text;
  }
}

TEST(Types, ArgumentsAndFinalCodomain) {
  Type t = cf::parse_type("list => (bool => bool) => list * list");
  ASSERT_EQ(t.argument_types().size(), 2u);
  EXPECT_EQ(t.argument_types()[1], cf::parse_type("bool => bool"));
  EXPECT_EQ(t.final_codomain(), cf::parse_type("list * list"));
  EXPECT_EQ(t.drop_arguments(1), cf::parse_type("(bool => bool) => list * list"));
  EXPECT_THROW(t.drop_arguments(3), cf::TypeError);
}

class CoreWithTable : public ::testing::Test {
 protected:
  cf::Program p = cf::parse_program(kChoose);
  const cf::SymbolTable& table = p.symbols();
};

TEST_F(CoreWithTable, ConsListHasListType) {
  Term t = cf::parse_term(table, "true :: []", {});
  EXPECT_EQ(t.type(), list_t());
  EXPECT_TRUE(cf::is_data_term(t));
}

TEST_F(CoreWithTable, PartialConstructorIsRejected) {
  EXPECT_THROW(cf::parse_term(table, "(::) true", {}), cf::Error);
  EXPECT_THROW(cf::type_check(table, {}, cf::RawTerm::make_apply(cf::RawTerm::make_name("::"),
                                                            {cf::RawTerm::make_name("true")})),
               cf::TypeError);
}

TEST_F(CoreWithTable, PartialDefinedSymbolIsAFunction) {
  Term t = cf::parse_term(table, "choose true", {});
  EXPECT_EQ(t.type(), Type::arrow(bool_t(), bool_t()));
}

TEST_F(CoreWithTable, ArgumentMismatchIsReportedWithPosition) {
  try {
    cf::parse_term(table, "choose []", {});
    FAIL();
  } catch (const cf::ParseError& e) {
    ASSERT_EQ(e.diagnostics().size(), 1u);
    EXPECT_EQ(e.diagnostics()[0].pos.column, 8);
  }
  EXPECT_THROW(cf::parse_term(table, "nosuch true", {}), cf::ParseError);
  auto raw = cf::RawTerm::make_apply(cf::RawTerm::make_name("choose"),
                                     {cf::RawTerm::make_name("[]")});
  EXPECT_THROW(cf::type_check(table, {}, raw), cf::TypeError);
}

TEST_F(CoreWithTable, SubtermsExcludeTheHead) {
  Term t = cf::parse_term(table, "f (true :: [])", {});
  auto subs = cf::subterms(t);
  auto has = [&](const std::string& s) {
    for (const auto& u : subs) {
      if (cf::print_term(u) == s) return true;
    }
    return false;
  };
  EXPECT_TRUE(has("f (true :: [])"));
  EXPECT_TRUE(has("true :: []"));
  EXPECT_TRUE(has("true"));
  EXPECT_TRUE(has("[]"));
  EXPECT_FALSE(has("f"));
  EXPECT_EQ(subs.size(), 4u);
}

TEST_F(CoreWithTable, PairSubterms) {
  Term t = cf::parse_term(table, "(true, [])", {});
  EXPECT_EQ(cf::subterms(t).size(), 3u);
}

TEST_F(CoreWithTable, VariableSubtermIsItself) {
  Term x = Term::var("x", bool_t());
  auto subs = cf::subterms(x);
  ASSERT_EQ(subs.size(), 1u);
  EXPECT_EQ(subs[0], x);
  EXPECT_TRUE(cf::is_subterm(x, x));
  EXPECT_FALSE(cf::is_strict_subterm(x, x));
}

TEST_F(CoreWithTable, ValuesFollowArity) {
  EXPECT_TRUE(cf::is_value(p, cf::parse_term(table, "true :: []", {})));
  Term partial = cf::parse_term(table, "choose true", {});
  EXPECT_TRUE(cf::is_value(p, partial));
  EXPECT_FALSE(cf::is_data_term(partial));
  EXPECT_FALSE(cf::is_value(p, cf::parse_term(table, "choose true false", {})));
  EXPECT_TRUE(cf::is_value(p, cf::parse_term(table, "(choose false, [])", {})));
}

TEST_F(CoreWithTable, ChooseRuleIsWellFormed) {
  EXPECT_TRUE(cf::check_rule(table, p.rules()[0].lhs, p.rules()[0].rhs).empty());
  EXPECT_EQ(p.arity("choose"), 2u);
}

TEST_F(CoreWithTable, NonLinearLeftHandSideViolatesC) {
  Term x = Term::var("x", bool_t());
  cf::Rule r{cf::parse_term(table, "choose x x", {{"x", bool_t()}}), x, {{"x", bool_t()}}};
  auto v = cf::check_rule(table, r.lhs, r.rhs);
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v[0].condition, 'c');
}

TEST_F(CoreWithTable, UnboundRhsVariableViolatesD) {
  cf::Rule r{cf::parse_term(table, "f x", {{"x", list_t()}}), Term::var("y", bool_t()),
             {{"x", list_t()}}};
  auto v = cf::check_rule(table, r.lhs, r.rhs);
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v[0].condition, 'd');
}

TEST_F(CoreWithTable, TypeMismatchBetweenSidesViolatesE) {
  cf::Rule r{cf::parse_term(table, "f x", {{"x", list_t()}}), Term::var("x", list_t()),
             {{"x", list_t()}}};
  bool found = false;
  for (const auto& v : cf::check_rule(table, r.lhs, r.rhs)) found |= v.condition == 'e';
  EXPECT_TRUE(found);
}

TEST_F(CoreWithTable, DefinedSymbolInPatternViolatesB) {
  cf::Rule r{cf::parse_term(table, "f (choose true false :: [])", {}),
             cf::parse_term(table, "true", {}), {}};
  bool found = false;
  for (const auto& v : cf::check_rule(table, r.lhs, r.rhs)) found |= v.condition == 'b';
  EXPECT_TRUE(found);
}

TEST_F(CoreWithTable, ConstructorHeadViolatesA) {
  cf::Rule r{cf::parse_term(table, "true", {}), cf::parse_term(table, "false", {}), {}};
  bool found = false;
  for (const auto& v : cf::check_rule(table, r.lhs, r.rhs)) found |= v.condition == 'a';
  EXPECT_TRUE(found);
}

TEST(Program, InconsistentArityIsRejected) {
  EXPECT_THROW(cf::parse_program(R"(
sorts: bool
constructors:
  true : bool
defined:
  g : bool => bool => bool
rules:
  g x y -> x
  g x -> g x
)"),
               cf::Error);
}

TEST(Program, SymbolWithoutRulesTakesAllArguments) {
  cf::Program p = cf::parse_program(kChoose);
  EXPECT_EQ(p.arity("f"), 1u);
}

TEST(DataOrder, FirstOrderProgramIsZero) {
  EXPECT_EQ(cf::data_order(cf::parse_program(kChoose)), 0);
}

TEST(DataOrder, FunctionArgumentsRaiseIt) {
  cf::Program p = cftest::load_program(cftest::data_dir() / "corpus" / "order2.cf");
  EXPECT_EQ(cf::data_order(p), 2);
}

TEST(Constructors, HigherOrderArgumentIsRejected) {
  cf::SymbolTable t;
  t.add_sort("bool");
  EXPECT_THROW(t.add_constructor("c", cf::parse_type("(bool => bool) => bool")),
               cf::Error);
  EXPECT_THROW(t.add_constructor("d", cf::parse_type("bool => bool * bool")),
               cf::Error);
}

}  // namespace
