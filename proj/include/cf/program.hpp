#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cf/error.hpp"
#include "cf/term.hpp"
#include "cf/types.hpp"

namespace cf {

/// Sorts, constructors and defined symbols, in declaration order. The three
/// identifier sets (constructors, defined symbols, variables) are disjoint;
/// variables are scoped per rule and live in Rule::var_types.
class SymbolTable {
 public:
  void add_sort(const std::string& name);
  /// Type must be `i1 => ... => im => kappa`, every `i` of order 0 and
  /// `kappa` a declared sort.
  void add_constructor(const std::string& name, const Type& type);
  void add_defined(const std::string& name, const Type& type);

  bool has_sort(const std::string& name) const;
  bool is_constructor(const std::string& name) const;
  bool is_defined(const std::string& name) const;
  /// Declared name of any kind (sort names excluded).
  bool is_symbol(const std::string& name) const {
    return is_constructor(name) || is_defined(name);
  }

  const Type& constructor_type(const std::string& name) const;
  const Type& defined_type(const std::string& name) const;

  const std::vector<std::string>& sorts() const { return sorts_; }
  const std::vector<std::pair<std::string, Type>>& constructors() const {
    return constructors_;
  }
  const std::vector<std::pair<std::string, Type>>& defined() const {
    return defined_;
  }

  /// Validates that every sort mentioned by `t` is declared.
  void check_sorts(const Type& t) const;

  friend bool operator==(const SymbolTable& a, const SymbolTable& b);

 private:
  std::vector<std::string> sorts_;
  std::vector<std::pair<std::string, Type>> constructors_;
  std::vector<std::pair<std::string, Type>> defined_;
  std::unordered_map<std::string, std::size_t> constructor_index_;
  std::unordered_map<std::string, std::size_t> defined_index_;
};

struct Rule {
  Term lhs;
  Term rhs;
  /// Types of the variables of this rule.
  std::map<std::string, Type> var_types;

  friend bool operator==(const Rule& a, const Rule& b) {
    return a.lhs == b.lhs && a.rhs == b.rhs && a.var_types == b.var_types;
  }
};

/// One violated rule-formation condition, labelled 'a' to 'e'.
struct RuleViolation {
  char condition;
  std::string message;
};

/// Checks conditions (a)-(e) of rule formation: defined head, constructor
/// and variable only patterns, left-linearity, Var(rhs) within Var(lhs),
/// equal types.
std::vector<RuleViolation> check_rule(const SymbolTable& table, const Term& lhs,
                                      const Term& rhs);

/// A consistent set of well-formed rules over a symbol table.
class Program {
 public:
  Program() = default;
  /// Validates every rule and consistency. Throws Error on violation; the
  /// message names the failed condition.
  Program(SymbolTable symbols, std::vector<Rule> rules);

  const SymbolTable& symbols() const { return symbols_; }
  const std::vector<Rule>& rules() const { return rules_; }

  /// Number of lhs arguments of `f`. For a defined symbol without rules this
  /// is the number of arrows in its type.
  std::size_t arity(const std::string& f) const;
  /// Indices into rules() of the rules for `f`, in program order.
  const std::vector<std::size_t>& rules_for(const std::string& f) const;

  /// Returns a copy restricted to the given rules (indices into rules()).
  Program with_rules(std::vector<Rule> rules) const;

  friend bool operator==(const Program& a, const Program& b) {
    return a.symbols_ == b.symbols_ && a.rules_ == b.rules_;
  }

 private:
  SymbolTable symbols_;
  std::vector<Rule> rules_;
  std::unordered_map<std::string, std::size_t> arity_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_symbol_;
};

/// Maximum type order over the argument types of every defined symbol and
/// the types of every rule variable.
int data_order(const Program& p);

/// Values: data terms, pairs of values, and defined symbols applied to fewer
/// values than their arity.
bool is_value(const Program& p, const Term& t);

}  // namespace cf
