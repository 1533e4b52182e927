#pragma once

#include <optional>
#include <string>

#include "cf/program.hpp"

namespace cf {

struct ConsFreeResult {
  bool cons_free = true;
  /// On failure: the offending rule and rhs subterm.
  std::optional<std::size_t> rule;
  std::optional<Term> witness;
};

struct UnaryResult {
  bool unary = true;
  std::optional<std::size_t> rule;
  std::optional<std::string> variable;
  std::optional<Type> variable_type;
};

struct DeterminismResult {
  bool deterministic = true;
  /// Indices of two rules with unifiable left-hand sides.
  std::optional<std::pair<std::size_t, std::size_t>> overlap;
};

struct AnalysisReport {
  ConsFreeResult cons_free;
  UnaryResult unary;
  int data_order = 0;
  DeterminismResult determinism;
};

/// Every constructor-headed subterm of a right-hand side is a data term or a
/// strict subterm of the left-hand side.
ConsFreeResult is_cons_free(const Program& p);
bool is_cons_free_rule(const Rule& rule, Term* witness = nullptr);

/// Every rule variable has type `iota` or `sigma => iota` with o(iota) = 0.
UnaryResult has_unary_variables(const Program& p);
bool is_unary_type(const Type& t);

/// No two distinct rules have unifiable left-hand sides. Conservative.
DeterminismResult is_syntactically_deterministic(const Program& p);

/// Whether two linear patterns with disjoint variables unify.
bool patterns_unify(const Term& a, const Term& b);

AnalysisReport classify(const Program& p);

/// Line-oriented `key=value` rendering.
std::string to_records(const AnalysisReport& r);
std::string to_human(const AnalysisReport& r);

}  // namespace cf
