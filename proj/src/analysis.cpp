#include "cf/analysis.hpp"

#include <sstream>

#include "cf/syntax.hpp"

namespace cf {

bool is_cons_free_rule(const Rule& rule, Term* witness) {
  for (const auto& s : subterms(rule.rhs)) {
    if (!s.is_cons()) continue;
    if (is_data_term(s) || is_strict_subterm(rule.lhs, s)) continue;
    if (witness) *witness = s;
    return false;
  }
  return true;
}

ConsFreeResult is_cons_free(const Program& p) {
  ConsFreeResult out;
  for (std::size_t i = 0; i < p.rules().size(); ++i) {
    Term w = p.rules()[i].rhs;
    if (!is_cons_free_rule(p.rules()[i], &w)) {
      out.cons_free = false;
      out.rule = i;
      out.witness = w;
      return out;
    }
  }
  return out;
}

bool is_unary_type(const Type& t) {
  if (type_order(t) == 0) return true;
  return t.is_arrow() && type_order(t.codomain()) == 0;
}

UnaryResult has_unary_variables(const Program& p) {
  UnaryResult out;
  for (std::size_t i = 0; i < p.rules().size(); ++i) {
    const Rule& rule = p.rules()[i];
    for (const auto& v : variables(rule.lhs)) {
      const Type& t = rule.var_types.at(v);
      if (!is_unary_type(t)) {
        out.unary = false;
        out.rule = i;
        out.variable = v;
        out.variable_type = t;
        return out;
      }
    }
  }
  return out;
}

bool patterns_unify(const Term& a, const Term& b) {
  if (a.is_var() || b.is_var()) return true;
  if (a.kind() != b.kind()) return false;
  if (a.is_cons() && a.head() != b.head()) return false;
  if (a.args().size() != b.args().size()) return false;
  for (std::size_t i = 0; i < a.args().size(); ++i) {
    if (!patterns_unify(a.args()[i], b.args()[i])) return false;
  }
  return true;
}

DeterminismResult is_syntactically_deterministic(const Program& p) {
  DeterminismResult out;
  const auto& rules = p.rules();
  for (std::size_t i = 0; i < rules.size(); ++i) {
    for (std::size_t j = i + 1; j < rules.size(); ++j) {
      // Linear patterns renamed apart unify iff they are structurally
      // compatible, so the variable names never matter here.
      if (rules[i].lhs.head() != rules[j].lhs.head()) continue;
      if (patterns_unify(rules[i].lhs, rules[j].lhs)) {
        out.deterministic = false;
        out.overlap = {i, j};
        return out;
      }
    }
  }
  return out;
}

AnalysisReport classify(const Program& p) {
  return AnalysisReport{is_cons_free(p), has_unary_variables(p), data_order(p),
                        is_syntactically_deterministic(p)};
}

std::string to_records(const AnalysisReport& r) {
  std::ostringstream out;
  out << "cons_free=" << (r.cons_free.cons_free ? "true" : "false") << "\n";
  if (r.cons_free.witness) {
    out << "cons_free.rule=" << (*r.cons_free.rule + 1) << "\n";
    out << "cons_free.witness=" << print_term(*r.cons_free.witness) << "\n";
  }
  out << "unary_variables=" << (r.unary.unary ? "true" : "false") << "\n";
  if (r.unary.variable) {
    out << "unary_variables.rule=" << (*r.unary.rule + 1) << "\n";
    out << "unary_variables.witness=" << *r.unary.variable << "\n";
    out << "unary_variables.type=" << r.unary.variable_type->to_string()
        << "\n";
  }
  out << "data_order=" << r.data_order << "\n";
  out << "deterministic=" << (r.determinism.deterministic ? "true" : "false")
      << "\n";
  if (r.determinism.overlap) {
    out << "deterministic.overlap=" << (r.determinism.overlap->first + 1) << ","
        << (r.determinism.overlap->second + 1) << "\n";
  }
  return out.str();
}

std::string to_human(const AnalysisReport& r) {
  std::ostringstream out;
  if (r.cons_free.cons_free) {
    out << "cons-free:       yes\n";
  } else {
    out << "cons-free:       NO (rule " << (*r.cons_free.rule + 1)
        << " builds " << print_term(*r.cons_free.witness) << ")\n";
  }
  if (r.unary.unary) {
    out << "unary variables: yes\n";
  } else {
    out << "unary variables: no (warning: variable " << *r.unary.variable
        << " : " << r.unary.variable_type->to_string() << " in rule "
        << (*r.unary.rule + 1) << ")\n";
  }
  out << "data order:      " << r.data_order << "\n";
  if (r.determinism.deterministic) {
    out << "deterministic:   yes (no overlapping rules)\n";
  } else {
    out << "deterministic:   no (rules " << (r.determinism.overlap->first + 1)
        << " and " << (r.determinism.overlap->second + 1) << " overlap)\n";
  }
  return out.str();
}

}  // namespace cf
