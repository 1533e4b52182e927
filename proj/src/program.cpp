#include "cf/program.hpp"

#include <algorithm>
#include <set>

namespace cf {

void SymbolTable::add_sort(const std::string& name) {
  if (has_sort(name)) throw Error("duplicate sort '" + name + "'");
  sorts_.push_back(name);
}

void SymbolTable::check_sorts(const Type& t) const {
  if (t.is_sort()) {
    if (!has_sort(t.name())) throw TypeError("unknown sort '" + t.name() + "'");
    return;
  }
  check_sorts(t.left());
  check_sorts(t.right());
}

void SymbolTable::add_constructor(const std::string& name, const Type& type) {
  if (is_symbol(name)) throw Error("duplicate symbol '" + name + "'");
  check_sorts(type);
  for (const auto& arg : type.argument_types()) {
    if (type_order(arg) != 0) {
      throw TypeError("constructor '" + name +
                      "' takes an argument of non-zero order");
    }
  }
  if (!type.final_codomain().is_sort()) {
    throw TypeError("constructor '" + name + "' must produce a sort");
  }
  constructor_index_[name] = constructors_.size();
  constructors_.emplace_back(name, type);
}

void SymbolTable::add_defined(const std::string& name, const Type& type) {
  if (is_symbol(name)) throw Error("duplicate symbol '" + name + "'");
  check_sorts(type);
  defined_index_[name] = defined_.size();
  defined_.emplace_back(name, type);
}

bool SymbolTable::has_sort(const std::string& name) const {
  return std::find(sorts_.begin(), sorts_.end(), name) != sorts_.end();
}

bool SymbolTable::is_constructor(const std::string& name) const {
  return constructor_index_.count(name) != 0;
}

bool SymbolTable::is_defined(const std::string& name) const {
  return defined_index_.count(name) != 0;
}

const Type& SymbolTable::constructor_type(const std::string& name) const {
  auto it = constructor_index_.find(name);
  if (it == constructor_index_.end()) {
    throw Error("unknown constructor '" + name + "'");
  }
  return constructors_[it->second].second;
}

const Type& SymbolTable::defined_type(const std::string& name) const {
  auto it = defined_index_.find(name);
  if (it == defined_index_.end()) {
    throw Error("unknown defined symbol '" + name + "'");
  }
  return defined_[it->second].second;
}

bool operator==(const SymbolTable& a, const SymbolTable& b) {
  return a.sorts_ == b.sorts_ && a.constructors_ == b.constructors_ &&
         a.defined_ == b.defined_;
}

namespace {

bool is_pattern(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Cons:
    case Term::Kind::Pair:
      return std::all_of(t.args().begin(), t.args().end(), is_pattern);
    case Term::Kind::App:
      return t.is_var();
  }
  return false;
}

}  // namespace

std::vector<RuleViolation> check_rule(const SymbolTable& table, const Term& lhs,
                                      const Term& rhs) {
  std::vector<RuleViolation> out;
  if (!lhs.is_app() || lhs.head_kind() != HeadKind::Defined ||
      !table.is_defined(lhs.head())) {
    out.push_back({'a', "left-hand side must be headed by a defined symbol"});
  }
  if (lhs.is_app()) {
    for (const auto& arg : lhs.args()) {
      if (!is_pattern(arg)) {
        out.push_back({'b', "patterns may contain only constructors, pairs "
                            "and variables"});
        break;
      }
    }
  }
  auto occurrences = variable_occurrences(lhs);
  std::set<std::string> seen;
  for (const auto& v : occurrences) {
    if (!seen.insert(v).second) {
      out.push_back({'c', "variable '" + v +
                              "' occurs more than once in the left-hand side"});
      break;
    }
  }
  for (const auto& v : variables(rhs)) {
    if (!seen.count(v)) {
      out.push_back({'d', "variable '" + v +
                              "' of the right-hand side is not bound by the "
                              "left-hand side"});
      break;
    }
  }
  if (!(lhs.type() == rhs.type())) {
    out.push_back({'e', "right-hand side has type " + rhs.type().to_string() +
                            " but left-hand side has type " +
                            lhs.type().to_string()});
  }
  return out;
}

Program::Program(SymbolTable symbols, std::vector<Rule> rules)
    : symbols_(std::move(symbols)), rules_(std::move(rules)) {
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    const Rule& rule = rules_[i];
    auto violations = check_rule(symbols_, rule.lhs, rule.rhs);
    if (!violations.empty()) {
      const auto& v = violations.front();
      throw Error(std::string("rule ") + std::to_string(i + 1) + ": (" +
                  v.condition + ") " + v.message);
    }
    const std::string& f = rule.lhs.head();
    std::size_t k = rule.lhs.args().size();
    auto [it, inserted] = arity_.emplace(f, k);
    if (!inserted && it->second != k) {
      throw Error("rule " + std::to_string(i + 1) + ": inconsistent arity for '" +
                  f + "' (" + std::to_string(k) + " vs " +
                  std::to_string(it->second) + ")");
    }
    by_symbol_[f].push_back(i);
  }
}

std::size_t Program::arity(const std::string& f) const {
  auto it = arity_.find(f);
  if (it != arity_.end()) return it->second;
  return symbols_.defined_type(f).argument_types().size();
}

const std::vector<std::size_t>& Program::rules_for(const std::string& f) const {
  static const std::vector<std::size_t> kNone;
  auto it = by_symbol_.find(f);
  return it == by_symbol_.end() ? kNone : it->second;
}

Program Program::with_rules(std::vector<Rule> rules) const {
  return Program(symbols_, std::move(rules));
}

int data_order(const Program& p) {
  int order = 0;
  for (const auto& [name, type] : p.symbols().defined()) {
    for (const auto& arg : type.argument_types()) {
      order = std::max(order, type_order(arg));
    }
  }
  for (const auto& rule : p.rules()) {
    for (const auto& [name, type] : rule.var_types) {
      order = std::max(order, type_order(type));
    }
  }
  return order;
}

bool is_value(const Program& p, const Term& t) {
  if (!t.is_ground()) return false;
  switch (t.kind()) {
    case Term::Kind::Cons:
      return is_data_term(t);
    case Term::Kind::Pair:
      return is_value(p, t.left()) && is_value(p, t.right());
    case Term::Kind::App:
      if (t.head_kind() != HeadKind::Defined) return false;
      if (t.args().size() >= p.arity(t.head())) return false;
      return std::all_of(t.args().begin(), t.args().end(),
                         [&](const Term& a) { return is_value(p, a); });
  }
  return false;
}

}  // namespace cf
