#include "cf/term.hpp"

#include <algorithm>
#include <unordered_set>

#include "cf/error.hpp"
#include "hash.hpp"

namespace cf {

Term Term::cons(std::string name, std::vector<Term> args, Type type) {
  std::size_t h = detail::hash_combine(11, detail::hash_string(name));
  std::size_t size = 1;
  bool ground = true;
  for (const auto& a : args) {
    h = detail::hash_combine(h, a.hash());
    size += a.size();
    ground = ground && a.is_ground();
  }
  return Term(std::make_shared<const Node>(Node{Kind::Cons, HeadKind::Defined,
                                                std::move(name), std::move(args),
                                                std::move(type), h, size, ground}));
}

Term Term::app(HeadKind head_kind, std::string head, std::vector<Term> args,
               Type type) {
  std::size_t h = detail::hash_combine(
      head_kind == HeadKind::Variable ? 13 : 12, detail::hash_string(head));
  std::size_t size = 1;
  bool ground = head_kind != HeadKind::Variable;
  for (const auto& a : args) {
    h = detail::hash_combine(h, a.hash());
    size += a.size();
    ground = ground && a.is_ground();
  }
  return Term(std::make_shared<const Node>(Node{Kind::App, head_kind,
                                                std::move(head), std::move(args),
                                                std::move(type), h, size, ground}));
}

Term Term::var(std::string name, Type type) {
  return app(HeadKind::Variable, std::move(name), {}, std::move(type));
}

Term Term::pair(Term left, Term right) {
  std::size_t h =
      detail::hash_combine(detail::hash_combine(14, left.hash()), right.hash());
  std::size_t size = 1 + left.size() + right.size();
  bool ground = left.is_ground() && right.is_ground();
  Type type = Type::product(left.type(), right.type());
  return Term(std::make_shared<const Node>(
      Node{Kind::Pair, HeadKind::Defined, std::string{},
           {std::move(left), std::move(right)}, std::move(type), h, size,
           ground}));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind() || a.size() != b.size()) {
    return false;
  }
  if (a.head_kind() != b.head_kind() || a.head() != b.head()) return false;
  const auto& xs = a.args();
  const auto& ys = b.args();
  if (xs.size() != ys.size()) return false;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] == ys[i])) return false;
  }
  return a.type() == b.type();
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (auto c = a.head_kind() <=> b.head_kind(); c != 0) return c;
  if (auto c = a.head() <=> b.head(); c != 0) return c;
  const auto& xs = a.args();
  const auto& ys = b.args();
  if (auto c = xs.size() <=> ys.size(); c != 0) return c;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (auto c = xs[i] <=> ys[i]; c != 0) return c;
  }
  return a.type() <=> b.type();
}

Term substitute(const Term& t, const Substitution& gamma) {
  if (t.is_ground()) return t;
  switch (t.kind()) {
    case Term::Kind::Pair:
      return Term::pair(substitute(t.left(), gamma),
                        substitute(t.right(), gamma));
    case Term::Kind::Cons: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const auto& a : t.args()) args.push_back(substitute(a, gamma));
      return Term::cons(t.head(), std::move(args), t.type());
    }
    case Term::Kind::App: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const auto& a : t.args()) args.push_back(substitute(a, gamma));
      if (t.head_kind() == HeadKind::Defined) {
        return Term::app(HeadKind::Defined, t.head(), std::move(args), t.type());
      }
      auto it = gamma.find(t.head());
      if (it == gamma.end()) {
        return Term::app(HeadKind::Variable, t.head(), std::move(args),
                         t.type());
      }
      if (args.empty()) return it->second;
      return apply_args(it->second, args);
    }
  }
  return t;
}

Term apply_args(const Term& t, const std::vector<Term>& extra) {
  if (extra.empty()) return t;
  if (!t.is_app()) {
    throw TypeError("cannot apply a non-functional term");
  }
  std::vector<Term> args = t.args();
  args.insert(args.end(), extra.begin(), extra.end());
  Type type = t.type().drop_arguments(extra.size());
  return Term::app(t.head_kind(), t.head(), std::move(args), std::move(type));
}

namespace {

void collect_vars(const Term& t, std::vector<std::string>& out) {
  if (t.is_ground()) return;
  if (t.is_app() && t.head_kind() == HeadKind::Variable) {
    out.push_back(t.head());
  }
  for (const auto& a : t.args()) collect_vars(a, out);
}

void collect_subterms(const Term& t, std::vector<Term>& out,
                      std::unordered_set<Term, TermHash>& seen) {
  if (!seen.insert(t).second) return;
  out.push_back(t);
  for (const auto& a : t.args()) collect_subterms(a, out, seen);
}

}  // namespace

std::vector<std::string> variable_occurrences(const Term& t) {
  std::vector<std::string> out;
  collect_vars(t, out);
  return out;
}

std::vector<std::string> variables(const Term& t) {
  std::vector<std::string> out;
  for (auto& v : variable_occurrences(t)) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

std::vector<Term> subterms(const Term& t) {
  std::vector<Term> out;
  std::unordered_set<Term, TermHash> seen;
  collect_subterms(t, out, seen);
  return out;
}

bool is_subterm(const Term& t, const Term& sub) {
  if (t == sub) return true;
  if (sub.size() >= t.size()) return false;
  for (const auto& a : t.args()) {
    if (is_subterm(a, sub)) return true;
  }
  return false;
}

bool is_strict_subterm(const Term& t, const Term& sub) {
  for (const auto& a : t.args()) {
    if (is_subterm(a, sub)) return true;
  }
  return false;
}

bool is_data_term(const Term& t) {
  if (!t.is_cons()) return false;
  for (const auto& a : t.args()) {
    if (!is_data_term(a)) return false;
  }
  return true;
}

}  // namespace cf
