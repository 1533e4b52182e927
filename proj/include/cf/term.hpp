#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cf/types.hpp"

namespace cf {

/// What the head of an application refers to.
enum class HeadKind { Defined, Variable };

/// Typed terms. Constructor applications are always saturated; defined
/// symbols and variables may be partially applied. A bare variable or bare
/// defined symbol is an application with no arguments.
class Term {
 public:
  enum class Kind { Cons, App, Pair };

  static Term cons(std::string name, std::vector<Term> args, Type type);
  static Term app(HeadKind head_kind, std::string head, std::vector<Term> args,
                  Type type);
  static Term var(std::string name, Type type);
  static Term pair(Term left, Term right);

  Kind kind() const { return node_->kind; }
  bool is_cons() const { return kind() == Kind::Cons; }
  bool is_app() const { return kind() == Kind::App; }
  bool is_pair() const { return kind() == Kind::Pair; }
  bool is_var() const {
    return is_app() && node_->head_kind == HeadKind::Variable &&
           node_->children.empty();
  }

  /// Constructor name or application head.
  const std::string& head() const { return node_->name; }
  HeadKind head_kind() const { return node_->head_kind; }
  /// Arguments of a constructor or an application; components of a pair.
  const std::vector<Term>& args() const { return node_->children; }
  const Term& left() const { return node_->children[0]; }
  const Term& right() const { return node_->children[1]; }

  const Type& type() const { return node_->type; }
  std::size_t hash() const { return node_->hash; }
  bool is_ground() const { return node_->ground; }
  std::size_t size() const { return node_->size; }

  /// Same node (cheap identity test).
  bool same(const Term& other) const { return node_ == other.node_; }

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  struct Node {
    Kind kind;
    HeadKind head_kind = HeadKind::Defined;
    std::string name;
    std::vector<Term> children;
    Type type;
    std::size_t hash = 0;
    std::size_t size = 1;
    bool ground = true;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

using Substitution = std::map<std::string, Term>;

/// Replaces variables by their images. A variable head bound to a partial
/// application `g v1..vj` is flattened into `g v1..vj s1..sn`.
Term substitute(const Term& t, const Substitution& gamma);

/// Appends further arguments to an application (the over-application case
/// of call-by-value reduction). `t` must be an application or, when `extra`
/// is empty, anything.
Term apply_args(const Term& t, const std::vector<Term>& extra);

/// Variable names of `t` in first-occurrence order (duplicates kept once).
std::vector<std::string> variables(const Term& t);
/// Every variable occurrence, duplicates included.
std::vector<std::string> variable_occurrences(const Term& t);

/// Reflexive subterms over argument positions and pair components. The head
/// of an application is never a subterm. Distinct, in pre-order.
std::vector<Term> subterms(const Term& t);
/// Whether `sub` is a subterm of `t` (t |> sub or t == sub).
bool is_subterm(const Term& t, const Term& sub);
/// Whether `sub` is a subterm of `t` different from `t` itself.
bool is_strict_subterm(const Term& t, const Term& sub);

/// Ground constructor term.
bool is_data_term(const Term& t);

}  // namespace cf
