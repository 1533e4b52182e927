#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace cf {

/// Simple types: sorts, binary products and arrows. Immutable and shared.
class Type {
 public:
  enum class Kind { Sort, Product, Arrow };

  static Type sort(std::string name);
  static Type product(Type left, Type right);
  static Type arrow(Type domain, Type codomain);
  /// Right-nested arrow `args[0] => ... => args[n-1] => result`.
  static Type arrows(const std::vector<Type>& args, Type result);

  Kind kind() const { return node_->kind; }
  bool is_sort() const { return kind() == Kind::Sort; }
  bool is_product() const { return kind() == Kind::Product; }
  bool is_arrow() const { return kind() == Kind::Arrow; }

  const std::string& name() const { return node_->name; }
  /// Left component of a product, domain of an arrow.
  const Type& left() const { return node_->children[0]; }
  /// Right component of a product, codomain of an arrow.
  const Type& right() const { return node_->children[1]; }
  const Type& domain() const { return left(); }
  const Type& codomain() const { return right(); }

  std::size_t hash() const { return node_->hash; }

  /// Splits `s1 => ... => sm => iota` with iota not an arrow.
  std::vector<Type> argument_types() const;
  Type final_codomain() const;
  /// Strips `n` leading arrows; throws TypeError if there are fewer.
  Type drop_arguments(std::size_t n) const;

  std::string to_string() const;

  friend bool operator==(const Type& a, const Type& b);
  friend std::strong_ordering operator<=>(const Type& a, const Type& b);

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::vector<Type> children;
    std::size_t hash = 0;
  };
  explicit Type(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// o(sort) = 0, o(a x b) = max, o(a => b) = max(o(a) + 1, o(b)).
int type_order(const Type& t);

struct TypeHash {
  std::size_t operator()(const Type& t) const { return t.hash(); }
};

}  // namespace cf
