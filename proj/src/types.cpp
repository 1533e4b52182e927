#include "cf/types.hpp"

#include <algorithm>

#include "cf/error.hpp"
#include "hash.hpp"

namespace cf {

Type Type::sort(std::string name) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Sort;
  node->hash = detail::hash_combine(1, detail::hash_string(name));
  node->name = std::move(name);
  return Type(std::move(node));
}

Type Type::product(Type left, Type right) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Product;
  node->hash = detail::hash_combine(detail::hash_combine(2, left.hash()),
                                    right.hash());
  node->children = {std::move(left), std::move(right)};
  return Type(std::move(node));
}

Type Type::arrow(Type domain, Type codomain) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Arrow;
  node->hash = detail::hash_combine(detail::hash_combine(3, domain.hash()),
                                    codomain.hash());
  node->children = {std::move(domain), std::move(codomain)};
  return Type(std::move(node));
}

Type Type::arrows(const std::vector<Type>& args, Type result) {
  for (auto it = args.rbegin(); it != args.rend(); ++it) {
    result = arrow(*it, std::move(result));
  }
  return result;
}

std::vector<Type> Type::argument_types() const {
  std::vector<Type> out;
  const Type* t = this;
  while (t->is_arrow()) {
    out.push_back(t->domain());
    t = &t->codomain();
  }
  return out;
}

Type Type::final_codomain() const {
  const Type* t = this;
  while (t->is_arrow()) t = &t->codomain();
  return *t;
}

Type Type::drop_arguments(std::size_t n) const {
  Type t = *this;
  for (std::size_t i = 0; i < n; ++i) {
    if (!t.is_arrow()) {
      throw TypeError("type " + to_string() + " takes fewer than " +
                      std::to_string(n) + " arguments");
    }
    t = t.codomain();
  }
  return t;
}

namespace {

// Precedence: arrow 0 (right assoc), product 1 (right assoc), atom 2.
void print(const Type& t, int prec, std::string& out) {
  switch (t.kind()) {
    case Type::Kind::Sort:
      out += t.name();
      return;
    case Type::Kind::Product:
      if (prec > 1) out += "(";
      print(t.left(), 2, out);
      out += " * ";
      print(t.right(), 1, out);
      if (prec > 1) out += ")";
      return;
    case Type::Kind::Arrow:
      if (prec > 0) out += "(";
      print(t.domain(), 1, out);
      out += " => ";
      print(t.codomain(), 0, out);
      if (prec > 0) out += ")";
      return;
  }
}

}  // namespace

std::string Type::to_string() const {
  std::string out;
  print(*this, 0, out);
  return out;
}

bool operator==(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind()) return false;
  if (a.is_sort()) return a.name() == b.name();
  return a.left() == b.left() && a.right() == b.right();
}

std::strong_ordering operator<=>(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (a.is_sort()) return a.name() <=> b.name();
  if (auto c = a.left() <=> b.left(); c != 0) return c;
  return a.right() <=> b.right();
}

int type_order(const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Sort:
      return 0;
    case Type::Kind::Product:
      return std::max(type_order(t.left()), type_order(t.right()));
    case Type::Kind::Arrow:
      return std::max(type_order(t.domain()) + 1, type_order(t.codomain()));
  }
  return 0;
}

}  // namespace cf
