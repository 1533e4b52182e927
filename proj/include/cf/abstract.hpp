#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "cf/program.hpp"

namespace cf {

/// The finite set of data terms available to an evaluation: every subterm of
/// every input together with every data subterm of every right-hand side.
class BaseSet {
 public:
  BaseSet() = default;
  explicit BaseSet(std::vector<Term> elements);

  /// Sorted, distinct.
  const std::vector<Term>& elements() const { return elements_; }
  /// Elements of the given sort, sorted.
  const std::vector<Term>& of_sort(const std::string& sort) const;
  bool contains(const Term& t) const { return lookup_.count(t) != 0; }
  std::size_t size() const { return elements_.size(); }

 private:
  std::vector<Term> elements_;
  std::unordered_set<Term, TermHash> lookup_;
  std::map<std::string, std::vector<Term>> by_sort_;
};

/// Subterms of the inputs plus data subterms of every rhs.
BaseSet build_base(const Program& p, const std::vector<Term>& inputs);

using ValueId = std::uint32_t;
using GraphEntry = std::pair<ValueId, ValueId>;

/// Hash-consed abstract values: base data terms, pairs, and functions given
/// by a finite graph of (argument, result) pairs. Equal values get equal ids,
/// so comparing ids decides equality. Graphs are kept sorted and distinct.
class ValueStore {
 public:
  enum class Kind : std::uint8_t { Base, Pair, Fun };

  ValueId base(const Term& data);
  ValueId pair(ValueId left, ValueId right);
  ValueId fun(std::vector<GraphEntry> graph);

  Kind kind(ValueId v) const { return nodes_[v].kind; }
  const Term& data(ValueId v) const { return *nodes_[v].data; }
  ValueId left(ValueId v) const { return nodes_[v].left; }
  ValueId right(ValueId v) const { return nodes_[v].right; }
  std::span<const GraphEntry> graph(ValueId v) const {
    return nodes_[v].graph;
  }

  /// Results `O` with `(arg, O)` in the graph of `fn`, ascending.
  std::vector<ValueId> apply(ValueId fn, ValueId arg) const;

  /// Equality at sorts, componentwise at pairs, superset at functions.
  bool geq(ValueId a, ValueId b) const;

  /// Concrete value for order-0 abstract values (bases and pairs).
  std::optional<Term> to_term(ValueId v) const;
  std::string to_string(ValueId v) const;

  std::size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    Kind kind;
    std::optional<Term> data;
    ValueId left = 0;
    ValueId right = 0;
    std::vector<GraphEntry> graph;
  };
  struct GraphHash {
    std::size_t operator()(const std::vector<GraphEntry>& g) const;
  };
  struct PairHash {
    std::size_t operator()(const std::pair<ValueId, ValueId>& p) const {
      return (static_cast<std::size_t>(p.first) << 32) ^ p.second;
    }
  };

  ValueId push(Node node);

  std::vector<Node> nodes_;
  std::unordered_map<Term, ValueId, TermHash> base_index_;
  std::unordered_map<std::pair<ValueId, ValueId>, ValueId, PairHash>
      pair_index_;
  std::unordered_map<std::vector<GraphEntry>, ValueId, GraphHash> fun_index_;
};

/// The abstract interpretation of a type over a base set, enumerated lazily:
/// sorts map to base elements, products to pairs, arrows to every subset of
/// (argument, result) pairs.
class AbstractDomain {
 public:
  /// Number of elements, or nullopt when it does not fit in 62 bits.
  std::optional<std::uint64_t> cardinality() const { return cardinality_; }
  const Type& type() const { return type_; }

  /// Element with the given index, `index < cardinality()`.
  ValueId at(std::uint64_t index) const;

 private:
  friend class DomainCache;
  AbstractDomain(Type type, ValueStore& store) : type_(std::move(type)), store_(&store) {}

  Type type_;
  ValueStore* store_;
  std::optional<std::uint64_t> cardinality_;
  std::vector<ValueId> base_elements_;
  const AbstractDomain* left_ = nullptr;
  const AbstractDomain* right_ = nullptr;
};

/// Owns the domains of one evaluation. Materialization is bounded by `cap`;
/// exceeding it raises ResourceError rather than truncating.
class DomainCache {
 public:
  DomainCache(const BaseSet& base, ValueStore& store, std::uint64_t cap)
      : base_(base), store_(store), cap_(cap) {}

  const AbstractDomain& domain(const Type& t);
  /// All elements of the domain in index order, cached.
  const std::vector<ValueId>& elements(const Type& t);
  /// Index of `v` within the materialized domain of `t`, if present.
  std::optional<std::uint32_t> index_of(const Type& t, ValueId v);

  std::uint64_t cap() const { return cap_; }
  /// Sizes of every materialized domain, keyed by printed type.
  std::map<std::string, std::uint64_t> materialized_sizes() const;

 private:
  struct Materialized {
    std::vector<ValueId> elements;
    std::unordered_map<ValueId, std::uint32_t> index;
  };

  const BaseSet& base_;
  ValueStore& store_;
  std::uint64_t cap_;
  std::unordered_map<Type, std::unique_ptr<AbstractDomain>, TypeHash> domains_;
  std::unordered_map<Type, Materialized, TypeHash> materialized_;
};

/// Substitutions (at most one here) binding the pattern's variables so that
/// the instantiated pattern equals `value`: constructor patterns decompose
/// base data terms, pair patterns decompose pairs, variables bind anything.
std::vector<std::map<std::string, ValueId>> abstract_match(ValueStore& store,
                                                           const Term& pattern,
                                                           ValueId value);

}  // namespace cf
