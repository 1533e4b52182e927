#include "cf/abstract.hpp"

#include <algorithm>

#include "cf/error.hpp"
#include "cf/syntax.hpp"
#include "hash.hpp"

namespace cf {

BaseSet::BaseSet(std::vector<Term> elements) : elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()),
                  elements_.end());
  for (const auto& e : elements_) {
    lookup_.insert(e);
    by_sort_[e.type().name()].push_back(e);
  }
}

const std::vector<Term>& BaseSet::of_sort(const std::string& sort) const {
  static const std::vector<Term> kEmpty;
  auto it = by_sort_.find(sort);
  return it == by_sort_.end() ? kEmpty : it->second;
}

namespace {

void collect_data_subterms(const Term& t, std::vector<Term>& out) {
  if (is_data_term(t)) {
    for (auto& s : subterms(t)) out.push_back(std::move(s));
    return;
  }
  for (const auto& a : t.args()) collect_data_subterms(a, out);
}

}  // namespace

BaseSet build_base(const Program& p, const std::vector<Term>& inputs) {
  std::vector<Term> out;
  for (const auto& in : inputs) collect_data_subterms(in, out);
  for (const auto& rule : p.rules()) collect_data_subterms(rule.rhs, out);
  return BaseSet(std::move(out));
}

std::size_t ValueStore::GraphHash::operator()(
    const std::vector<GraphEntry>& g) const {
  std::size_t h = g.size();
  for (const auto& [a, b] : g) {
    h = detail::hash_combine(h, (static_cast<std::size_t>(a) << 32) | b);
  }
  return h;
}

ValueId ValueStore::push(Node node) {
  auto id = static_cast<ValueId>(nodes_.size());
  nodes_.push_back(std::move(node));
  return id;
}

ValueId ValueStore::base(const Term& data) {
  if (auto it = base_index_.find(data); it != base_index_.end()) {
    return it->second;
  }
  ValueId id = push(Node{Kind::Base, data, 0, 0, {}});
  base_index_.emplace(data, id);
  return id;
}

ValueId ValueStore::pair(ValueId left, ValueId right) {
  auto key = std::make_pair(left, right);
  if (auto it = pair_index_.find(key); it != pair_index_.end()) {
    return it->second;
  }
  ValueId id = push(Node{Kind::Pair, std::nullopt, left, right, {}});
  pair_index_.emplace(key, id);
  return id;
}

ValueId ValueStore::fun(std::vector<GraphEntry> graph) {
  std::sort(graph.begin(), graph.end());
  graph.erase(std::unique(graph.begin(), graph.end()), graph.end());
  if (auto it = fun_index_.find(graph); it != fun_index_.end()) {
    return it->second;
  }
  ValueId id = push(Node{Kind::Fun, std::nullopt, 0, 0, graph});
  fun_index_.emplace(std::move(graph), id);
  return id;
}

std::vector<ValueId> ValueStore::apply(ValueId fn, ValueId arg) const {
  std::vector<ValueId> out;
  const auto& g = nodes_[fn].graph;
  auto it = std::lower_bound(g.begin(), g.end(), GraphEntry{arg, 0});
  for (; it != g.end() && it->first == arg; ++it) out.push_back(it->second);
  return out;
}

bool ValueStore::geq(ValueId a, ValueId b) const {
  if (a == b) return true;
  const Node& x = nodes_[a];
  const Node& y = nodes_[b];
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case Kind::Base:
      return false;
    case Kind::Pair:
      return geq(x.left, y.left) && geq(x.right, y.right);
    case Kind::Fun:
      return std::includes(x.graph.begin(), x.graph.end(), y.graph.begin(),
                           y.graph.end());
  }
  return false;
}

std::optional<Term> ValueStore::to_term(ValueId v) const {
  const Node& n = nodes_[v];
  switch (n.kind) {
    case Kind::Base:
      return n.data;
    case Kind::Pair: {
      auto l = to_term(n.left);
      auto r = to_term(n.right);
      if (!l || !r) return std::nullopt;
      return Term::pair(*l, *r);
    }
    case Kind::Fun:
      return std::nullopt;
  }
  return std::nullopt;
}

std::string ValueStore::to_string(ValueId v) const {
  const Node& n = nodes_[v];
  switch (n.kind) {
    case Kind::Base:
      return print_term(*n.data);
    case Kind::Pair:
      return "(" + to_string(n.left) + ", " + to_string(n.right) + ")";
    case Kind::Fun: {
      std::string out = "{";
      bool first = true;
      for (const auto& [a, b] : n.graph) {
        if (!first) out += ", ";
        first = false;
        out += to_string(a) + " |-> " + to_string(b);
      }
      return out + "}";
    }
  }
  return "?";
}

ValueId AbstractDomain::at(std::uint64_t index) const {
  switch (type_.kind()) {
    case Type::Kind::Sort:
      return base_elements_.at(index);
    case Type::Kind::Product: {
      std::uint64_t r = *right_->cardinality();
      return store_->pair(left_->at(index / r), right_->at(index % r));
    }
    case Type::Kind::Arrow: {
      std::uint64_t c = *right_->cardinality();
      std::uint64_t pairs = *left_->cardinality() * c;
      std::vector<GraphEntry> graph;
      for (std::uint64_t bit = 0; bit < pairs; ++bit) {
        if (index >> bit & 1U) {
          graph.emplace_back(left_->at(bit / c), right_->at(bit % c));
        }
      }
      return store_->fun(std::move(graph));
    }
  }
  return 0;
}

const AbstractDomain& DomainCache::domain(const Type& t) {
  if (auto it = domains_.find(t); it != domains_.end()) return *it->second;
  std::unique_ptr<AbstractDomain> d(new AbstractDomain(t, store_));
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 62;
  switch (t.kind()) {
    case Type::Kind::Sort:
      for (const auto& e : base_.of_sort(t.name())) {
        d->base_elements_.push_back(store_.base(e));
      }
      d->cardinality_ = d->base_elements_.size();
      break;
    case Type::Kind::Product: {
      d->left_ = &domain(t.left());
      d->right_ = &domain(t.right());
      auto l = d->left_->cardinality();
      auto r = d->right_->cardinality();
      if (l && r && (*r == 0 || *l <= kLimit / *r)) d->cardinality_ = *l * *r;
      break;
    }
    case Type::Kind::Arrow: {
      d->left_ = &domain(t.domain());
      d->right_ = &domain(t.codomain());
      auto l = d->left_->cardinality();
      auto r = d->right_->cardinality();
      if (l && r && (*r == 0 || *l <= 62 / std::max<std::uint64_t>(*r, 1))) {
        std::uint64_t pairs = *l * *r;
        if (pairs < 62) d->cardinality_ = std::uint64_t{1} << pairs;
      }
      break;
    }
  }
  auto& slot = domains_[t];
  slot = std::move(d);
  return *slot;
}

const std::vector<ValueId>& DomainCache::elements(const Type& t) {
  if (auto it = materialized_.find(t); it != materialized_.end()) {
    return it->second.elements;
  }
  const AbstractDomain& d = domain(t);
  auto card = d.cardinality();
  if (!card || *card > cap_) {
    throw ResourceError("domain of type " + t.to_string() + " has " +
                        (card ? std::to_string(*card) : std::string("> 2^62")) +
                        " elements, exceeding the domain cap of " +
                        std::to_string(cap_));
  }
  Materialized m;
  m.elements.reserve(*card);
  for (std::uint64_t i = 0; i < *card; ++i) {
    ValueId v = d.at(i);
    m.index.emplace(v, static_cast<std::uint32_t>(i));
    m.elements.push_back(v);
  }
  auto& slot = materialized_[t];
  slot = std::move(m);
  return slot.elements;
}

std::optional<std::uint32_t> DomainCache::index_of(const Type& t, ValueId v) {
  elements(t);
  const auto& idx = materialized_.at(t).index;
  auto it = idx.find(v);
  if (it == idx.end()) return std::nullopt;
  return it->second;
}

std::map<std::string, std::uint64_t> DomainCache::materialized_sizes() const {
  std::map<std::string, std::uint64_t> out;
  for (const auto& [t, m] : materialized_) {
    out[t.to_string()] = m.elements.size();
  }
  return out;
}

namespace {

bool match_into(ValueStore& store, const Term& pattern, ValueId value,
                std::map<std::string, ValueId>& gamma) {
  if (pattern.is_var()) {
    gamma.emplace(pattern.head(), value);
    return true;
  }
  if (pattern.is_pair()) {
    if (store.kind(value) != ValueStore::Kind::Pair) return false;
    ValueId l = store.left(value);
    ValueId r = store.right(value);
    return match_into(store, pattern.left(), l, gamma) &&
           match_into(store, pattern.right(), r, gamma);
  }
  if (!pattern.is_cons() || store.kind(value) != ValueStore::Kind::Base) {
    return false;
  }
  const Term data = store.data(value);
  if (data.head() != pattern.head() ||
      data.args().size() != pattern.args().size()) {
    return false;
  }
  for (std::size_t i = 0; i < data.args().size(); ++i) {
    Term sub = data.args()[i];
    if (!match_into(store, pattern.args()[i], store.base(sub), gamma)) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::vector<std::map<std::string, ValueId>> abstract_match(ValueStore& store,
                                                           const Term& pattern,
                                                           ValueId value) {
  std::map<std::string, ValueId> gamma;
  if (!match_into(store, pattern, value, gamma)) return {};
  return {std::move(gamma)};
}

}  // namespace cf
