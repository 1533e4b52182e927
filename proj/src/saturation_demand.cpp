#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "cf/error.hpp"
#include "cf/saturation.hpp"
#include "hash.hpp"

namespace cf {

namespace {

using Env = std::map<std::string, ValueId>;
using ValueSet = std::vector<ValueId>;  // sorted, distinct

void normalize(ValueSet& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

struct CallKey {
  std::uint32_t symbol;
  std::vector<ValueId> args;
  friend bool operator==(const CallKey&, const CallKey&) = default;
};

struct CallKeyHash {
  std::size_t operator()(const CallKey& k) const {
    std::size_t h = k.symbol;
    for (ValueId a : k.args) h = detail::hash_combine(h, a);
    return h;
  }
};

/// Tabled abstract evaluation. Each entry is a full call `f A1..Ak`
/// (k = arity of f) with a grow-only set of abstract results; a worklist
/// re-evaluates an entry whenever an entry it read has grown. Partial
/// applications become function values whose graphs are read off the table.
class DemandSaturator {
 public:
  DemandSaturator(const Program& p, const std::vector<Term>& inputs,
                  const SaturationOptions& options)
      : p_(p),
        options_(options),
        base_(build_base(p, inputs)),
        domains_(base_, store_, options.domain_cap) {
    for (const auto& [name, type] : p.symbols().defined()) {
      symbol_index_.emplace(name, static_cast<std::uint32_t>(symbols_.size()));
      symbols_.push_back(name);
    }
  }

  std::vector<Term> run(const std::string& f, const std::vector<Term>& args) {
    std::vector<ValueId> call;
    for (const auto& a : args) call.push_back(to_value(a));
    std::size_t arity = p_.arity(f);
    goal_ = lookup(symbol_index_.at(f), prefix(call, arity));
    drain();
    ValueSet goal_results = apply_rest(entries_[goal_].results, call, arity);
    std::vector<Term> out;
    for (ValueId v : goal_results) {
      if (auto t = store_.to_term(v)) out.push_back(*t);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  SaturationStats stats() const {
    SaturationStats s;
    s.mode = SaturationMode::DemandDriven;
    s.base_size = base_.size();
    s.domain_sizes = domains_.materialized_sizes();
    s.statements_generated = entries_.size();
    for (const auto& e : entries_) {
      s.statements_confirmed += e.results.size();
      ++s.subjects_per_symbol[symbols_[e.key.symbol]];
    }
    s.passes = evaluations_;
    return s;
  }

  std::vector<std::string> dump() const {
    std::vector<std::string> out;
    for (const auto& e : entries_) {
      std::string subject = symbols_[e.key.symbol];
      for (ValueId a : e.key.args) subject += " " + wrap(store_.to_string(a));
      for (ValueId r : e.results) {
        out.push_back(subject + " ~ " + store_.to_string(r) + " [confirmed]");
      }
    }
    return out;
  }

 private:
  struct Entry {
    CallKey key;
    ValueSet results;
    std::vector<std::size_t> dependents;
    std::unordered_set<std::size_t> dependent_set;
    bool queued = false;
  };

  static std::string wrap(const std::string& s) {
    return s.find(' ') == std::string::npos || s.front() == '(' ||
                   s.front() == '{'
               ? s
               : "(" + s + ")";
  }

  static std::vector<ValueId> prefix(const std::vector<ValueId>& v,
                                     std::size_t n) {
    return {v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n)};
  }

  ValueId to_value(const Term& t) {
    if (t.is_pair()) return store_.pair(to_value(t.left()), to_value(t.right()));
    return store_.base(t);
  }

  std::size_t lookup(std::uint32_t symbol, std::vector<ValueId> args) {
    CallKey key{symbol, std::move(args)};
    if (auto it = index_.find(key); it != index_.end()) return it->second;
    if (entries_.size() >= options_.statement_cap) {
      throw ResourceError("demand-driven saturation exceeded the statement cap "
                          "of " + std::to_string(options_.statement_cap));
    }
    std::size_t id = entries_.size();
    entries_.push_back(Entry{key, {}, {}, {}, false});
    index_.emplace(std::move(key), id);
    if (nesting_ < options_.eager_nesting) {
      evaluate(id);
    } else {
      enqueue(id);
    }
    return id;
  }

  /// Current results of a call, registering the running evaluation as a
  /// dependent.
  ValueSet read(std::uint32_t symbol, std::vector<ValueId> args) {
    std::size_t id = lookup(symbol, std::move(args));
    if (current_ != kNone && entries_[id].dependent_set.insert(current_).second) {
      entries_[id].dependents.push_back(current_);
    }
    return entries_[id].results;
  }

  void enqueue(std::size_t id) {
    if (entries_[id].queued) return;
    entries_[id].queued = true;
    worklist_.push_back(id);
  }

  void drain() {
    while (!worklist_.empty()) {
      std::size_t id = worklist_.back();
      worklist_.pop_back();
      entries_[id].queued = false;
      evaluate(id);
    }
  }

  void evaluate(std::size_t id) {
    ++evaluations_;
    ++nesting_;
    std::size_t saved = current_;
    current_ = id;
    ValueSet found;
    const std::string& f = symbols_[entries_[id].key.symbol];
    for (std::size_t ri : p_.rules_for(f)) {
      const Rule& rule = p_.rules()[ri];
      Env env;
      bool ok = true;
      const auto& patterns = rule.lhs.args();
      for (std::size_t i = 0; i < patterns.size() && ok; ++i) {
        auto m = abstract_match(store_, patterns[i], entries_[id].key.args[i]);
        ok = !m.empty();
        if (ok) env.insert(m.front().begin(), m.front().end());
      }
      if (!ok) continue;
      ValueSet r = eval(rule.rhs, env);
      found.insert(found.end(), r.begin(), r.end());
    }
    current_ = saved;
    --nesting_;
    normalize(found);
    Entry& e = entries_[id];
    ValueSet merged;
    std::set_union(e.results.begin(), e.results.end(), found.begin(),
                   found.end(), std::back_inserter(merged));
    if (merged.size() == e.results.size()) return;
    e.results = std::move(merged);
    for (std::size_t d : std::vector<std::size_t>(e.dependents)) enqueue(d);
  }

  template <typename Fn>
  static void for_each_tuple(const std::vector<ValueSet>& sets, Fn&& fn) {
    for (const auto& s : sets) {
      if (s.empty()) return;
    }
    std::vector<std::size_t> idx(sets.size(), 0);
    std::vector<ValueId> tuple(sets.size());
    while (true) {
      for (std::size_t i = 0; i < sets.size(); ++i) tuple[i] = sets[i][idx[i]];
      fn(tuple);
      std::size_t k = sets.size();
      while (true) {
        if (k == 0) return;
        --k;
        if (++idx[k] < sets[k].size()) break;
        idx[k] = 0;
      }
    }
  }

  ValueSet apply_all(const ValueSet& fns, const ValueSet& args) {
    ValueSet out;
    for (ValueId fn : fns) {
      for (ValueId a : args) {
        auto r = store_.apply(fn, a);
        out.insert(out.end(), r.begin(), r.end());
      }
    }
    normalize(out);
    return out;
  }

  ValueSet apply_rest(const ValueSet& results, const std::vector<ValueId>& call,
                      std::size_t from) {
    ValueSet cur = results;
    for (std::size_t i = from; i < call.size(); ++i) {
      cur = apply_all(cur, {call[i]});
    }
    return cur;
  }

  ValueSet eval(const Term& t, const Env& env) {
    std::vector<ValueSet> args;
    args.reserve(t.args().size());
    for (const auto& a : t.args()) {
      args.push_back(eval(a, env));
      if (args.back().empty()) return {};
    }
    ValueSet out;
    switch (t.kind()) {
      case Term::Kind::Pair:
        for_each_tuple(args, [&](const std::vector<ValueId>& vs) {
          out.push_back(store_.pair(vs[0], vs[1]));
        });
        break;
      case Term::Kind::Cons:
        for_each_tuple(args, [&](const std::vector<ValueId>& vs) {
          std::vector<Term> data;
          data.reserve(vs.size());
          for (ValueId v : vs) data.push_back(store_.data(v));
          Term d = Term::cons(t.head(), std::move(data), t.type());
          if (!base_.contains(d)) {
            throw PreconditionError("constructed data term outside the base "
                                    "set; the program is not cons-free");
          }
          out.push_back(store_.base(d));
        });
        break;
      case Term::Kind::App:
        if (t.head_kind() == HeadKind::Variable) {
          ValueSet cur{env.at(t.head())};
          for (const auto& a : args) cur = apply_all(cur, a);
          return cur;
        }
        out = eval_call(t.head(), args);
        break;
    }
    normalize(out);
    return out;
  }

  ValueSet eval_call(const std::string& f, const std::vector<ValueSet>& args) {
    std::uint32_t symbol = symbol_index_.at(f);
    std::size_t arity = p_.arity(f);
    ValueSet out;
    if (args.size() < arity) {
      for_each_tuple(args, [&](const std::vector<ValueId>& vs) {
        out.push_back(closure(symbol, vs));
      });
      return out;
    }
    std::vector<ValueSet> head(args.begin(),
                               args.begin() + static_cast<std::ptrdiff_t>(arity));
    for_each_tuple(head, [&](const std::vector<ValueId>& vs) {
      ValueSet r = read(symbol, vs);
      for (std::size_t i = arity; i < args.size() && !r.empty(); ++i) {
        r = apply_all(r, args[i]);
      }
      out.insert(out.end(), r.begin(), r.end());
    });
    return out;
  }

  /// Function value of the partial application `f A1..Aj`, j < arity.
  ValueId closure(std::uint32_t symbol, const std::vector<ValueId>& prefix) {
    const std::string& f = symbols_[symbol];
    std::size_t arity = p_.arity(f);
    Type arg_type = p_.symbols().defined_type(f).argument_types()[prefix.size()];
    std::vector<GraphEntry> graph;
    std::vector<ValueId> ext = prefix;
    ext.push_back(0);
    for (ValueId a : domains_.elements(arg_type)) {
      ext.back() = a;
      if (ext.size() < arity) {
        graph.emplace_back(a, closure(symbol, ext));
      } else {
        for (ValueId r : read(symbol, ext)) graph.emplace_back(a, r);
      }
    }
    return store_.fun(std::move(graph));
  }

  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  const Program& p_;
  SaturationOptions options_;
  BaseSet base_;
  ValueStore store_;
  DomainCache domains_;
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, std::uint32_t> symbol_index_;
  std::deque<Entry> entries_;
  std::unordered_map<CallKey, std::size_t, CallKeyHash> index_;
  std::vector<std::size_t> worklist_;
  std::size_t current_ = kNone;
  std::size_t goal_ = 0;
  std::size_t nesting_ = 0;
  std::uint64_t evaluations_ = 0;
};

}  // namespace

SaturationResult saturate_demand_driven(const Program& p, const std::string& f,
                                        const std::vector<Term>& args,
                                        const SaturationOptions& options) {
  check_saturation_preconditions(p, f, args);
  DemandSaturator sat(p, args, options);
  SaturationResult out;
  out.results = sat.run(f, args);
  out.stats = sat.stats();
  if (options.dump_statements) out.statements = sat.dump();
  return out;
}

}  // namespace cf
