#include <algorithm>
#include <unordered_map>

#include "cf/error.hpp"
#include "cf/saturation.hpp"
#include "cf/syntax.hpp"

namespace cf {

namespace {

constexpr const char* kFreshPrefix = "#";

/// A block of statements sharing one subject shape: one boolean per
/// combination of dimension values and claim, in mixed radix with the claim
/// varying fastest.
struct Table {
  std::vector<Type> dims;
  Type claim_type = Type::sort("");
  std::vector<std::uint64_t> radix;   // size of each dim, then claim domain
  std::vector<std::uint64_t> stride;  // same layout
  std::uint64_t size = 0;
  std::vector<std::uint8_t> confirmed;
};

}  // namespace

struct EagerSaturator::Impl {
  struct FunTables {
    std::size_t m = 0;
    std::size_t arity = 0;
    Table full;
    std::optional<Table> partial;
  };

  struct Subject {
    std::size_t rule;
    Term term;
    std::vector<std::string> vars;
    Table table;
  };

  const Program& p;
  SaturationOptions options;
  BaseSet base;
  ValueStore store;
  DomainCache domains;
  std::string goal;
  std::vector<ValueId> goal_args;
  std::map<std::string, FunTables> fun;
  std::vector<Subject> subjects;
  std::vector<std::unordered_map<Term, std::size_t, TermHash>> rule_subjects;
  std::vector<std::vector<Term>> forms;  // per rule: r, r #1, r #1 #2, ...
  std::vector<std::map<std::string, Type>> form_vars;
  std::uint64_t total = 0;
  std::uint64_t passes = 0;

  Impl(const Program& prog, const std::string& f, const std::vector<Term>& args,
       const SaturationOptions& opts)
      : p(prog),
        options(opts),
        base(build_base(prog, args)),
        domains(base, store, opts.domain_cap),
        goal(f) {
    check_shapes();
    for (const auto& a : args) goal_args.push_back(to_value(a));
    for (const auto& [name, type] : p.symbols().defined()) build_fun(name, type);
    for (std::size_t ri = 0; ri < p.rules().size(); ++ri) build_rule(ri);
    initialize();
  }

  ValueId to_value(const Term& t) {
    if (t.is_pair()) return store.pair(to_value(t.left()), to_value(t.right()));
    return store.base(t);
  }

  void check_shapes() {
    for (const auto& [name, type] : p.symbols().defined()) {
      std::size_t m = type.argument_types().size();
      if (type_order(type.final_codomain()) != 0) {
        throw PreconditionError("eager saturation: '" + name +
                                "' has a final result type of non-zero order");
      }
      std::size_t a = p.arity(name);
      if (a + 1 < m) {
        throw PreconditionError("eager saturation: '" + name + "' has arity " +
                                std::to_string(a) + " but takes " +
                                std::to_string(m) + " arguments");
      }
    }
  }

  Table make_table(std::vector<Type> dims, Type claim) {
    Table t;
    t.dims = std::move(dims);
    t.claim_type = std::move(claim);
    std::uint64_t size = 1;
    auto account = [&](const Type& ty) {
      const auto& d = domains.domain(ty);
      auto c = d.cardinality();
      if (!c || (*c != 0 && size > options.statement_cap / *c)) {
        throw ResourceError("eager statement table exceeds the statement cap "
                            "of " + std::to_string(options.statement_cap));
      }
      size *= *c;
      t.radix.push_back(*c);
    };
    for (const auto& d : t.dims) account(d);
    account(t.claim_type);
    total += size;
    if (total > options.statement_cap) {
      throw ResourceError("eager statement table exceeds the statement cap of " +
                          std::to_string(options.statement_cap));
    }
    for (const auto& d : t.dims) domains.elements(d);
    domains.elements(t.claim_type);
    t.stride.assign(t.radix.size(), 1);
    for (std::size_t i = t.radix.size(); i-- > 1;) {
      t.stride[i - 1] = t.stride[i] * t.radix[i];
    }
    t.size = size;
    t.confirmed.assign(size, 0);
    return t;
  }

  void build_fun(const std::string& name, const Type& type) {
    FunTables ft;
    auto params = type.argument_types();
    ft.m = params.size();
    ft.arity = p.arity(name);
    ft.full = make_table(params, type.final_codomain());
    if (ft.m > 0 && ft.arity + 1 == ft.m) {
      std::vector<Type> head(params.begin(), params.end() - 1);
      ft.partial = make_table(head, type.drop_arguments(ft.m - 1));
    }
    fun.emplace(name, std::move(ft));
  }

  void build_rule(std::size_t ri) {
    const Rule& rule = p.rules()[ri];
    std::map<std::string, Type> vars = rule.var_types;
    std::vector<Term> rule_forms{rule.rhs};
    Term cur = rule.rhs;
    std::size_t n = 0;
    while (cur.type().is_arrow()) {
      std::string x = kFreshPrefix + std::to_string(++n);
      vars.emplace(x, cur.type().domain());
      cur = apply_args(cur, {Term::var(x, cur.type().domain())});
      rule_forms.push_back(cur);
    }
    rule_subjects.emplace_back();
    for (const auto& form : rule_forms) {
      for (const auto& s : subterms(form)) {
        if (rule_subjects.back().count(s)) continue;
        Subject subj{ri, s, variables(s), Table{}};
        std::vector<Type> dims;
        for (const auto& v : subj.vars) dims.push_back(vars.at(v));
        subj.table = make_table(std::move(dims), s.type());
        rule_subjects.back().emplace(s, subjects.size());
        subjects.push_back(std::move(subj));
      }
    }
    forms.push_back(std::move(rule_forms));
    form_vars.push_back(std::move(vars));
  }

  /// Linear index of a statement, or nullopt when a value lies outside its
  /// domain (such statements do not exist and are never confirmed).
  std::optional<std::uint64_t> index(const Table& t,
                                     const std::vector<ValueId>& vals,
                                     ValueId claim) {
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < t.dims.size(); ++i) {
      auto k = domains.index_of(t.dims[i], vals[i]);
      if (!k) return std::nullopt;
      idx += *k * t.stride[i];
    }
    auto k = domains.index_of(t.claim_type, claim);
    if (!k) return std::nullopt;
    return idx + *k;
  }

  void decode(const Table& t, std::uint64_t idx, std::vector<ValueId>& vals,
              ValueId& claim) {
    vals.resize(t.dims.size());
    for (std::size_t i = 0; i < t.dims.size(); ++i) {
      vals[i] = domains.elements(t.dims[i])[(idx / t.stride[i]) % t.radix[i]];
    }
    claim = domains.elements(t.claim_type)[idx % t.radix.back()];
  }

  std::vector<ValueId> bind(const Subject& s, const std::map<std::string, ValueId>& env) {
    std::vector<ValueId> vals;
    vals.reserve(s.vars.size());
    for (const auto& v : s.vars) vals.push_back(env.at(v));
    return vals;
  }

  bool subject_confirmed(std::size_t sid, const std::map<std::string, ValueId>& env,
                         ValueId claim) {
    Subject& s = subjects[sid];
    auto idx = index(s.table, bind(s, env), claim);
    return idx && s.table.confirmed[*idx];
  }

  std::vector<ValueId> confirmed_claims(std::size_t sid,
                                        const std::map<std::string, ValueId>& env) {
    Subject& s = subjects[sid];
    auto vals = bind(s, env);
    const auto& claims = domains.elements(s.table.claim_type);
    std::vector<ValueId> out;
    if (claims.empty()) return out;
    auto first = index(s.table, vals, claims.front());
    if (!first) return out;
    for (std::size_t k = 0; k < claims.size(); ++k) {
      if (s.table.confirmed[*first + k]) out.push_back(claims[k]);
    }
    return out;
  }

  bool fun_confirmed(const std::string& g, const std::vector<ValueId>& args,
                     ValueId claim) {
    FunTables& ft = fun.at(g);
    Table* t = nullptr;
    if (args.size() == ft.m) {
      t = &ft.full;
    } else if (ft.partial && args.size() + 1 == ft.m) {
      t = &*ft.partial;
    } else {
      return false;
    }
    auto idx = index(*t, args, claim);
    return idx && t->confirmed[*idx];
  }

  bool partial_holds(const std::string& g, const std::vector<ValueId>& args,
                     ValueId claim) {
    if (store.kind(claim) != ValueStore::Kind::Fun) return false;
    std::size_t arity = fun.at(g).arity;
    std::vector<ValueId> ext = args;
    ext.push_back(0);
    for (const auto& [a, o] : store.graph(claim)) {
      ext.back() = a;
      bool ok = ext.size() >= arity ? fun_confirmed(g, ext, o)
                                    : partial_holds(g, ext, o);
      if (!ok) return false;
    }
    return true;
  }

  std::size_t sub(const Subject& s, const Term& t) {
    return rule_subjects[s.rule].at(t);
  }

  bool check_subject(std::size_t sid, const std::map<std::string, ValueId>& env,
                     ValueId claim) {
    const Subject& s = subjects[sid];
    const Term& t = s.term;
    switch (t.kind()) {
      case Term::Kind::Cons: {
        if (store.kind(claim) != ValueStore::Kind::Base) return false;
        const Term d = store.data(claim);
        if (d.head() != t.head() || d.args().size() != t.args().size()) {
          return false;
        }
        for (std::size_t i = 0; i < t.args().size(); ++i) {
          if (!subject_confirmed(sub(s, t.args()[i]), env,
                                 store.base(d.args()[i]))) {
            return false;
          }
        }
        return true;
      }
      case Term::Kind::Pair:
        return store.kind(claim) == ValueStore::Kind::Pair &&
               subject_confirmed(sub(s, t.left()), env, store.left(claim)) &&
               subject_confirmed(sub(s, t.right()), env, store.right(claim));
      case Term::Kind::App:
        break;
    }
    if (t.is_var()) return false;
    std::vector<std::vector<ValueId>> arg_claims;
    for (const auto& a : t.args()) {
      arg_claims.push_back(confirmed_claims(sub(s, a), env));
      if (arg_claims.back().empty()) return false;
    }
    if (t.head_kind() == HeadKind::Variable) {
      std::vector<ValueId> cur{env.at(t.head())};
      for (const auto& as : arg_claims) {
        std::vector<ValueId> next;
        for (ValueId fn : cur) {
          for (ValueId a : as) {
            auto r = store.apply(fn, a);
            next.insert(next.end(), r.begin(), r.end());
          }
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        cur = std::move(next);
      }
      return std::binary_search(cur.begin(), cur.end(), claim);
    }
    const std::string& g = t.head();
    std::size_t arity = fun.at(g).arity;
    bool found = false;
    std::vector<ValueId> tuple(arg_claims.size());
    std::function<void(std::size_t)> walk = [&](std::size_t i) {
      if (found) return;
      if (i == arg_claims.size()) {
        found = tuple.size() >= arity ? fun_confirmed(g, tuple, claim)
                                      : partial_holds(g, tuple, claim);
        return;
      }
      for (ValueId a : arg_claims[i]) {
        tuple[i] = a;
        walk(i + 1);
        if (found) return;
      }
    };
    walk(0);
    return found;
  }

  bool check_fun(const std::string& g, const std::vector<ValueId>& args,
                 ValueId claim) {
    for (std::size_t ri : p.rules_for(g)) {
      const Rule& rule = p.rules()[ri];
      std::size_t k = rule.lhs.args().size();
      if (k != args.size() && k + 1 != args.size()) continue;
      std::map<std::string, ValueId> env;
      bool ok = true;
      for (std::size_t i = 0; i < k && ok; ++i) {
        auto m = abstract_match(store, rule.lhs.args()[i], args[i]);
        ok = !m.empty();
        if (ok) env.insert(m.front().begin(), m.front().end());
      }
      if (!ok) continue;
      const Term* form = &forms[ri][0];
      if (k + 1 == args.size()) {
        env[std::string(kFreshPrefix) + "1"] = args.back();
        form = &forms[ri][1];
      }
      if (subject_confirmed(rule_subjects[ri].at(*form), env, claim)) {
        return true;
      }
    }
    return false;
  }

  void initialize() {
    std::vector<ValueId> vals;
    ValueId claim = 0;
    for (auto& s : subjects) {
      if (!s.term.is_var()) continue;
      for (std::uint64_t i = 0; i < s.table.size; ++i) {
        decode(s.table, i, vals, claim);
        s.table.confirmed[i] = store.geq(vals[0], claim) ? 1 : 0;
      }
    }
  }

  bool step() {
    ++passes;
    bool changed = false;
    std::vector<ValueId> vals;
    ValueId claim = 0;
    for (auto& [g, ft] : fun) {
      for (Table* t : {&ft.full, ft.partial ? &*ft.partial : nullptr}) {
        if (!t) continue;
        for (std::uint64_t i = 0; i < t->size; ++i) {
          if (t->confirmed[i]) continue;
          decode(*t, i, vals, claim);
          if (check_fun(g, vals, claim)) {
            t->confirmed[i] = 1;
            changed = true;
          }
        }
      }
    }
    for (std::size_t sid = 0; sid < subjects.size(); ++sid) {
      if (subjects[sid].term.is_var()) continue;
      std::map<std::string, ValueId> env;
      for (std::uint64_t i = 0; i < subjects[sid].table.size; ++i) {
        if (subjects[sid].table.confirmed[i]) continue;
        decode(subjects[sid].table, i, vals, claim);
        env.clear();
        for (std::size_t k = 0; k < vals.size(); ++k) {
          env.emplace(subjects[sid].vars[k], vals[k]);
        }
        if (check_subject(sid, env, claim)) {
          subjects[sid].table.confirmed[i] = 1;
          changed = true;
        }
      }
    }
    return changed;
  }

  std::vector<Term> results() {
    std::vector<Term> out;
    const auto& ft = fun.at(goal);
    for (ValueId w : domains.elements(ft.full.claim_type)) {
      if (fun_confirmed(goal, goal_args, w)) {
        if (auto t = store.to_term(w)) out.push_back(*t);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  void for_each(const std::function<void(const StatementView&)>& fn) {
    std::vector<ValueId> vals;
    StatementView view;
    for (auto& [g, ft] : fun) {
      for (Table* t : {&ft.full, ft.partial ? &*ft.partial : nullptr}) {
        if (!t) continue;
        for (std::uint64_t i = 0; i < t->size; ++i) {
          view = StatementView{};
          view.symbol = g;
          decode(*t, i, vals, view.claim);
          for (ValueId v : vals) view.bindings.emplace_back("", v);
          view.confirmed = t->confirmed[i] != 0;
          fn(view);
        }
      }
    }
    for (const auto& s : subjects) {
      for (std::uint64_t i = 0; i < s.table.size; ++i) {
        view = StatementView{};
        view.subject = &s.term;
        view.rule = s.rule;
        decode(s.table, i, vals, view.claim);
        for (std::size_t k = 0; k < vals.size(); ++k) {
          view.bindings.emplace_back(s.vars[k], vals[k]);
        }
        view.confirmed = s.table.confirmed[i] != 0;
        fn(view);
      }
    }
  }

  SaturationStats stats() {
    SaturationStats s;
    s.mode = SaturationMode::Eager;
    s.base_size = base.size();
    s.domain_sizes = domains.materialized_sizes();
    s.statements_generated = total;
    s.passes = passes;
    for (const auto& [g, ft] : fun) {
      std::uint64_t n = ft.full.size + (ft.partial ? ft.partial->size : 0);
      s.subjects_per_symbol[g] = n;
      s.statements_confirmed +=
          std::count(ft.full.confirmed.begin(), ft.full.confirmed.end(), 1);
      if (ft.partial) {
        s.statements_confirmed += std::count(ft.partial->confirmed.begin(),
                                             ft.partial->confirmed.end(), 1);
      }
    }
    for (const auto& sub : subjects) {
      s.statements_confirmed += std::count(sub.table.confirmed.begin(),
                                           sub.table.confirmed.end(), 1);
    }
    return s;
  }
};

EagerSaturator::EagerSaturator(const Program& p, const std::string& f,
                               const std::vector<Term>& args,
                               const SaturationOptions& options) {
  check_saturation_preconditions(p, f, args);
  impl_ = std::make_unique<Impl>(p, f, args, options);
}

EagerSaturator::~EagerSaturator() = default;

bool EagerSaturator::step() { return impl_->step(); }

void EagerSaturator::run() {
  while (impl_->step()) {
  }
}

std::vector<Term> EagerSaturator::results() const { return impl_->results(); }

SaturationStats EagerSaturator::stats() const { return impl_->stats(); }

const ValueStore& EagerSaturator::store() const { return impl_->store; }

void EagerSaturator::for_each_statement(
    const std::function<void(const StatementView&)>& fn) const {
  impl_->for_each(fn);
}

SaturationResult saturate_eager(const Program& p, const std::string& f,
                                const std::vector<Term>& args,
                                const SaturationOptions& options) {
  EagerSaturator sat(p, f, args, options);
  sat.run();
  SaturationResult out;
  out.results = sat.results();
  out.stats = sat.stats();
  if (options.dump_statements) {
    const ValueStore& store = sat.store();
    sat.for_each_statement([&](const StatementView& v) {
      if (!v.confirmed) return;
      std::string line;
      if (v.subject) {
        line = "rule " + std::to_string(v.rule + 1) + ": " +
               print_term(*v.subject);
        if (!v.bindings.empty()) {
          line += " [";
          for (std::size_t i = 0; i < v.bindings.size(); ++i) {
            if (i) line += ", ";
            line += v.bindings[i].first + " := " +
                    store.to_string(v.bindings[i].second);
          }
          line += "]";
        }
      } else {
        line = v.symbol;
        for (const auto& b : v.bindings) {
          line += " " + store.to_string(b.second);
        }
      }
      out.statements.push_back(line + " ~ " + store.to_string(v.claim) +
                               " [confirmed]");
    });
  }
  return out;
}

}  // namespace cf
