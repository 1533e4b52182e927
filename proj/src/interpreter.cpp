#include "cf/interpreter.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "cf/syntax.hpp"
#include "hash.hpp"

namespace cf {

void TraceWriter::on_step(std::size_t depth, const Term& redex,
                          std::size_t rule, const Term& instance) {
  out_ << "step " << ++count_ << " depth " << depth << " rule " << (rule + 1)
       << ": " << print_term(redex) << " => " << print_term(instance) << "\n";
}

namespace {

void add_data_subterms(const Term& t,
                       std::unordered_set<Term, TermHash>& out) {
  if (is_data_term(t)) {
    for (const auto& s : subterms(t)) out.insert(s);
    return;
  }
  for (const auto& a : t.args()) add_data_subterms(a, out);
}

}  // namespace

SubtermClosureChecker::SubtermClosureChecker(const Program& p,
                                             const std::vector<Term>& inputs) {
  for (const auto& in : inputs) add_data_subterms(in, allowed_);
  for (const auto& rule : p.rules()) add_data_subterms(rule.rhs, allowed_);
}

void SubtermClosureChecker::check(const Term& t) {
  if (is_data_term(t)) {
    ++checked_;
    if (!allowed_.count(t)) violations_.push_back(t);
    return;
  }
  for (const auto& a : t.args()) check(a);
}

void SubtermClosureChecker::on_step(std::size_t, const Term& redex,
                                    std::size_t, const Term& instance) {
  check(redex);
  check(instance);
}

void SubtermClosureChecker::on_value(const Term& value) { check(value); }

namespace {

bool match_into(const Term& pattern, const Term& value, Substitution& gamma) {
  if (pattern.is_var()) {
    gamma.emplace(pattern.head(), value);
    return true;
  }
  if (pattern.kind() != value.kind()) return false;
  if (pattern.is_cons() && pattern.head() != value.head()) return false;
  if (pattern.is_app()) return false;
  const auto& ps = pattern.args();
  const auto& vs = value.args();
  if (ps.size() != vs.size()) return false;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (!match_into(ps[i], vs[i], gamma)) return false;
  }
  return true;
}

/// Calls `fn` with every combination picking one element per set.
void for_each_tuple(const std::vector<std::vector<Term>>& sets,
                    const std::function<bool(const std::vector<Term>&)>& fn) {
  for (const auto& s : sets) {
    if (s.empty()) return;
  }
  std::vector<std::size_t> idx(sets.size(), 0);
  std::vector<Term> tuple;
  tuple.reserve(sets.size());
  while (true) {
    tuple.clear();
    for (std::size_t i = 0; i < sets.size(); ++i) tuple.push_back(sets[i][idx[i]]);
    if (!fn(tuple)) return;
    std::size_t k = sets.size();
    while (k > 0) {
      --k;
      if (++idx[k] < sets[k].size()) break;
      idx[k] = 0;
      if (k == 0) return;
    }
    if (sets.empty()) return;
  }
}

void sort_unique(std::vector<Term>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

struct MemoKey {
  Term term;
  std::size_t depth;
  friend bool operator==(const MemoKey& a, const MemoKey& b) {
    return a.depth == b.depth && a.term == b.term;
  }
};

struct MemoKeyHash {
  std::size_t operator()(const MemoKey& k) const {
    return detail::hash_combine(k.term.hash(), k.depth);
  }
};

class AllResultsSearch {
 public:
  // Nested rule applications beyond this are treated like an exhausted depth.
  static constexpr std::size_t kMaxNesting = 4'000;

  AllResultsSearch(const Program& p, const Budget& budget,
                   EvalObserver* observer)
      : p_(p), budget_(budget), observer_(observer) {}

  EvalResult run(const Term& s) {
    EvalResult out;
    for (std::size_t depth = 1; depth <= budget_.max_depth; ++depth) {
      memo_.clear();
      Outcome r = values(s, depth);
      out.results.insert(out.results.end(), r.values.begin(), r.values.end());
      out.depth_reached = depth;
      if (!r.truncated) {
        out.complete = true;
        break;
      }
      if (exhausted_) break;
    }
    sort_unique(out.results);
    out.steps_used = steps_;
    return out;
  }

 private:
  struct Outcome {
    std::vector<Term> values;
    bool truncated = false;
  };

  Outcome values(const Term& s, std::size_t depth) {
    if (auto it = exact_.find(s); it != exact_.end()) return {it->second, false};
    MemoKey key{s, depth};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Outcome out = compute(s, depth);
    sort_unique(out.values);
    if (observer_) {
      for (const auto& v : out.values) observer_->on_value(v);
    }
    if (!out.truncated) exact_.emplace(s, out.values);
    memo_.emplace(std::move(key), out);
    return out;
  }

  Outcome compute(const Term& s, std::size_t depth) {
    Outcome out;
    std::vector<std::vector<Term>> arg_values;
    arg_values.reserve(s.args().size());
    for (const auto& a : s.args()) {
      Outcome r = values(a, depth);
      out.truncated = out.truncated || r.truncated;
      arg_values.push_back(std::move(r.values));
    }
    switch (s.kind()) {
      case Term::Kind::Pair:
        for_each_tuple(arg_values, [&](const std::vector<Term>& vs) {
          out.values.push_back(Term::pair(vs[0], vs[1]));
          return true;
        });
        return out;
      case Term::Kind::Cons:
        for_each_tuple(arg_values, [&](const std::vector<Term>& vs) {
          out.values.push_back(Term::cons(s.head(), vs, s.type()));
          return true;
        });
        return out;
      case Term::Kind::App:
        break;
    }
    // Ground terms never have variable heads.
    const std::string& f = s.head();
    std::size_t arity = p_.arity(f);
    if (s.args().size() < arity) {
      for_each_tuple(arg_values, [&](const std::vector<Term>& vs) {
        out.values.push_back(Term::app(HeadKind::Defined, f, vs, s.type()));
        return true;
      });
      return out;
    }
    for_each_tuple(arg_values, [&](const std::vector<Term>& vs) {
      Term redex = Term::app(HeadKind::Defined, f, vs, s.type());
      std::vector<Term> rest(vs.begin() + static_cast<std::ptrdiff_t>(arity),
                             vs.end());
      for (std::size_t ri : p_.rules_for(f)) {
        const Rule& rule = p_.rules()[ri];
        Substitution gamma;
        bool ok = true;
        for (std::size_t i = 0; i < arity && ok; ++i) {
          ok = match_into(rule.lhs.args()[i], vs[i], gamma);
        }
        if (!ok) continue;
        if (depth == 0) {
          out.truncated = true;
          continue;
        }
        if (steps_ >= budget_.max_branchings) {
          exhausted_ = true;
          out.truncated = true;
          return false;
        }
        if (nesting_ >= kMaxNesting) {
          out.truncated = true;
          continue;
        }
        ++steps_;
        Term instance = apply_args(substitute(rule.rhs, gamma), rest);
        if (observer_) observer_->on_step(depth, redex, ri, instance);
        ++nesting_;
        Outcome r = values(instance, depth - 1);
        --nesting_;
        out.truncated = out.truncated || r.truncated;
        out.values.insert(out.values.end(), r.values.begin(), r.values.end());
      }
      return true;
    });
    return out;
  }

  const Program& p_;
  Budget budget_;
  EvalObserver* observer_;
  std::unordered_map<Term, std::vector<Term>, TermHash> exact_;
  std::unordered_map<MemoKey, Outcome, MemoKeyHash> memo_;
  std::size_t steps_ = 0;
  std::size_t nesting_ = 0;
  bool exhausted_ = false;
};

struct Failure {
  EvalFailure kind;
};

class DeterministicEval {
 public:
  static constexpr std::size_t kMaxNesting = 10'000;

  DeterministicEval(const Program& p, std::size_t max_steps)
      : p_(p), max_steps_(max_steps) {}

  Term eval(const Term& start) {
    if (nesting_ >= kMaxNesting) throw Failure{EvalFailure::BudgetExhausted};
    ++nesting_;
    Term s = start;
    for (;;) {
      std::vector<Term> args;
      args.reserve(s.args().size());
      for (const auto& a : s.args()) args.push_back(eval(a));
      switch (s.kind()) {
        case Term::Kind::Pair:
          --nesting_;
          return Term::pair(args[0], args[1]);
        case Term::Kind::Cons:
          --nesting_;
          return Term::cons(s.head(), std::move(args), s.type());
        case Term::Kind::App:
          break;
      }
      const std::string& f = s.head();
      std::size_t arity = p_.arity(f);
      if (args.size() < arity) {
        --nesting_;
        return Term::app(HeadKind::Defined, f, std::move(args), s.type());
      }
      std::optional<Term> next;
      for (std::size_t ri : p_.rules_for(f)) {
        const Rule& rule = p_.rules()[ri];
        Substitution gamma;
        bool ok = true;
        for (std::size_t i = 0; i < arity && ok; ++i) {
          ok = match_into(rule.lhs.args()[i], args[i], gamma);
        }
        if (!ok) continue;
        if (steps_ >= max_steps_) throw Failure{EvalFailure::BudgetExhausted};
        ++steps_;
        std::vector<Term> rest(args.begin() + static_cast<std::ptrdiff_t>(arity),
                               args.end());
        next = apply_args(substitute(rule.rhs, gamma), rest);
        break;
      }
      if (!next) throw Failure{EvalFailure::Stuck};
      s = *next;
    }
  }

  std::size_t steps() const { return steps_; }

 private:
  const Program& p_;
  std::size_t max_steps_;
  std::size_t steps_ = 0;
  std::size_t nesting_ = 0;
};

}  // namespace

std::optional<Substitution> match_pattern(const Term& pattern,
                                          const Term& value) {
  Substitution gamma;
  if (!match_into(pattern, value, gamma)) return std::nullopt;
  return gamma;
}

EvalResult eval_all(const Program& p, const Term& s, const Budget& budget,
                    EvalObserver* observer) {
  if (!s.is_ground()) throw PreconditionError("eval_all needs a ground term");
  if (budget.max_depth == 0 || budget.max_branchings == 0) {
    throw PreconditionError("budget must be positive");
  }
  AllResultsSearch search(p, budget, observer);
  return search.run(s);
}

DeterministicResult eval_deterministic(const Program& p, const Term& s,
                                       std::size_t max_steps) {
  if (!s.is_ground()) {
    throw PreconditionError("eval_deterministic needs a ground term");
  }
  DeterministicEval ev(p, max_steps);
  DeterministicResult out;
  try {
    out.value = ev.eval(s);
  } catch (const Failure& f) {
    out.failure = f.kind;
  }
  out.steps_used = ev.steps();
  return out;
}

}  // namespace cf
