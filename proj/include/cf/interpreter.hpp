#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_set>
#include <vector>

#include "cf/program.hpp"

namespace cf {

/// Bounds for the fair search. Both must be positive.
struct Budget {
  /// Largest number of nested rule applications explored by the deepening
  /// loop.
  std::size_t max_depth = 64;
  /// Total rule applications across all deepening rounds.
  std::size_t max_branchings = 2'000'000;
};

struct EvalResult {
  /// Values derivable from the term, sorted and distinct.
  std::vector<Term> results;
  /// The search space was exhausted: `results` is exactly the set of
  /// derivable values.
  bool complete = false;
  std::size_t steps_used = 0;
  std::size_t depth_reached = 0;
};

/// Hooks into the search. Default implementations do nothing.
class EvalObserver {
 public:
  virtual ~EvalObserver() = default;
  /// A rule was applied: `redex` (arguments already values) rewrote to
  /// `instance` using rule `rule` at remaining depth `depth`.
  virtual void on_step(std::size_t /*depth*/, const Term& /*redex*/,
                       std::size_t /*rule*/, const Term& /*instance*/) {}
  /// `value` was derived for some subterm of the query.
  virtual void on_value(const Term& /*value*/) {}
};

/// Writes one derivation step per line.
class TraceWriter : public EvalObserver {
 public:
  explicit TraceWriter(std::ostream& out) : out_(out) {}
  void on_step(std::size_t depth, const Term& redex, std::size_t rule,
               const Term& instance) override;

 private:
  std::ostream& out_;
  std::size_t count_ = 0;
};

/// Checks that every data term met during evaluation is a subterm of an
/// input or of a data subterm of some right-hand side.
class SubtermClosureChecker : public EvalObserver {
 public:
  SubtermClosureChecker(const Program& p, const std::vector<Term>& inputs);
  void on_step(std::size_t depth, const Term& redex, std::size_t rule,
               const Term& instance) override;
  void on_value(const Term& value) override;

  const std::vector<Term>& violations() const { return violations_; }
  std::size_t checked() const { return checked_; }

 private:
  void check(const Term& t);

  std::unordered_set<Term, TermHash> allowed_;
  std::vector<Term> violations_;
  std::size_t checked_ = 0;
};

/// The unique substitution with `pattern` instantiated to `value`, if any.
std::optional<Substitution> match_pattern(const Term& pattern,
                                          const Term& value);

/// All values `v` with `s =>* v` under non-deterministic call-by-value
/// reduction, explored by iterative deepening on rule-application depth.
EvalResult eval_all(const Program& p, const Term& s, const Budget& budget = {},
                    EvalObserver* observer = nullptr);

enum class EvalFailure { Stuck, BudgetExhausted };

struct DeterministicResult {
  std::optional<Term> value;
  EvalFailure failure = EvalFailure::Stuck;
  std::size_t steps_used = 0;
};

/// Innermost evaluation choosing the first matching rule in program order.
/// Intended for syntactically deterministic programs. `max_steps` bounds the
/// number of rule applications; argument nesting deeper than 10'000 calls
/// is reported as BudgetExhausted as well.
DeterministicResult eval_deterministic(const Program& p, const Term& s,
                                       std::size_t max_steps = 10'000'000);

}  // namespace cf
