#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cf/abstract.hpp"
#include "cf/program.hpp"

namespace cf {

enum class SaturationMode {
  /// Eager when the full statement table is small, demand-driven otherwise.
  Auto,
  /// Every statement of every shape is noted down before the fixpoint loop.
  Eager,
  /// Only statements reachable from the goal are materialized.
  DemandDriven,
};

struct SaturationOptions {
  SaturationMode mode = SaturationMode::Auto;
  /// Largest abstract domain that may be materialized.
  std::uint64_t domain_cap = std::uint64_t{1} << 16;
  /// Largest statement table (eager) or number of call subjects
  /// (demand-driven).
  std::uint64_t statement_cap = 50'000'000;
  /// Auto mode uses the eager table only up to this many statements.
  std::uint64_t eager_threshold = 10'000;
  /// Collect a textual dump of every confirmed statement.
  bool dump_statements = false;
  /// Demand-driven: nesting depth up to which newly demanded calls are
  /// evaluated on the spot instead of being queued.
  std::size_t eager_nesting = 256;
};

struct SaturationStats {
  SaturationMode mode = SaturationMode::Eager;
  std::size_t base_size = 0;
  std::map<std::string, std::uint64_t> domain_sizes;
  std::uint64_t statements_generated = 0;
  std::uint64_t statements_confirmed = 0;
  /// Eager: fixpoint passes over the table. Demand-driven: call evaluations.
  std::uint64_t passes = 0;
  /// Statement subjects materialized per defined symbol.
  std::map<std::string, std::uint64_t> subjects_per_symbol;
};

struct SaturationResult {
  /// Every value `w` of order-0 type with `f v1..vn =>* w`, sorted.
  std::vector<Term> results;
  SaturationStats stats;
  /// One confirmed statement per line, when requested.
  std::vector<std::string> statements;
};

/// Throws PreconditionError unless `p` is cons-free, `f` is defined, every
/// argument is built from constructors and pairs, and the call has a type of
/// order 0.
void check_saturation_preconditions(const Program& p, const std::string& f,
                                    const std::vector<Term>& args);

/// Finds all results of `f args` by saturating the finite statement table.
/// Always terminates; raises ResourceError when a cap is exceeded.
SaturationResult saturate(const Program& p, const std::string& f,
                          const std::vector<Term>& args,
                          const SaturationOptions& options = {});

/// The literal algorithm: requires every defined symbol
/// `s1 => ... => sm => iota` to have o(iota) = 0 and arity m or m - 1.
SaturationResult saturate_eager(const Program& p, const std::string& f,
                                const std::vector<Term>& args,
                                const SaturationOptions& options = {});

SaturationResult saturate_demand_driven(const Program& p, const std::string& f,
                                        const std::vector<Term>& args,
                                        const SaturationOptions& options = {});

/// One statement of the eager table, for inspection.
struct StatementView {
  /// Subject: rhs subterm (with `rule`) or defined-symbol call (`symbol`).
  const Term* subject = nullptr;
  std::size_t rule = 0;
  std::string symbol;
  /// Bindings of the subject's variables, or the call's arguments.
  std::vector<std::pair<std::string, ValueId>> bindings;
  ValueId claim = 0;
  bool confirmed = false;
};

/// The eager statement table, exposed step by step.
class EagerSaturator {
 public:
  EagerSaturator(const Program& p, const std::string& f,
                 const std::vector<Term>& args,
                 const SaturationOptions& options = {});
  ~EagerSaturator();
  EagerSaturator(const EagerSaturator&) = delete;
  EagerSaturator& operator=(const EagerSaturator&) = delete;

  /// One pass over all unconfirmed statements. Returns whether any statement
  /// became confirmed.
  bool step();
  /// Runs passes until nothing changes.
  void run();

  std::vector<Term> results() const;
  SaturationStats stats() const;
  const ValueStore& store() const;
  void for_each_statement(
      const std::function<void(const StatementView&)>& fn) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Batched queries over one program; each query is saturated independently.
/// The OpenMP version distributes queries over threads.
std::vector<SaturationResult> saturate_batch(
    const Program& p, const std::string& f,
    const std::vector<std::vector<Term>>& queries,
    const SaturationOptions& options = {});

/// Serial reference for saturate_batch.
std::vector<SaturationResult> saturate_batch_serial(
    const Program& p, const std::string& f,
    const std::vector<std::vector<Term>>& queries,
    const SaturationOptions& options = {});

}  // namespace cf
