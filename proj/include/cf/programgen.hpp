#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cf/program.hpp"

namespace cf {

using BigInt = boost::multiprecision::cpp_int;

/// exp_2^0(m) = m, exp_2^{k+1}(m) = 2^{exp_2^k(m)}. Throws ResourceError
/// when the result would exceed `max_bits` bits.
BigInt exp2_tower(unsigned k, const BigInt& m, std::size_t max_bits = 1 << 20);

/// The largest number P(n) a counting family represents on inputs of length n.
struct IntOracle {
  enum class Family { Lin, Poly, Bin, Nondet };
  Family family = Family::Lin;
  unsigned k = 0;
  unsigned a = 1;
  unsigned b = 1;

  BigInt bound(unsigned n) const;
};

/// A declaration `name : type` in source syntax.
struct Declaration {
  std::string name;
  std::string type;
};

/// Cons-free rules defining `seed`, `pred` and `zero` over the boolean-list
/// prelude. Numbers 0..P(n) are represented relative to the input list `cs`.
struct CountingModule {
  std::string family;
  std::vector<Declaration> declarations;
  std::vector<std::string> rules;
  /// Type representing one number, in source syntax.
  std::string rep_type;
  unsigned level = 0;
  IntOracle oracle;

  /// Complete program: prelude, the module, then any extra symbols.
  std::string source(const std::vector<Declaration>& extra_declarations = {},
                     const std::vector<std::string>& extra_rules = {}) const;
  Program program() const;
};

enum class SeedVariant {
  /// `seed cs -> (cs, cs)`, representing (n+1)^2 - 1.
  Corrected,
  /// `seed cs -> ([], [])` as originally printed, representing 0.
  Paper,
};

CountingModule gen_lin_count(SeedVariant seed = SeedVariant::Corrected);
/// Counts a * (n+1)^b - 1 down to 0 at data order 0. Requires a, b >= 1.
CountingModule gen_poly_count(unsigned a, unsigned b);
/// Counts exp_2^k(a * n^b) - 1 down to 0 with bit-vector closures of order k.
/// Requires k, a, b >= 1.
CountingModule gen_bin_count(unsigned k, unsigned a, unsigned b);
/// Counts P_k(n) (P_0(n) = n, P_{k+1}(n) = 2^{P_k(n)} - 1) down to 0 with
/// non-deterministic closures of type bool^k => list.
CountingModule gen_nondet_count(unsigned k);

/// Adds `probe_i : list => bool`, `probe_i cs -> zero cs (pred^i (seed cs))`
/// for each i in `steps`.
std::string counting_probe_source(const CountingModule& m,
                                  const std::vector<unsigned>& steps);
std::string probe_name(unsigned i);

enum class TmSymbol : std::uint8_t { Zero, One, Blank };
enum class TmMove : std::uint8_t { Left, Right };

struct TmTransition {
  std::string next;
  TmSymbol write;
  TmMove move;
};

/// Deterministic single-tape machine over {0, 1, blank}. The tape is
/// semi-infinite to the right; the head starts on the blank cell before the
/// input. `Start`, `Accept` and `Reject` are mandatory states.
struct TuringMachine {
  std::vector<std::string> states;
  std::map<std::pair<std::string, TmSymbol>, TmTransition> transitions;
  /// Counting family used for the time bound: `lin`, `poly a b`,
  /// `bin k a b` or `nondet k`.
  std::string bound = "lin";

  bool is_final(const std::string& q) const {
    return q == "Accept" || q == "Reject";
  }
  /// Throws Error unless the machine is well formed and total on non-final
  /// states.
  void validate() const;
};

/// Parses the `.tm` format:
///   states: Start Even Odd Accept Reject
///   alphabet: 0 1 _
///   bound: lin
///   transitions:
///     Start _ -> Even _ R
TuringMachine parse_tm(std::string_view text);
std::string print_tm(const TuringMachine& tm);

struct TmRun {
  enum class Outcome { Accept, Reject, Timeout };
  Outcome outcome;
  std::uint64_t steps;
};

/// Direct simulation. Moving left on cell 0 stays on cell 0.
TmRun simulate_tm(const TuringMachine& tm, std::string_view input,
                  std::uint64_t max_steps = 1'000'000);

/// Program whose `start : list => bool` runs `tm` for P(n) steps (P from the
/// counting module) and returns whether the final state is `Accept`.
std::string compile_tm_source(const TuringMachine& tm, const CountingModule& cm);
Program compile_tm(const TuringMachine& tm, const CountingModule& cm);

/// Counting module named by a bound string such as `lin` or `bin 1 1 1`.
CountingModule counting_module_for(std::string_view bound,
                                   SeedVariant seed = SeedVariant::Corrected);

}  // namespace cf
