#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cf/error.hpp"
#include "cf/program.hpp"
#include "cf/term.hpp"

namespace cf {

/// Untyped syntax tree produced by the parser. Infix `::`, bitstring
/// literals and n-tuples are already desugared.
struct RawTerm {
  enum class Kind { Name, Apply, Pair };

  Kind kind = Kind::Name;
  std::string name;
  std::vector<RawTerm> children;  // Apply: function then arguments; Pair: 2
  SourcePos pos;

  static RawTerm make_name(std::string name, SourcePos pos = {});
  static RawTerm make_apply(RawTerm fn, std::vector<RawTerm> args,
                            SourcePos pos = {});
  static RawTerm make_pair(RawTerm left, RawTerm right, SourcePos pos = {});
};

/// Thrown by the checker; carries the offending position.
class PositionedTypeError : public TypeError {
 public:
  PositionedTypeError(SourcePos pos, const std::string& message)
      : TypeError(message), pos_(pos) {}
  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

using VarTypes = std::map<std::string, Type>;

/// Derives the unique type of `raw`. Names resolve to constructors, then
/// defined symbols, then variables in `vars`. Throws PositionedTypeError.
Term type_check(const SymbolTable& table, const VarTypes& vars,
                const RawTerm& raw);

/// Checks `raw` against an expected type.
Term type_check(const SymbolTable& table, const VarTypes& vars,
                const RawTerm& raw, const Type& expected);

/// Assigns types to the variables of a pattern from its position: the
/// pattern is expected to have type `expected`. A variable seen twice keeps
/// its first type (left-linearity is reported separately by check_rule).
void infer_pattern_variables(const SymbolTable& table, const RawTerm& pattern,
                             const Type& expected, VarTypes& vars);

}  // namespace cf
