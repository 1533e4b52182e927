#pragma once

#include <string>
#include <string_view>

#include "cf/program.hpp"
#include "cf/typing.hpp"

namespace cf {

/// Parses a `.cf` program. Throws ParseError with every collected
/// diagnostic (lexical, syntax, typing, rule formation).
Program parse_program(std::string_view text);

Type parse_type(std::string_view text);

/// Parses a raw term (with infix `::`, tuples and bitstring literals).
RawTerm parse_raw_term(std::string_view text);

/// Parses and type checks a term over the program's symbols and the given
/// variables.
Term parse_term(const SymbolTable& table, std::string_view text,
                const VarTypes& vars = {});

/// Parses a ground input built from constructors and pairs only, e.g.
/// `"101"`, `[]` or `(true, [])`, checked against `expected`.
Term parse_data_term(const SymbolTable& table, std::string_view text,
                     const Type& expected);

/// Parseable rendering; application is left-associative, `::` infix.
std::string print_term(const Term& t);
std::string print_program(const Program& p);

/// Expands a bitstring into `b1 :: ... :: bn :: []` with 1 = true, 0 = false.
Term bits_to_list(const SymbolTable& table, std::string_view bits);

}  // namespace cf
