#pragma once

#include <string>
#include <vector>

#include "cf/programgen.hpp"

namespace cf::detail {

struct SourceParts {
  std::vector<std::string> sorts;
  std::vector<Declaration> constructors;
  std::vector<Declaration> defined;
  std::vector<std::string> rules;
};

SourceParts bool_list_prelude();
std::string assemble(const SourceParts& parts);

/// `(x1, ..., xn)`, or `x1` alone.
std::string tuple(const std::vector<std::string>& items);
/// Type `(t1 * ... * tn)`, or `t1` alone.
std::string product_type(const std::vector<std::string>& items);
/// Parenthesizes a type printed in argument position of `=>`.
std::string arg_type(const std::string& t);

}  // namespace cf::detail
