#include "cf/error.hpp"

#include <sstream>

namespace cf {

std::string Diagnostic::to_string() const {
  std::ostringstream out;
  out << pos.line << ":" << pos.column << ": " << message;
  return out.str();
}

namespace {

std::string join_diagnostics(const std::vector<Diagnostic>& diags) {
  std::string out;
  for (const auto& d : diags) {
    if (!out.empty()) out += "\n";
    out += d.to_string();
  }
  return out;
}

}  // namespace

ParseError::ParseError(std::vector<Diagnostic> diags)
    : Error(join_diagnostics(diags)), diags_(std::move(diags)) {}

}  // namespace cf
