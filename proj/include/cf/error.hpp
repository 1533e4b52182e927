#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cf {

/// Position in a source text, 1-based.
struct SourcePos {
  int line = 0;
  int column = 0;
};

struct Diagnostic {
  SourcePos pos;
  std::string message;

  std::string to_string() const;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Type errors raised by the term checker.
class TypeError : public Error {
 public:
  using Error::Error;
};

/// Parse, lexical or well-formedness failures. Carries every diagnostic
/// collected before giving up.
class ParseError : public Error {
 public:
  explicit ParseError(std::vector<Diagnostic> diags);

  const std::vector<Diagnostic>& diagnostics() const { return diags_; }

 private:
  std::vector<Diagnostic> diags_;
};

/// A configured cap (domain size, statement count, step bound) was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside of its documented preconditions.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace cf
