#include "cf/typing.hpp"

namespace cf {

RawTerm RawTerm::make_name(std::string name, SourcePos pos) {
  RawTerm r;
  r.kind = Kind::Name;
  r.name = std::move(name);
  r.pos = pos;
  return r;
}

RawTerm RawTerm::make_apply(RawTerm fn, std::vector<RawTerm> args,
                            SourcePos pos) {
  RawTerm r;
  r.kind = Kind::Apply;
  r.pos = pos;
  r.children.reserve(args.size() + 1);
  r.children.push_back(std::move(fn));
  for (auto& a : args) r.children.push_back(std::move(a));
  return r;
}

RawTerm RawTerm::make_pair(RawTerm left, RawTerm right, SourcePos pos) {
  RawTerm r;
  r.kind = Kind::Pair;
  r.pos = pos;
  r.children = {std::move(left), std::move(right)};
  return r;
}

namespace {

[[noreturn]] void fail(const RawTerm& at, const std::string& message) {
  throw PositionedTypeError(at.pos, message);
}

// Flattens nested applications `(f a) b` into head `f` and args [a, b].
const RawTerm& flatten(const RawTerm& raw, std::vector<const RawTerm*>& args) {
  if (raw.kind != RawTerm::Kind::Apply) return raw;
  const RawTerm& head = flatten(raw.children.front(), args);
  for (std::size_t i = 1; i < raw.children.size(); ++i) {
    args.push_back(&raw.children[i]);
  }
  return head;
}

}  // namespace

Term type_check(const SymbolTable& table, const VarTypes& vars,
                const RawTerm& raw) {
  if (raw.kind == RawTerm::Kind::Pair) {
    return Term::pair(type_check(table, vars, raw.children[0]),
                      type_check(table, vars, raw.children[1]));
  }
  std::vector<const RawTerm*> raw_args;
  const RawTerm& head = flatten(raw, raw_args);
  if (head.kind != RawTerm::Kind::Name) {
    fail(head, "only a symbol or a variable can be applied");
  }
  const std::string& name = head.name;

  Type head_type = Type::sort("?");
  enum { kCons, kDefined, kVar } what;
  if (table.is_constructor(name)) {
    head_type = table.constructor_type(name);
    what = kCons;
  } else if (table.is_defined(name)) {
    head_type = table.defined_type(name);
    what = kDefined;
  } else if (auto it = vars.find(name); it != vars.end()) {
    head_type = it->second;
    what = kVar;
  } else {
    fail(head, "unknown identifier '" + name + "'");
  }

  auto params = head_type.argument_types();
  if (raw_args.size() > params.size()) {
    fail(head, "'" + name + "' of type " + head_type.to_string() +
                   " is applied to " + std::to_string(raw_args.size()) +
                   " arguments");
  }
  if (what == kCons && raw_args.size() != params.size()) {
    fail(head, "constructor '" + name + "' must be fully applied (expects " +
                   std::to_string(params.size()) + " arguments, got " +
                   std::to_string(raw_args.size()) + ")");
  }
  std::vector<Term> args;
  args.reserve(raw_args.size());
  for (std::size_t i = 0; i < raw_args.size(); ++i) {
    args.push_back(type_check(table, vars, *raw_args[i], params[i]));
  }
  Type result = head_type.drop_arguments(raw_args.size());
  if (what == kCons) return Term::cons(name, std::move(args), result);
  return Term::app(what == kVar ? HeadKind::Variable : HeadKind::Defined, name,
                   std::move(args), result);
}

Term type_check(const SymbolTable& table, const VarTypes& vars,
                const RawTerm& raw, const Type& expected) {
  Term t = type_check(table, vars, raw);
  if (!(t.type() == expected)) {
    fail(raw, "expected type " + expected.to_string() + " but found " +
                  t.type().to_string());
  }
  return t;
}

void infer_pattern_variables(const SymbolTable& table, const RawTerm& pattern,
                             const Type& expected, VarTypes& vars) {
  if (pattern.kind == RawTerm::Kind::Pair) {
    if (!expected.is_product()) {
      fail(pattern, "pair pattern where " + expected.to_string() +
                        " is expected");
    }
    infer_pattern_variables(table, pattern.children[0], expected.left(), vars);
    infer_pattern_variables(table, pattern.children[1], expected.right(), vars);
    return;
  }
  std::vector<const RawTerm*> raw_args;
  const RawTerm& head = flatten(pattern, raw_args);
  if (head.kind != RawTerm::Kind::Name) {
    fail(head, "malformed pattern");
  }
  if (table.is_constructor(head.name)) {
    auto params = table.constructor_type(head.name).argument_types();
    if (params.size() != raw_args.size()) {
      fail(head, "constructor '" + head.name + "' must be fully applied");
    }
    for (std::size_t i = 0; i < params.size(); ++i) {
      infer_pattern_variables(table, *raw_args[i], params[i], vars);
    }
    return;
  }
  if (table.is_defined(head.name)) {
    fail(head, "(b) defined symbol '" + head.name + "' in a pattern");
  }
  if (!raw_args.empty()) {
    fail(head, "(b) applied variable '" + head.name + "' in a pattern");
  }
  vars.emplace(head.name, expected);
}

}  // namespace cf
