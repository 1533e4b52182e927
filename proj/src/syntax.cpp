#include "cf/syntax.hpp"

#include <cctype>
#include <optional>
#include <set>

namespace cf {

namespace {

enum class Tok {
  Ident,
  Nil,     // []
  Cons,    // ::
  Colon,   // :
  Arrow,   // ->
  Imp,     // =>
  Star,    // *
  LParen,
  RParen,
  Comma,
  Bits,    // "0101"
  Equals,  // = (never valid; kept for diagnostics)
  Newline,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Nil: return "'[]'";
    case Tok::Cons: return "'::'";
    case Tok::Colon: return "':'";
    case Tok::Arrow: return "'->'";
    case Tok::Imp: return "'=>'";
    case Tok::Star: return "'*'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Bits: return "bitstring literal";
    case Tok::Equals: return "'='";
    case Tok::Newline: return "end of line";
    case Tok::End: return "end of input";
  }
  return "token";
}

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::vector<Diagnostic> errors;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto at = [&](std::size_t k) { return k < src.size() ? src[k] : '\0'; };
  auto push = [&](Tok kind, std::size_t len) {
    out.push_back({kind, std::string(src.substr(i, len)), {line, col}});
    i += len;
    col += static_cast<int>(len);
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '\n') {
      push(Tok::Newline, 1);
      ++line;
      col = 1;
    } else if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      ++col;
    } else if (c == '-' && at(i + 1) == '-') {
      while (i < src.size() && src[i] != '\n') {
        ++i;
        ++col;
      }
    } else if (c == '-' && at(i + 1) == '>') {
      push(Tok::Arrow, 2);
    } else if (c == '=' && at(i + 1) == '>') {
      push(Tok::Imp, 2);
    } else if (c == '=') {
      push(Tok::Equals, 1);
    } else if (c == ':' && at(i + 1) == ':') {
      push(Tok::Cons, 2);
    } else if (c == ':') {
      push(Tok::Colon, 1);
    } else if (c == '[' && at(i + 1) == ']') {
      push(Tok::Nil, 2);
    } else if (c == '*') {
      push(Tok::Star, 1);
    } else if (c == '(') {
      push(Tok::LParen, 1);
    } else if (c == ')') {
      push(Tok::RParen, 1);
    } else if (c == ',') {
      push(Tok::Comma, 1);
    } else if (c == '"') {
      std::size_t j = i + 1;
      bool ok = true;
      while (j < src.size() && src[j] != '"' && src[j] != '\n') {
        if (src[j] != '0' && src[j] != '1') ok = false;
        ++j;
      }
      if (j >= src.size() || src[j] != '"') {
        errors.push_back({{line, col}, "lexical error: unterminated bitstring"});
        i = j;
        col += static_cast<int>(j - i);
        continue;
      }
      if (!ok) {
        errors.push_back(
            {{line, col}, "lexical error: bitstrings may only contain 0 and 1"});
      }
      out.push_back({Tok::Bits, std::string(src.substr(i + 1, j - i - 1)),
                     {line, col}});
      col += static_cast<int>(j + 1 - i);
      i = j + 1;
    } else if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      push(Tok::Ident, j - i);
    } else {
      errors.push_back({{line, col},
                        std::string("lexical error: unexpected character '") +
                            c + "'"});
      ++i;
      ++col;
    }
  }
  out.push_back({Tok::End, "", {line, col}});
  if (!errors.empty()) throw ParseError(std::move(errors));
  return out;
}

class SyntaxError : public std::exception {
 public:
  SyntaxError(SourcePos pos, std::string message)
      : pos(pos), message(std::move(message)) {}
  const char* what() const noexcept override { return message.c_str(); }
  SourcePos pos;
  std::string message;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    next();
    return true;
  }
  const Token& expect(Tok kind) {
    if (peek().kind != kind) {
      throw SyntaxError(peek().pos, std::string("syntax error: expected ") +
                                        describe(kind) + " but found " +
                                        describe(peek().kind) +
                                        found_text(peek()));
    }
    return next();
  }
  static std::string found_text(const Token& t) {
    if (t.kind == Tok::Ident) return " '" + t.text + "'";
    return "";
  }
  void skip_newlines() {
    while (peek().kind == Tok::Newline) next();
  }
  void skip_line() {
    while (peek().kind != Tok::Newline && peek().kind != Tok::End) next();
  }
  bool at_line_end() const {
    return peek().kind == Tok::Newline || peek().kind == Tok::End;
  }

  // type := prod ['=>' type];  prod := atom ['*' prod]
  Type type() {
    Type left = product();
    if (accept(Tok::Imp)) return Type::arrow(left, type());
    return left;
  }
  Type product() {
    Type left = type_atom();
    if (accept(Tok::Star)) return Type::product(left, product());
    return left;
  }
  Type type_atom() {
    if (accept(Tok::LParen)) {
      Type t = type();
      expect(Tok::RParen);
      return t;
    }
    return Type::sort(expect(Tok::Ident).text);
  }

  // term := app ['::' term]
  RawTerm term() {
    SourcePos pos = peek().pos;
    RawTerm head = app();
    if (peek().kind == Tok::Cons) {
      SourcePos cons_pos = next().pos;
      RawTerm tail = term();
      return RawTerm::make_apply(RawTerm::make_name("::", cons_pos),
                                 {std::move(head), std::move(tail)}, pos);
    }
    return head;
  }
  bool starts_atom() const {
    switch (peek().kind) {
      case Tok::Ident:
        return peek().text != "where";
      case Tok::Nil:
      case Tok::Bits:
      case Tok::LParen:
        return true;
      default:
        return false;
    }
  }
  RawTerm app() {
    SourcePos pos = peek().pos;
    RawTerm head = atom();
    std::vector<RawTerm> args;
    while (starts_atom()) args.push_back(atom());
    if (args.empty()) return head;
    return RawTerm::make_apply(std::move(head), std::move(args), pos);
  }
  RawTerm atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident:
        next();
        return RawTerm::make_name(t.text, t.pos);
      case Tok::Nil:
        next();
        return RawTerm::make_name("[]", t.pos);
      case Tok::Bits: {
        next();
        RawTerm list = RawTerm::make_name("[]", t.pos);
        for (auto it = t.text.rbegin(); it != t.text.rend(); ++it) {
          RawTerm bit = RawTerm::make_name(*it == '1' ? "true" : "false", t.pos);
          list = RawTerm::make_apply(RawTerm::make_name("::", t.pos),
                                     {std::move(bit), std::move(list)}, t.pos);
        }
        return list;
      }
      case Tok::LParen: {
        SourcePos pos = next().pos;
        std::vector<RawTerm> items;
        items.push_back(term());
        while (accept(Tok::Comma)) items.push_back(term());
        expect(Tok::RParen);
        RawTerm out = std::move(items.back());
        for (std::size_t k = items.size() - 1; k-- > 0;) {
          out = RawTerm::make_pair(std::move(items[k]), std::move(out), pos);
        }
        return out;
      }
      default:
        throw SyntaxError(t.pos, std::string("syntax error: expected a term "
                                             "but found ") +
                                     describe(t.kind) + found_text(t));
    }
  }

  std::size_t position() const { return pos_; }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

enum class Section { None, Sorts, Constructors, Defined, Rules };

std::optional<Section> section_header(const Parser& p) {
  if (p.peek().kind != Tok::Ident || p.peek(1).kind != Tok::Colon) {
    return std::nullopt;
  }
  const std::string& w = p.peek().text;
  if (w == "sorts") return Section::Sorts;
  if (w == "rules" &&
      (p.peek(2).kind == Tok::Newline || p.peek(2).kind == Tok::End)) {
    return Section::Rules;
  }
  if (w == "constructors" &&
      (p.peek(2).kind == Tok::Newline || p.peek(2).kind == Tok::End)) {
    return Section::Constructors;
  }
  if (w == "defined" &&
      (p.peek(2).kind == Tok::Newline || p.peek(2).kind == Tok::End)) {
    return Section::Defined;
  }
  return std::nullopt;
}

struct PendingRule {
  RawTerm lhs;
  RawTerm rhs;
  std::vector<std::pair<std::string, Type>> where;
  std::vector<SourcePos> where_pos;
  SourcePos pos;
};

Rule elaborate_rule(const SymbolTable& table, const PendingRule& pr) {
  std::vector<const RawTerm*> raw_args;
  const RawTerm* head = &pr.lhs;
  std::vector<const RawTerm*> stack;
  while (head->kind == RawTerm::Kind::Apply) {
    for (std::size_t i = head->children.size(); i-- > 1;) {
      stack.push_back(&head->children[i]);
    }
    head = &head->children.front();
  }
  raw_args.assign(stack.rbegin(), stack.rend());
  if (head->kind != RawTerm::Kind::Name || !table.is_defined(head->name)) {
    throw PositionedTypeError(head->pos,
                              "(a) left-hand side must be headed by a defined "
                              "symbol");
  }
  auto params = table.defined_type(head->name).argument_types();
  if (raw_args.size() > params.size()) {
    throw PositionedTypeError(head->pos, "'" + head->name +
                                             "' is applied to too many "
                                             "arguments");
  }
  VarTypes vars;
  for (std::size_t i = 0; i < raw_args.size(); ++i) {
    infer_pattern_variables(table, *raw_args[i], params[i], vars);
  }
  for (std::size_t i = 0; i < pr.where.size(); ++i) {
    const auto& [name, type] = pr.where[i];
    table.check_sorts(type);
    auto [it, inserted] = vars.emplace(name, type);
    if (!inserted && !(it->second == type)) {
      throw PositionedTypeError(pr.where_pos[i],
                                "declared type of '" + name +
                                    "' disagrees with its pattern position (" +
                                    it->second.to_string() + ")");
    }
  }
  Term lhs = type_check(table, vars, pr.lhs);
  // Variables of the right-hand side not bound by the left-hand side have no
  // type unless declared; report condition (d) for them directly.
  Term rhs = [&] {
    try {
      return type_check(table, vars, pr.rhs);
    } catch (const PositionedTypeError& e) {
      std::string msg = e.what();
      if (msg.rfind("unknown identifier", 0) == 0) {
        throw PositionedTypeError(e.pos(), "(d) " + msg +
                                               " (not bound by the left-hand "
                                               "side)");
      }
      throw;
    }
  }();
  auto violations = check_rule(table, lhs, rhs);
  if (!violations.empty()) {
    const auto& v = violations.front();
    throw PositionedTypeError(pr.pos, std::string("(") + v.condition + ") " +
                                          v.message);
  }
  VarTypes used;
  for (const auto& v : variables(lhs)) used.emplace(v, vars.at(v));
  return Rule{lhs, rhs, used};
}

}  // namespace

Program parse_program(std::string_view text) {
  Parser p(lex(text));
  std::vector<Diagnostic> diags;
  SymbolTable table;
  std::vector<PendingRule> pending;
  Section section = Section::None;

  while (true) {
    p.skip_newlines();
    if (p.peek().kind == Tok::End) break;
    SourcePos line_pos = p.peek().pos;
    try {
      if (auto header = section_header(p)) {
        p.next();
        p.next();
        section = *header;
        if (section != Section::Sorts) {
          if (!p.at_line_end()) p.expect(Tok::Newline);
          continue;
        }
      }
      switch (section) {
        case Section::None:
          throw SyntaxError(line_pos,
                            "syntax error: expected a section header "
                            "('sorts:', 'constructors:', 'defined:' or "
                            "'rules:')");
        case Section::Sorts:
          while (!p.at_line_end()) {
            const Token& t = p.expect(Tok::Ident);
            try {
              table.add_sort(t.text);
            } catch (const Error& e) {
              throw SyntaxError(t.pos, e.what());
            }
            p.accept(Tok::Comma);
          }
          break;
        case Section::Constructors:
        case Section::Defined: {
          const Token& name_tok = p.peek();
          std::string name;
          if (name_tok.kind == Tok::Ident || name_tok.kind == Tok::Nil ||
              name_tok.kind == Tok::Cons) {
            name = name_tok.kind == Tok::Nil    ? "[]"
                   : name_tok.kind == Tok::Cons ? "::"
                                                : name_tok.text;
            p.next();
          } else {
            p.expect(Tok::Ident);
          }
          p.expect(Tok::Colon);
          Type type = p.type();
          if (!p.at_line_end()) p.expect(Tok::Newline);
          try {
            if (section == Section::Constructors) {
              table.add_constructor(name, type);
            } else {
              table.add_defined(name, type);
            }
          } catch (const Error& e) {
            throw SyntaxError(name_tok.pos, e.what());
          }
          break;
        }
        case Section::Rules: {
          PendingRule pr;
          pr.pos = line_pos;
          pr.lhs = p.term();
          p.expect(Tok::Arrow);
          pr.rhs = p.term();
          if (p.peek().kind == Tok::Ident && p.peek().text == "where") {
            p.next();
            do {
              const Token& v = p.expect(Tok::Ident);
              p.expect(Tok::Colon);
              pr.where.emplace_back(v.text, p.type());
              pr.where_pos.push_back(v.pos);
            } while (p.accept(Tok::Comma));
          }
          if (!p.at_line_end()) p.expect(Tok::Newline);
          pending.push_back(std::move(pr));
          break;
        }
      }
    } catch (const SyntaxError& e) {
      diags.push_back({e.pos, e.message});
      p.skip_line();
    }
  }

  std::vector<Rule> rules;
  for (const auto& pr : pending) {
    try {
      rules.push_back(elaborate_rule(table, pr));
    } catch (const PositionedTypeError& e) {
      diags.push_back({e.pos().line ? e.pos() : pr.pos, e.what()});
    } catch (const TypeError& e) {
      diags.push_back({pr.pos, e.what()});
    }
  }
  if (!diags.empty()) throw ParseError(std::move(diags));
  try {
    return Program(std::move(table), std::move(rules));
  } catch (const Error& e) {
    throw ParseError({{{1, 1}, e.what()}});
  }
}

Type parse_type(std::string_view text) {
  Parser p(lex(text));
  try {
    Type t = p.type();
    p.skip_newlines();
    p.expect(Tok::End);
    return t;
  } catch (const SyntaxError& e) {
    throw ParseError({{e.pos, e.message}});
  }
}

RawTerm parse_raw_term(std::string_view text) {
  Parser p(lex(text));
  try {
    RawTerm t = p.term();
    p.skip_newlines();
    p.expect(Tok::End);
    return t;
  } catch (const SyntaxError& e) {
    throw ParseError({{e.pos, e.message}});
  }
}

Term parse_term(const SymbolTable& table, std::string_view text,
                const VarTypes& vars) {
  RawTerm raw = parse_raw_term(text);
  try {
    return type_check(table, vars, raw);
  } catch (const PositionedTypeError& e) {
    throw ParseError({{e.pos(), e.what()}});
  }
}

namespace {

bool constructors_and_pairs_only(const Term& t) {
  if (t.is_app()) return false;
  for (const auto& a : t.args()) {
    if (!constructors_and_pairs_only(a)) return false;
  }
  return true;
}

}  // namespace

Term parse_data_term(const SymbolTable& table, std::string_view text,
                     const Type& expected) {
  RawTerm raw = parse_raw_term(text);
  Term t = [&] {
    try {
      return type_check(table, {}, raw, expected);
    } catch (const PositionedTypeError& e) {
      throw ParseError({{e.pos(), e.what()}});
    }
  }();
  if (!constructors_and_pairs_only(t)) {
    throw ParseError({{raw.pos, "input must be built from constructors and "
                                "pairs only"}});
  }
  return t;
}

Term bits_to_list(const SymbolTable& table, std::string_view bits) {
  return parse_data_term(table, "\"" + std::string(bits) + "\"",
                         Type::sort("list"));
}

namespace {

enum class Ctx { Top, Arg, ConsLeft };

void print(const Term& t, Ctx ctx, std::string& out) {
  if (t.is_pair()) {
    out += "(";
    print(t.left(), Ctx::Top, out);
    out += ", ";
    print(t.right(), Ctx::Top, out);
    out += ")";
    return;
  }
  if (t.is_cons() && t.head() == "::" && t.args().size() == 2) {
    bool parens = ctx != Ctx::Top;
    if (parens) out += "(";
    print(t.args()[0], Ctx::ConsLeft, out);
    out += " :: ";
    print(t.args()[1], Ctx::Top, out);
    if (parens) out += ")";
    return;
  }
  if (t.args().empty()) {
    out += t.head();
    return;
  }
  bool parens = ctx == Ctx::Arg;
  if (parens) out += "(";
  out += t.head();
  for (const auto& a : t.args()) {
    out += " ";
    print(a, Ctx::Arg, out);
  }
  if (parens) out += ")";
}

}  // namespace

std::string print_term(const Term& t) {
  std::string out;
  print(t, Ctx::Top, out);
  return out;
}

std::string print_program(const Program& p) {
  std::string out = "sorts:";
  for (const auto& s : p.symbols().sorts()) out += " " + s;
  out += "\nconstructors:\n";
  for (const auto& [name, type] : p.symbols().constructors()) {
    out += "  " + name + " : " + type.to_string() + "\n";
  }
  out += "defined:\n";
  for (const auto& [name, type] : p.symbols().defined()) {
    out += "  " + name + " : " + type.to_string() + "\n";
  }
  out += "rules:\n";
  for (const auto& rule : p.rules()) {
    out += "  " + print_term(rule.lhs) + " -> " + print_term(rule.rhs) + "\n";
  }
  return out;
}

}  // namespace cf
