#include <string>
#include <vector>

#include "cf/error.hpp"
#include "cf/programgen.hpp"
#include "cf/syntax.hpp"
#include "gen_common.hpp"

namespace cf {

namespace detail {

SourceParts bool_list_prelude() {
  SourceParts p;
  p.sorts = {"bool", "list"};
  p.constructors = {{"true", "bool"},
                    {"false", "bool"},
                    {"[]", "list"},
                    {"::", "bool => list => list"}};
  return p;
}

std::string assemble(const SourceParts& parts) {
  std::string out = "sorts:";
  for (const auto& s : parts.sorts) out += " " + s;
  out += "\n\nconstructors:\n";
  for (const auto& c : parts.constructors) {
    out += "  " + c.name + " : " + c.type + "\n";
  }
  out += "\ndefined:\n";
  for (const auto& d : parts.defined) {
    out += "  " + d.name + " : " + d.type + "\n";
  }
  out += "\nrules:\n";
  for (const auto& r : parts.rules) out += "  " + r + "\n";
  return out;
}

std::string tuple(const std::vector<std::string>& items) {
  if (items.size() == 1) return items.front();
  std::string out = "(";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += items[i];
  }
  return out + ")";
}

std::string product_type(const std::vector<std::string>& items) {
  if (items.size() == 1) return items.front();
  std::string out = "(";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += " * ";
    out += items[i];
  }
  return out + ")";
}

std::string arg_type(const std::string& t) {
  int depth = 0;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    if (t[i] == '(') ++depth;
    if (t[i] == ')') --depth;
    if (depth == 0 && t[i] == '=' && t[i + 1] == '>') return "(" + t + ")";
  }
  return t;
}

}  // namespace detail

namespace {

using detail::arg_type;
using detail::tuple;

std::string num(unsigned i) { return std::to_string(i); }

std::vector<std::string> repeat(const std::string& s, unsigned n) {
  return std::vector<std::string>(n, s);
}

/// `true :: ... :: []` with j elements.
std::string tag(unsigned j) {
  std::string out;
  for (unsigned i = 0; i < j; ++i) out += "true :: ";
  return out + "[]";
}

struct Builder {
  CountingModule m;

  void decl(const std::string& name, const std::string& type) {
    m.declarations.push_back({name, type});
  }
  void rule(const std::string& r) { m.rules.push_back(r); }

  /// Equality and strict order at one level by simultaneous descent.
  void descent(const std::string& lv, const std::string& rep) {
    const std::string r = arg_type(rep);
    const std::string seed = "seed" + lv, pred = "pred" + lv,
                      zero = "zero" + lv;
    decl("equal" + lv, "list => " + r + " => " + r + " => bool");
    decl("eqh" + lv, "list => " + r + " => " + r + " => bool => bool => bool");
    decl("less" + lv, "list => " + r + " => " + r + " => bool");
    decl("lessh" + lv,
         "list => " + r + " => " + r + " => bool => bool => bool");
    rule("equal" + lv + " cs x y -> eqh" + lv + " cs x y (" + zero +
         " cs x) (" + zero + " cs y)");
    rule("eqh" + lv + " cs x y true true -> true");
    rule("eqh" + lv + " cs x y true false -> false");
    rule("eqh" + lv + " cs x y false true -> false");
    rule("eqh" + lv + " cs x y false false -> equal" + lv + " cs (" + pred +
         " cs x) (" + pred + " cs y)");
    rule("less" + lv + " cs x y -> lessh" + lv + " cs x y (" + zero +
         " cs x) (" + zero + " cs y)");
    rule("lessh" + lv + " cs x y b true -> false");
    rule("lessh" + lv + " cs x y true false -> true");
    rule("lessh" + lv + " cs x y false false -> less" + lv + " cs (" + pred +
         " cs x) (" + pred + " cs y)");
  }

  /// Top-level `seed`, `pred`, `zero` delegating to level `lv`.
  void entry_points(const std::string& lv) {
    const std::string r = arg_type(m.rep_type);
    decl("seed", "list => " + m.rep_type);
    decl("pred", "list => " + r + " => " + m.rep_type);
    decl("zero", "list => " + r + " => bool");
    rule("seed cs -> seed" + lv + " cs");
    rule("pred cs x -> pred" + lv + " cs x");
    rule("zero cs x -> zero" + lv + " cs x");
  }
};

/// Level-0 digits-with-tag counter. `nonempty` selects digits that are
/// non-empty suffixes (n values each) instead of arbitrary suffixes (n+1).
void tagged_digits(Builder& b, unsigned a, unsigned digits, bool nonempty,
                   const std::string& lv) {
  const std::string rep =
      detail::product_type({"list", detail::product_type(repeat("list", digits))});
  const std::string r = arg_type(rep);
  b.m.rep_type = rep;
  b.decl("seed" + lv, "list => " + rep);
  b.decl("pred" + lv, "list => " + r + " => " + rep);
  b.decl("zero" + lv, "list => " + r + " => bool");

  auto all_cs = tuple(repeat("cs", digits));
  b.rule("seed" + lv + " cs -> (" + tag(a - 1) + ", " + all_cs + ")");

  // Digit patterns: `low` is the smallest digit, `more` a larger one.
  auto low = [&](unsigned i) {
    return nonempty ? "(z" + num(i) + " :: [])" : std::string("[]");
  };
  auto more = [&]() {
    return nonempty ? std::string("(y :: w :: ws)") : std::string("(y :: ys)");
  };
  const std::string decremented = nonempty ? "(w :: ws)" : "ys";

  for (unsigned i = digits; i >= 1; --i) {
    std::vector<std::string> pat, res;
    for (unsigned j = 1; j <= digits; ++j) {
      if (j < i) {
        pat.push_back("d" + num(j));
        res.push_back("d" + num(j));
      } else if (j == i) {
        pat.push_back(more());
        res.push_back(decremented);
      } else {
        pat.push_back(low(j));
        res.push_back("cs");
      }
    }
    b.rule("pred" + lv + " cs (t, " + tuple(pat) + ") -> (t, " + tuple(res) +
           ")");
  }
  std::vector<std::string> lows;
  for (unsigned j = 1; j <= digits; ++j) lows.push_back(low(j));
  b.rule("pred" + lv + " cs (x :: t, " + tuple(lows) + ") -> (t, " + all_cs +
         ")");

  b.rule("zero" + lv + " cs ([], " + tuple(lows) + ") -> true");
  b.rule("zero" + lv + " cs (x :: t, ds) -> false");
  for (unsigned i = digits; i >= 1; --i) {
    std::vector<std::string> pat;
    for (unsigned j = 1; j <= digits; ++j) {
      pat.push_back(j < i ? "d" + num(j) : j == i ? more() : low(j));
    }
    b.rule("zero" + lv + " cs ([], " + tuple(pat) + ") -> false");
  }
}

}  // namespace

BigInt exp2_tower(unsigned k, const BigInt& m, std::size_t max_bits) {
  BigInt v = m;
  for (unsigned i = 0; i < k; ++i) {
    if (v > max_bits) {
      throw ResourceError("exp2 tower exceeds " + std::to_string(max_bits) +
                          " bits");
    }
    BigInt next = 1;
    next <<= static_cast<unsigned>(v);
    v = next;
  }
  return v;
}

BigInt IntOracle::bound(unsigned n) const {
  switch (family) {
    case Family::Lin:
      return BigInt(n + 1) * (n + 1) - 1;
    case Family::Poly:
      return BigInt(a) * boost::multiprecision::pow(BigInt(n + 1), b) - 1;
    case Family::Bin:
      return exp2_tower(k, BigInt(a) * boost::multiprecision::pow(BigInt(n), b)) -
             1;
    case Family::Nondet: {
      BigInt v = n;
      for (unsigned i = 0; i < k; ++i) v = exp2_tower(1, v) - 1;
      return v;
    }
  }
  return 0;
}

std::string CountingModule::source(
    const std::vector<Declaration>& extra_declarations,
    const std::vector<std::string>& extra_rules) const {
  detail::SourceParts parts = detail::bool_list_prelude();
  parts.defined = declarations;
  parts.defined.insert(parts.defined.end(), extra_declarations.begin(),
                       extra_declarations.end());
  parts.rules = rules;
  parts.rules.insert(parts.rules.end(), extra_rules.begin(), extra_rules.end());
  return detail::assemble(parts);
}

Program CountingModule::program() const { return parse_program(source()); }

CountingModule gen_lin_count(SeedVariant seed) {
  Builder b;
  b.m.family = "lin";
  b.m.rep_type = "list * list";
  b.m.oracle = IntOracle{IntOracle::Family::Lin, 0, 1, 2};
  b.decl("seed", "list => list * list");
  b.decl("pred", "list => list * list => list * list");
  b.decl("zero", "list => list * list => bool");
  b.rule(seed == SeedVariant::Corrected ? "seed cs -> (cs, cs)"
                                        : "seed cs -> ([], [])");
  b.rule("pred cs (xs, y :: ys) -> (xs, ys)");
  b.rule("pred cs (x :: xs, []) -> (xs, cs)");
  b.rule("zero cs ([], []) -> true");
  b.rule("zero cs (xs, y :: ys) -> false");
  b.rule("zero cs (x :: xs, []) -> false");
  return b.m;
}

CountingModule gen_poly_count(unsigned a, unsigned b) {
  if (a < 1 || b < 1) throw Error("poly counting needs a, b >= 1");
  Builder bld;
  bld.m.family = "poly";
  bld.m.oracle = IntOracle{IntOracle::Family::Poly, 0, a, b};
  tagged_digits(bld, a, b, false, "0");
  bld.entry_points("0");
  return bld.m;
}

CountingModule gen_bin_count(unsigned k, unsigned a, unsigned b) {
  if (k < 1 || a < 1 || b < 1) throw Error("binary counting needs k, a, b >= 1");
  Builder bld;
  bld.m.family = "bin";
  bld.m.level = k;
  bld.m.oracle = IntOracle{IntOracle::Family::Bin, k, a, b};
  tagged_digits(bld, a, b, true, "0");
  std::string lower = bld.m.rep_type;
  for (unsigned level = 1; level <= k; ++level) {
    const std::string lj = num(level - 1), lk = num(level);
    bld.descent(lj, lower);
    const std::string rj = arg_type(lower);
    const std::string rep = rj + " => bool";
    const std::string rk = "(" + rep + ")";
    const std::string pre = "list => " + rk + " => ";
    bld.decl("seed" + lk, "list => " + rep);
    bld.decl("ones" + lk, "list => " + rj + " => bool");
    bld.decl("zero" + lk, pre + "bool");
    bld.decl("az" + lk, pre + rj + " => bool");
    bld.decl("azh" + lk, pre + rj + " => bool => bool");
    bld.decl("az2" + lk, pre + rj + " => bool => bool");
    bld.decl("pred" + lk, pre + rep);
    bld.decl("dec" + lk, pre + rj + " => " + rj + " => bool");
    bld.decl("dh" + lk, pre + rj + " => bool => bool => bool");
    bld.decl("low" + lk, pre + lower);
    bld.decl("ls" + lk, pre + rj + " => " + rj + " => " + lower);
    bld.decl("lsb" + lk, pre + rj + " => " + rj + " => bool => " + lower);
    bld.decl("lsc" + lk, pre + rj + " => " + rj + " => bool => " + lower);

    const std::string seed = "seed" + lj, pred = "pred" + lj, zero = "zero" + lj;
    bld.rule("seed" + lk + " cs -> ones" + lk + " cs");
    bld.rule("ones" + lk + " cs m -> true");
    bld.rule("zero" + lk + " cs F -> az" + lk + " cs F (" + seed + " cs)");
    bld.rule("az" + lk + " cs F m -> azh" + lk + " cs F m (F m)");
    bld.rule("azh" + lk + " cs F m true -> false");
    bld.rule("azh" + lk + " cs F m false -> az2" + lk + " cs F m (" + zero +
             " cs m)");
    bld.rule("az2" + lk + " cs F m true -> true");
    bld.rule("az2" + lk + " cs F m false -> az" + lk + " cs F (" + pred +
             " cs m)");
    bld.rule("pred" + lk + " cs F -> dec" + lk + " cs F (low" + lk + " cs F)");
    bld.rule("dec" + lk + " cs F p m -> dh" + lk + " cs F m (less" + lj +
             " cs m p) (equal" + lj + " cs m p)");
    bld.rule("dh" + lk + " cs F m true e -> true");
    bld.rule("dh" + lk + " cs F m false true -> false");
    bld.rule("dh" + lk + " cs F m false false -> F m");
    bld.rule("low" + lk + " cs F -> ls" + lk + " cs F (" + seed + " cs) (" +
             seed + " cs)");
    bld.rule("ls" + lk + " cs F m acc -> lsb" + lk + " cs F m acc (F m)");
    bld.rule("lsb" + lk + " cs F m acc true -> lsc" + lk + " cs F m m (" +
             zero + " cs m)");
    bld.rule("lsb" + lk + " cs F m acc false -> lsc" + lk + " cs F m acc (" +
             zero + " cs m)");
    bld.rule("lsc" + lk + " cs F m acc true -> acc");
    bld.rule("lsc" + lk + " cs F m acc false -> ls" + lk + " cs F (" + pred +
             " cs m) acc");
    lower = rep;
  }
  bld.m.rep_type = lower;
  bld.entry_points(num(k));
  return bld.m;
}

CountingModule gen_nondet_count(unsigned k) {
  Builder bld;
  bld.m.family = "nondet";
  bld.m.level = k == 0 ? 0 : 1;
  bld.m.oracle = IntOracle{IntOracle::Family::Nondet, k, 1, 1};
  bld.m.rep_type = "list";
  bld.decl("seed0", "list => list");
  bld.decl("pred0", "list => list => list");
  bld.decl("zero0", "list => list => bool");
  bld.rule("seed0 cs -> cs");
  bld.rule("pred0 cs (x :: xs) -> xs");
  bld.rule("zero0 cs [] -> true");
  bld.rule("zero0 cs (x :: xs) -> false");

  std::vector<std::string> reps{"list"};
  std::string lower = "list";
  for (unsigned level = 1; level <= k; ++level) {
    const std::string lj = num(level - 1), lk = num(level);
    const std::string rj = arg_type(lower);
    const std::string seed = "seed" + lj, pred = "pred" + lj, zero = "zero" + lj;

    // Helpers at the index level: order, equality, a default zero and a
    // non-deterministic choice of any non-zero index.
    bld.descent(lj, lower);
    bld.decl("zrep" + lj, "list => " + lower);
    bld.decl("anyidx" + lj, "list => " + lower);
    bld.decl("anyfrom" + lj, "list => " + rj + " => " + lower);
    bld.decl("af" + lj, "list => " + rj + " => bool => " + lower);
    if (level == 1) {
      bld.rule("zrep0 cs -> []");
    } else {
      const std::string lz = num(level - 2);
      bld.decl("zfun" + lj, "list => bool => " + reps[level - 2]);
      bld.rule("zrep" + lj + " cs -> zfun" + lj + " cs");
      bld.rule("zfun" + lj + " cs b -> zrep" + lz + " cs");
      bld.rule("zfun" + lj + " cs false -> anyidx" + lz + " cs");
    }
    bld.rule("anyidx" + lj + " cs -> anyfrom" + lj + " cs (" + seed + " cs)");
    bld.rule("anyfrom" + lj + " cs x -> af" + lj + " cs x (" + zero + " cs x)");
    bld.rule("af" + lj + " cs x false -> x");
    bld.rule("af" + lj + " cs x false -> anyfrom" + lj + " cs (" + pred +
             " cs x)");

    const std::string rep = "bool => " + lower;
    const std::string rk = "(" + rep + ")";
    const std::string pre = "list => " + rk + " => ";
    bld.decl("bitset" + lk, pre + rj + " => bool");
    bld.decl("bshelp" + lk, pre + rj + " => bool => bool => bool");
    bld.decl("seed" + lk, "list => " + rep);
    bld.decl("all" + lk, "list => " + rep);
    bld.decl("zero" + lk, pre + "bool");
    bld.decl("zscan" + lk, pre + rj + " => bool");
    bld.decl("zs" + lk, pre + rj + " => bool => bool");
    bld.decl("zs2" + lk, pre + rj + " => bool => bool");
    bld.decl("pred" + lk, pre + rep);
    bld.decl("dec" + lk, pre + rj + " => " + rep);
    bld.decl("pick" + lk, pre + rj + " => bool => " + rj + " => " + lower);
    bld.decl("pk" + lk, rj + " => bool => bool => " + lower);
    bld.decl("newbit" + lk, pre + rj + " => " + rj + " => bool");
    bld.decl("nb" + lk, pre + rj + " => bool => bool => bool");
    bld.decl("lowset" + lk, pre + lower);
    bld.decl("ls" + lk, pre + rj + " => " + rj + " => " + lower);
    bld.decl("lsa" + lk, pre + rj + " => " + rj + " => bool => " + lower);
    bld.decl("lsb" + lk, pre + rj + " => " + rj + " => bool => " + lower);

    const std::string eq = "equal" + lj;
    bld.rule("bitset" + lk + " cs F j -> bshelp" + lk + " cs F j (" + eq +
             " cs (F true) j) (" + eq + " cs (F false) j)");
    bld.rule("bshelp" + lk + " cs F j true b -> true");
    bld.rule("bshelp" + lk + " cs F j b true -> false");
    bld.rule("bshelp" + lk + " cs F j false false -> bitset" + lk + " cs F j");
    bld.rule("seed" + lk + " cs -> all" + lk + " cs");
    bld.rule("all" + lk + " cs true -> anyidx" + lj + " cs");
    bld.rule("all" + lk + " cs false -> zrep" + lj + " cs");
    bld.rule("zero" + lk + " cs F -> zscan" + lk + " cs F (" + seed + " cs)");
    bld.rule("zscan" + lk + " cs F j -> zs" + lk + " cs F j (" + zero +
             " cs j)");
    bld.rule("zs" + lk + " cs F j true -> true");
    bld.rule("zs" + lk + " cs F j false -> zs2" + lk + " cs F j (bitset" + lk +
             " cs F j)");
    bld.rule("zs2" + lk + " cs F j true -> false");
    bld.rule("zs2" + lk + " cs F j false -> zscan" + lk + " cs F (" + pred +
             " cs j)");
    bld.rule("pred" + lk + " cs F -> dec" + lk + " cs F (lowset" + lk +
             " cs F)");
    bld.rule("dec" + lk + " cs F p b -> zrep" + lj + " cs");
    bld.rule("dec" + lk + " cs F p b -> pick" + lk + " cs F p b (anyidx" + lj +
             " cs)");
    bld.rule("pick" + lk + " cs F p b j -> pk" + lk + " j b (newbit" + lk +
             " cs F p j)");
    bld.rule("pk" + lk + " j true true -> j");
    bld.rule("pk" + lk + " j false false -> j");
    bld.rule("newbit" + lk + " cs F p j -> nb" + lk + " cs F j (less" + lj +
             " cs j p) (" + eq + " cs j p)");
    bld.rule("nb" + lk + " cs F j true e -> true");
    bld.rule("nb" + lk + " cs F j false true -> false");
    bld.rule("nb" + lk + " cs F j false false -> bitset" + lk + " cs F j");
    bld.rule("lowset" + lk + " cs F -> ls" + lk + " cs F (" + seed + " cs) (" +
             seed + " cs)");
    bld.rule("ls" + lk + " cs F j acc -> lsa" + lk + " cs F j acc (" + zero +
             " cs j)");
    bld.rule("lsa" + lk + " cs F j acc true -> acc");
    bld.rule("lsa" + lk + " cs F j acc false -> lsb" + lk + " cs F j acc (bitset" +
             lk + " cs F j)");
    bld.rule("lsb" + lk + " cs F j acc true -> ls" + lk + " cs F (" + pred +
             " cs j) j");
    bld.rule("lsb" + lk + " cs F j acc false -> ls" + lk + " cs F (" + pred +
             " cs j) acc");
    lower = rep;
    reps.push_back(rep);
  }
  bld.m.rep_type = lower;
  bld.entry_points(num(k));
  return bld.m;
}

std::string probe_name(unsigned i) { return "probe_" + std::to_string(i); }

std::string counting_probe_source(const CountingModule& m,
                                  const std::vector<unsigned>& steps) {
  std::vector<Declaration> decls;
  std::vector<std::string> rules;
  for (unsigned i : steps) {
    decls.push_back({probe_name(i), "list => bool"});
    std::string t = "seed cs";
    for (unsigned s = 0; s < i; ++s) t = "pred cs (" + t + ")";
    rules.push_back(probe_name(i) + " cs -> zero cs (" + t + ")");
  }
  return m.source(decls, rules);
}

CountingModule counting_module_for(std::string_view bound, SeedVariant seed) {
  std::vector<std::string> words;
  std::string cur;
  for (char c : bound) {
    if (c == ' ' || c == '\t') {
      if (!cur.empty()) words.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) words.push_back(cur);
  auto arg = [&](std::size_t i) -> unsigned {
    if (i >= words.size()) throw Error("bound '" + std::string(bound) + "': missing parameter");
    try {
      return static_cast<unsigned>(std::stoul(words[i]));
    } catch (const std::exception&) {
      throw Error("bound '" + std::string(bound) + "': bad parameter '" + words[i] + "'");
    }
  };
  auto expect = [&](std::size_t n) {
    if (words.size() != n) throw Error("bound '" + std::string(bound) + "': wrong number of parameters");
  };
  if (words.empty()) throw Error("empty bound");
  if (words[0] == "lin") {
    expect(1);
    return gen_lin_count(seed);
  }
  if (words[0] == "poly") {
    expect(3);
    return gen_poly_count(arg(1), arg(2));
  }
  if (words[0] == "bin") {
    expect(4);
    return gen_bin_count(arg(1), arg(2), arg(3));
  }
  if (words[0] == "nondet") {
    expect(2);
    return gen_nondet_count(arg(1));
  }
  throw Error("unknown bound family '" + words[0] + "'");
}

}  // namespace cf
