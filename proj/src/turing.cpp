#include <cctype>
#include <set>
#include <sstream>

#include "cf/error.hpp"
#include "cf/programgen.hpp"
#include "cf/syntax.hpp"
#include "gen_common.hpp"

namespace cf {

namespace {

const std::set<std::string> kReserved{"B0", "B1", "Blank", "L", "R"};

std::vector<std::string> split_words(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

TmSymbol parse_symbol(const std::string& s, std::size_t line) {
  if (s == "0") return TmSymbol::Zero;
  if (s == "1") return TmSymbol::One;
  if (s == "_") return TmSymbol::Blank;
  throw Error("line " + std::to_string(line) + ": unknown tape symbol '" + s +
              "'");
}

const char* symbol_text(TmSymbol s) {
  switch (s) {
    case TmSymbol::Zero: return "0";
    case TmSymbol::One: return "1";
    case TmSymbol::Blank: return "_";
  }
  return "?";
}

const char* symbol_constructor(TmSymbol s) {
  switch (s) {
    case TmSymbol::Zero: return "B0";
    case TmSymbol::One: return "B1";
    case TmSymbol::Blank: return "Blank";
  }
  return "?";
}

}  // namespace

void TuringMachine::validate() const {
  std::set<std::string> known;
  for (const auto& q : states) {
    if (q.empty() || !std::isupper(static_cast<unsigned char>(q[0]))) {
      throw Error("state '" + q + "' must start with an upper-case letter");
    }
    for (char c : q) {
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') {
        throw Error("state '" + q + "' is not an identifier");
      }
    }
    if (kReserved.count(q)) throw Error("state name '" + q + "' is reserved");
    if (!known.insert(q).second) throw Error("state '" + q + "' declared twice");
  }
  for (const char* q : {"Start", "Accept", "Reject"}) {
    if (!known.count(q)) throw Error(std::string("missing state '") + q + "'");
  }
  for (const auto& [key, t] : transitions) {
    if (!known.count(key.first)) {
      throw Error("transition from undeclared state '" + key.first + "'");
    }
    if (is_final(key.first)) {
      throw Error("transition from final state '" + key.first + "'");
    }
    if (!known.count(t.next)) {
      throw Error("transition to undeclared state '" + t.next + "'");
    }
  }
  for (const auto& q : states) {
    if (is_final(q)) continue;
    for (TmSymbol s : {TmSymbol::Zero, TmSymbol::One, TmSymbol::Blank}) {
      if (!transitions.count({q, s})) {
        throw Error("missing transition for state '" + q + "' on '" +
                    symbol_text(s) + "'");
      }
    }
  }
}

TuringMachine parse_tm(std::string_view text) {
  TuringMachine tm;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  bool in_transitions = false;
  bool saw_states = false;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto c = raw.find("--"); c != std::string::npos) raw.erase(c);
    auto words = split_words(raw);
    if (words.empty()) continue;
    const std::string& first = words[0];
    auto rest = [&]() {
      return std::vector<std::string>(words.begin() + 1, words.end());
    };
    if (first == "states:") {
      tm.states = rest();
      saw_states = true;
      in_transitions = false;
    } else if (first == "alphabet:") {
      std::set<std::string> alpha(words.begin() + 1, words.end());
      if (alpha != std::set<std::string>{"0", "1", "_"}) {
        throw Error("line " + std::to_string(line_no) +
                    ": the alphabet must be exactly 0 1 _");
      }
      in_transitions = false;
    } else if (first == "bound:") {
      std::string b;
      for (const auto& w : rest()) b += (b.empty() ? "" : " ") + w;
      if (b.empty()) throw Error("line " + std::to_string(line_no) + ": empty bound");
      tm.bound = b;
      in_transitions = false;
    } else if (first == "transitions:") {
      in_transitions = true;
      if (words.size() > 1) {
        throw Error("line " + std::to_string(line_no) +
                    ": transitions start on the next line");
      }
    } else if (in_transitions) {
      if (words.size() != 6 || words[2] != "->") {
        throw Error("line " + std::to_string(line_no) +
                    ": expected 'State sym -> State sym L|R'");
      }
      TmSymbol read = parse_symbol(words[1], line_no);
      TmTransition t{words[3], parse_symbol(words[4], line_no), TmMove::Left};
      if (words[5] == "L") {
        t.move = TmMove::Left;
      } else if (words[5] == "R") {
        t.move = TmMove::Right;
      } else {
        throw Error("line " + std::to_string(line_no) + ": direction must be L or R");
      }
      if (!tm.transitions.emplace(std::make_pair(words[0], read), t).second) {
        throw Error("line " + std::to_string(line_no) +
                    ": duplicate transition for '" + words[0] + " " + words[1] +
                    "'");
      }
    } else {
      throw Error("line " + std::to_string(line_no) + ": unexpected '" + first +
                  "'");
    }
  }
  if (!saw_states) throw Error("missing 'states:' section");
  tm.validate();
  return tm;
}

std::string print_tm(const TuringMachine& tm) {
  std::string out = "states:";
  for (const auto& q : tm.states) out += " " + q;
  out += "\nalphabet: 0 1 _\nbound: " + tm.bound + "\ntransitions:\n";
  for (const auto& q : tm.states) {
    for (TmSymbol s : {TmSymbol::Zero, TmSymbol::One, TmSymbol::Blank}) {
      auto it = tm.transitions.find({q, s});
      if (it == tm.transitions.end()) continue;
      out += "  " + q + " " + symbol_text(s) + " -> " + it->second.next + " " +
             symbol_text(it->second.write) + " " +
             (it->second.move == TmMove::Left ? "L" : "R") + "\n";
    }
  }
  return out;
}

TmRun simulate_tm(const TuringMachine& tm, std::string_view input,
                  std::uint64_t max_steps) {
  std::vector<TmSymbol> tape{TmSymbol::Blank};
  for (char c : input) {
    if (c != '0' && c != '1') throw Error("input must be a bitstring");
    tape.push_back(c == '1' ? TmSymbol::One : TmSymbol::Zero);
  }
  std::string state = "Start";
  std::size_t head = 0;
  std::uint64_t steps = 0;
  while (!tm.is_final(state)) {
    if (steps == max_steps) return {TmRun::Outcome::Timeout, steps};
    if (head >= tape.size()) tape.resize(head + 1, TmSymbol::Blank);
    auto it = tm.transitions.find({state, tape[head]});
    if (it == tm.transitions.end()) {
      throw Error("no transition for state '" + state + "'");
    }
    tape[head] = it->second.write;
    if (it->second.move == TmMove::Right) {
      ++head;
    } else if (head > 0) {
      --head;
    }
    state = it->second.next;
    ++steps;
  }
  return {state == "Accept" ? TmRun::Outcome::Accept : TmRun::Outcome::Reject,
          steps};
}

std::string compile_tm_source(const TuringMachine& tm, const CountingModule& cm) {
  tm.validate();
  detail::SourceParts parts = detail::bool_list_prelude();
  parts.sorts.insert(parts.sorts.end(), {"state", "sym", "dir"});
  for (const auto& q : tm.states) parts.constructors.push_back({q, "state"});
  for (const char* s : {"B0", "B1", "Blank"}) parts.constructors.push_back({s, "sym"});
  parts.constructors.push_back({"L", "dir"});
  parts.constructors.push_back({"R", "dir"});

  parts.defined = cm.declarations;
  parts.rules = cm.rules;

  const std::string c = cm.rep_type;
  const std::string rc = detail::arg_type(c);
  const std::string step = "state * (sym * dir)";
  auto decl = [&](const std::string& n, const std::string& t) {
    parts.defined.push_back({n, t});
  };
  auto rule = [&](const std::string& r) { parts.rules.push_back(r); };

  decl("transition", "state => sym => " + step);
  decl("tstep", "state => sym => " + step);
  decl("fst", step + " => state");
  decl("snd", step + " => sym * dir");
  decl("wsym", "sym * dir => sym");
  decl("wdir", "sym * dir => dir");
  decl("accepted", "state => bool");
  decl("start", "list => bool");
  decl("state", "list => " + rc + " => state");
  decl("stateh", "list => " + rc + " => bool => state");
  decl("transitionat", "list => " + rc + " => " + step);
  decl("position", "list => " + rc + " => " + c);
  decl("posh", "list => " + rc + " => bool => " + c);
  decl("move", "list => dir => " + rc + " => " + c);
  decl("mleft", "list => " + rc + " => bool => " + c);
  decl("succ", "list => " + rc + " => " + c);
  decl("sc", "list => " + rc + " => " + rc + " => " + c);
  decl("sch", "list => " + rc + " => " + rc + " => bool => " + c);
  decl("sc2", "list => " + rc + " => " + rc + " => bool => " + c);
  decl("zeroval", "list => " + c);
  decl("zv", "list => " + rc + " => " + c);
  decl("zvh", "list => " + rc + " => bool => " + c);
  decl("tape", "list => " + rc + " => " + rc + " => sym");
  decl("tapeh", "list => " + rc + " => " + rc + " => bool => sym");
  decl("tapeh2", "list => " + rc + " => " + rc + " => bool => sym");
  decl("input", "list => " + rc + " => sym");
  decl("inh", "list => " + rc + " => bool => sym");
  decl("nth", "list => list => " + rc + " => sym");
  decl("nthh", "list => bool => list => bool => " + rc + " => sym");
  decl("bit", "bool => sym");
  decl("ceq", "list => " + rc + " => " + rc + " => bool");
  decl("ceqh", "list => " + rc + " => " + rc + " => bool => bool => bool");

  for (const auto& q : tm.states) {
    for (TmSymbol s : {TmSymbol::Zero, TmSymbol::One, TmSymbol::Blank}) {
      auto it = tm.transitions.find({q, s});
      if (it == tm.transitions.end()) continue;
      rule("transition " + q + " " + symbol_constructor(s) + " -> (" +
           it->second.next + ", (" + symbol_constructor(it->second.write) +
           ", " + (it->second.move == TmMove::Left ? "L" : "R") + "))");
    }
  }
  for (const auto& q : tm.states) {
    if (tm.is_final(q)) {
      rule("tstep " + q + " s -> (" + q + ", (s, L))");
    } else {
      rule("tstep " + q + " s -> transition " + q + " s");
    }
  }
  rule("fst (q, r) -> q");
  rule("snd (q, r) -> r");
  rule("wsym (s, d) -> s");
  rule("wdir (s, d) -> d");
  for (const auto& q : tm.states) {
    rule("accepted " + q + " -> " + (q == "Accept" ? "true" : "false"));
  }
  rule("start cs -> accepted (state cs (seed cs))");
  rule("state cs t -> stateh cs t (zero cs t)");
  rule("stateh cs t true -> Start");
  rule("stateh cs t false -> fst (transitionat cs (pred cs t))");
  rule("transitionat cs t -> tstep (state cs t) (tape cs t (position cs t))");
  rule("position cs t -> posh cs t (zero cs t)");
  rule("posh cs t true -> zeroval cs");
  rule("posh cs t false -> move cs (wdir (snd (transitionat cs (pred cs t)))) "
       "(position cs (pred cs t))");
  rule("move cs L p -> mleft cs p (zero cs p)");
  rule("move cs R p -> succ cs p");
  rule("mleft cs p true -> p");
  rule("mleft cs p false -> pred cs p");
  rule("succ cs p -> sc cs p (seed cs)");
  rule("sc cs p q -> sch cs p q (zero cs q)");
  rule("sch cs p q false -> sc2 cs p q (ceq cs (pred cs q) p)");
  rule("sc2 cs p q true -> q");
  rule("sc2 cs p q false -> sc cs p (pred cs q)");
  rule("zeroval cs -> zv cs (seed cs)");
  rule("zv cs x -> zvh cs x (zero cs x)");
  rule("zvh cs x true -> x");
  rule("zvh cs x false -> zv cs (pred cs x)");
  rule("tape cs t p -> tapeh cs t p (zero cs t)");
  rule("tapeh cs t p true -> input cs p");
  rule("tapeh cs t p false -> tapeh2 cs t p (ceq cs p (position cs (pred cs t)))");
  rule("tapeh2 cs t p true -> wsym (snd (transitionat cs (pred cs t)))");
  rule("tapeh2 cs t p false -> tape cs (pred cs t) p");
  rule("input cs p -> inh cs p (zero cs p)");
  rule("inh cs p true -> Blank");
  rule("inh cs p false -> nth cs cs (pred cs p)");
  rule("nth cs [] q -> Blank");
  rule("nth cs (x :: xs) q -> nthh cs x xs (zero cs q) q");
  rule("nthh cs x xs true q -> bit x");
  rule("nthh cs x xs false q -> nth cs xs (pred cs q)");
  rule("bit true -> B1");
  rule("bit false -> B0");
  rule("ceq cs x y -> ceqh cs x y (zero cs x) (zero cs y)");
  rule("ceqh cs x y true true -> true");
  rule("ceqh cs x y true false -> false");
  rule("ceqh cs x y false true -> false");
  rule("ceqh cs x y false false -> ceq cs (pred cs x) (pred cs y)");
  return detail::assemble(parts);
}

Program compile_tm(const TuringMachine& tm, const CountingModule& cm) {
  return parse_program(compile_tm_source(tm, cm));
}

}  // namespace cf
