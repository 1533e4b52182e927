#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>

#include "cf/syntax.hpp"

namespace cftest {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path data_dir() { return CF_TEST_DATA_DIR; }

std::vector<std::filesystem::path> corpus_files() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(data_dir() / "corpus")) {
    if (e.path().extension() == ".cf") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

cf::Program load_program(const std::filesystem::path& path) {
  return cf::parse_program(read_file(path));
}

std::vector<std::string> bitstrings(unsigned max_len) {
  std::vector<std::string> out;
  for (unsigned n = 0; n <= max_len; ++n) {
    for (unsigned x = 0; x < (1u << n); ++x) {
      std::string s;
      for (unsigned i = 0; i < n; ++i) s += (x >> (n - 1 - i)) & 1 ? '1' : '0';
      out.push_back(s);
    }
  }
  return out;
}

cf::Term call(const cf::Program& p, const std::string& f,
              const std::vector<cf::Term>& args) {
  cf::Term head = cf::Term::app(cf::HeadKind::Defined, f, {},
                                p.symbols().defined_type(f));
  return cf::apply_args(head, args);
}

cf::Term input(const cf::Program& p, const std::string& bits) {
  return cf::bits_to_list(p.symbols(), bits);
}

std::set<std::string> printed(const std::vector<cf::Term>& terms) {
  std::set<std::string> out;
  for (const auto& t : terms) out.insert(cf::print_term(t));
  return out;
}

std::vector<Expectation> expectations(const std::string& source) {
  static const std::regex line(R"re(--\s*expect\s+"([01]*)":\s*\{([^}]*)\})re");
  std::vector<Expectation> out;
  for (std::sregex_iterator it(source.begin(), source.end(), line), end;
       it != end; ++it) {
    Expectation e{(*it)[1].str(), {}};
    // Split on commas outside parentheses so pair results stay whole.
    std::string item;
    int depth = 0;
    auto flush = [&] {
      item.erase(0, item.find_first_not_of(' '));
      item.erase(item.find_last_not_of(' ') + 1);
      if (!item.empty()) e.results.insert(item);
      item.clear();
    };
    for (char c : (*it)[2].str()) {
      depth += (c == '(') - (c == ')');
      if (c == ',' && depth == 0) {
        flush();
      } else {
        item += c;
      }
    }
    flush();
    out.push_back(std::move(e));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

const std::vector<std::string> kParamTypes{
    "bool", "list", "bool", "list", "bool * list", "bool => bool", "list => bool"};
const std::vector<std::string> kResultTypes{"bool", "list", "bool", "bool * bool"};

std::string arg(const std::string& t) {
  return t.find("=>") != std::string::npos ? "(" + t + ")" : t;
}

}  // namespace

bool RandomProgramGenerator::chance(double p) {
  return std::uniform_real_distribution<double>(0, 1)(rng_) < p;
}

std::string RandomProgramGenerator::pick(const std::vector<std::string>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng_)];
}

std::string RandomProgramGenerator::pattern(const std::string& type,
                                            std::vector<Binding>& env,
                                            int& fresh, int depth) {
  auto var = [&](const std::string& t) {
    std::string v = "v" + std::to_string(fresh++);
    env.push_back({v, t});
    return v;
  };
  if (type == "bool") {
    if (chance(0.5)) return var(type);
    return chance(0.5) ? "true" : "false";
  }
  if (type == "list") {
    double r = std::uniform_real_distribution<double>(0, 1)(rng_);
    if (r < 0.4 || depth > 1) return var(type);
    if (r < 0.6) return "[]";
    std::string h = pattern("bool", env, fresh, depth + 1);
    std::string t = pattern("list", env, fresh, depth + 1);
    std::string whole = "(" + h + " :: " + t + ")";
    // Constructor subterms of a pattern may reappear on the right.
    env.push_back({whole, "list"});
    return whole;
  }
  if (type == "bool * list") {
    if (chance(0.4)) return var(type);
    std::string a = pattern("bool", env, fresh, depth + 1);
    std::string b = pattern("list", env, fresh, depth + 1);
    return "(" + a + ", " + b + ")";
  }
  return var(type);
}

std::string RandomProgramGenerator::leaf(const std::string& type,
                                         const std::vector<Binding>& env) {
  std::vector<std::string> options;
  for (const auto& b : env) {
    if (b.type == type) options.push_back(b.text);
  }
  if (type == "bool") {
    options.insert(options.end(), {"true", "false"});
  } else if (type == "list") {
    options.insert(options.end(), {"[]", "(false :: [])"});
  } else if (type == "bool * list") {
    options.push_back("(true, [])");
  } else if (type == "bool * bool") {
    options.push_back("(false, true)");
  } else if (type == "bool => bool") {
    options.insert(options.end(), {"notb", "idb"});
  } else if (type == "list => bool") {
    options.push_back("isnil");
  }
  return pick(options);
}

std::string RandomProgramGenerator::rhs(const std::string& type, int depth,
                                        const std::vector<Binding>& env) {
  if (depth <= 0 || chance(0.3)) return leaf(type, env);
  double r = std::uniform_real_distribution<double>(0, 1)(rng_);
  if (type == "bool * bool" && r < 0.5) {
    return "(" + rhs("bool", depth - 1, env) + ", " + rhs("bool", depth - 1, env) + ")";
  }
  if (type == "bool * list" && r < 0.5) {
    return "(" + rhs("bool", depth - 1, env) + ", " + rhs("list", depth - 1, env) + ")";
  }
  // Apply a function variable.
  std::vector<Binding> fns;
  for (const auto& b : env) {
    if (b.type == "bool => " + type || b.type == "list => " + type) fns.push_back(b);
  }
  if (!fns.empty() && r < 0.3) {
    const Binding& f = fns[std::uniform_int_distribution<std::size_t>(0, fns.size() - 1)(rng_)];
    std::string dom = f.type.substr(0, f.type.find(" =>"));
    return f.text + " (" + rhs(dom, depth - 1, env) + ")";
  }
  // Call a defined symbol, fully or partially applied.
  std::vector<std::pair<const Symbol*, std::size_t>> calls;
  for (const auto& s : symbols_) {
    if (s.result == type) calls.push_back({&s, s.params.size()});
    if (!s.params.empty() && s.params.size() >= 1) {
      std::string rest = s.params.back() + " => " + s.result;
      if (s.params.back().find("=>") == std::string::npos && rest == type) {
        calls.push_back({&s, s.params.size() - 1});
      }
    }
  }
  if (calls.empty()) return leaf(type, env);
  auto [sym, n] = calls[std::uniform_int_distribution<std::size_t>(0, calls.size() - 1)(rng_)];
  std::string out = sym->name;
  for (std::size_t i = 0; i < n; ++i) {
    out += " (" + rhs(sym->params[i], depth - 1, env) + ")";
  }
  return out;
}

std::string RandomProgramGenerator::generate() {
  symbols_.clear();
  std::uniform_int_distribution<int> nsym(1, 4), nparams(1, 3), nrules(1, 3);
  int count = nsym(rng_);
  for (int i = 0; i < count; ++i) {
    Symbol s{"f" + std::to_string(i), {}, pick(kResultTypes)};
    int m = nparams(rng_);
    for (int j = 0; j < m; ++j) s.params.push_back(pick(kParamTypes));
    symbols_.push_back(s);
  }

  std::string out =
      "sorts: bool list\n\nconstructors:\n  true : bool\n  false : bool\n"
      "  [] : list\n  :: : bool => list => list\n\ndefined:\n"
      "  start : list => bool\n  notb : bool => bool\n  idb : bool => bool\n"
      "  isnil : list => bool\n";
  for (const auto& s : symbols_) {
    out += "  " + s.name + " : ";
    for (const auto& p : s.params) out += arg(p) + " => ";
    out += s.result + "\n";
  }
  out +=
      "\nrules:\n  notb true -> false\n  notb false -> true\n  idb x -> x\n"
      "  isnil [] -> true\n  isnil (x :: xs) -> false\n";

  std::vector<Binding> start_env{{"cs", "list"}};
  out += "  start cs -> " + rhs("bool", 3, start_env) + "\n";
  for (const auto& s : symbols_) {
    int rules = nrules(rng_);
    for (int r = 0; r < rules; ++r) {
      std::vector<Binding> env;
      int fresh = 0;
      std::string lhs = s.name;
      for (const auto& p : s.params) lhs += " " + pattern(p, env, fresh, 0);
      // Recursion depth is kept shallow so most evaluations finish.
      out += "  " + lhs + " -> " + rhs(s.result, chance(0.5) ? 1 : 2, env) + "\n";
    }
  }
  return out;
}

}  // namespace cftest
