#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cf/analysis.hpp"
#include "cf/error.hpp"
#include "cf/interpreter.hpp"
#include "cf/programgen.hpp"
#include "cf/saturation.hpp"
#include "cf/scaling.hpp"
#include "cf/syntax.hpp"

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kResource = 3 };

constexpr const char* kParityMachine = R"(states: Start Even Odd Accept Reject
alphabet: 0 1 _
bound: lin
transitions:
  Start _ -> Even _ R
  Start 0 -> Reject 0 R
  Start 1 -> Reject 1 R
  Even 0 -> Odd 0 R
  Even 1 -> Odd 1 R
  Even _ -> Accept _ R
  Odd 0 -> Even 0 R
  Odd 1 -> Even 1 R
  Odd _ -> Reject _ R
)";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string format = "human";
  std::string program_path;
  std::vector<std::string> inputs;
  std::string entry = "start";
  std::size_t budget_depth = cf::Budget{}.max_depth;
  std::uint64_t max_branchings = cf::Budget{}.max_branchings;
  std::uint64_t domain_cap = cf::SaturationOptions{}.domain_cap;
  std::string mode = "auto";
  bool trace = false;
  bool dump_statements = false;
  std::string seed_erratum = "corrected";
  std::string output;
  // gen / compile / bench
  std::string family;
  unsigned k = 1, a = 1, b = 1;
  int probes = -1;
  std::string bound;
  std::string tm_path;
  std::vector<unsigned> sizes{2, 4, 6, 8};
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const Config& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output);
  if (!out) throw UsageError("cannot write '" + cfg.output + "'");
  out << text;
}

bool records(const Config& cfg) { return cfg.format == "records"; }

cf::SeedVariant seed_variant(const Config& cfg) {
  return cfg.seed_erratum == "paper" ? cf::SeedVariant::Paper
                                     : cf::SeedVariant::Corrected;
}

/// Bitstrings (optionally quoted) become boolean lists; anything else is
/// parsed as a data term of the expected type.
cf::Term parse_input(const cf::SymbolTable& table, std::string text,
                     const cf::Type& expected) {
  if (text.size() >= 2 && text.front() == '"' && text.back() == '"') {
    text = text.substr(1, text.size() - 2);
  }
  bool bits = text.find_first_not_of("01") == std::string::npos;
  if (bits && expected == cf::Type::sort("list")) {
    return cf::bits_to_list(table, text);
  }
  return cf::parse_data_term(table, text, expected);
}

std::vector<cf::Term> parse_inputs(const cf::Program& p, const Config& cfg) {
  if (!p.symbols().is_defined(cfg.entry)) {
    throw UsageError("program does not define '" + cfg.entry + "'");
  }
  auto params = p.symbols().defined_type(cfg.entry).argument_types();
  if (cfg.inputs.size() > params.size()) {
    throw UsageError("'" + cfg.entry + "' takes " +
                     std::to_string(params.size()) + " arguments");
  }
  std::vector<cf::Term> out;
  for (std::size_t i = 0; i < cfg.inputs.size(); ++i) {
    out.push_back(parse_input(p.symbols(), cfg.inputs[i], params[i]));
  }
  return out;
}

std::string result_set(const std::vector<cf::Term>& results) {
  std::string s = "{";
  for (std::size_t i = 0; i < results.size(); ++i) {
    s += (i ? ", " : "") + cf::print_term(results[i]);
  }
  return s + "}";
}

int cmd_check(const Config& cfg) {
  cf::Program p = cf::parse_program(read_file(cfg.program_path));
  cf::AnalysisReport report = cf::classify(p);
  std::cout << (records(cfg) ? cf::to_records(report) : cf::to_human(report));
  return report.cons_free.cons_free ? kOk : kCheckFailed;
}

int cmd_run(const Config& cfg) {
  cf::Program p = cf::parse_program(read_file(cfg.program_path));
  auto args = parse_inputs(p, cfg);
  cf::Term call = cf::Term::app(cf::HeadKind::Defined, cfg.entry, {},
                                p.symbols().defined_type(cfg.entry));
  call = cf::apply_args(call, args);
  cf::TraceWriter tracer(std::cout);
  cf::Budget budget{cfg.budget_depth, cfg.max_branchings};
  cf::EvalResult r = cf::eval_all(p, call, budget, cfg.trace ? &tracer : nullptr);
  if (records(cfg)) {
    for (const auto& t : r.results) std::cout << "result=" << cf::print_term(t) << "\n";
    std::cout << "complete=" << (r.complete ? "true" : "false") << "\n"
              << "steps=" << r.steps_used << "\n"
              << "depth=" << r.depth_reached << "\n";
  } else {
    std::cout << "results: " << result_set(r.results) << "\n";
    if (r.complete) {
      std::cout << "complete: every evaluation finished (" << r.steps_used
                << " steps)\n";
    } else {
      std::cout << "incomplete: budget exhausted at depth " << r.depth_reached
                << " after " << r.steps_used
                << " steps; more results may exist\n";
    }
  }
  return r.complete ? kOk : kResource;
}

cf::SaturationMode parse_mode(const std::string& m) {
  if (m == "eager") return cf::SaturationMode::Eager;
  if (m == "demand") return cf::SaturationMode::DemandDriven;
  return cf::SaturationMode::Auto;
}

const char* mode_name(cf::SaturationMode m) {
  switch (m) {
    case cf::SaturationMode::Eager: return "eager";
    case cf::SaturationMode::DemandDriven: return "demand";
    case cf::SaturationMode::Auto: return "auto";
  }
  return "?";
}

int cmd_saturate(const Config& cfg) {
  cf::Program p = cf::parse_program(read_file(cfg.program_path));
  auto args = parse_inputs(p, cfg);
  cf::SaturationOptions opts;
  opts.mode = parse_mode(cfg.mode);
  opts.domain_cap = cfg.domain_cap;
  opts.dump_statements = cfg.dump_statements;
  cf::SaturationResult r = cf::saturate(p, cfg.entry, args, opts);
  const auto& s = r.stats;
  if (records(cfg)) {
    for (const auto& t : r.results) std::cout << "result=" << cf::print_term(t) << "\n";
    std::cout << "mode=" << mode_name(s.mode) << "\n"
              << "base_size=" << s.base_size << "\n"
              << "statements_generated=" << s.statements_generated << "\n"
              << "statements_confirmed=" << s.statements_confirmed << "\n"
              << "passes=" << s.passes << "\n";
    for (const auto& line : r.statements) std::cout << "statement=" << line << "\n";
  } else {
    std::cout << "results: " << result_set(r.results) << "\n"
              << "mode: " << mode_name(s.mode) << ", base set " << s.base_size
              << " terms, " << s.statements_confirmed << " of "
              << s.statements_generated << " statements confirmed\n";
    for (const auto& line : r.statements) std::cout << "  " << line << "\n";
  }
  return kOk;
}

cf::CountingModule module_for(const Config& cfg) {
  const std::string& f = cfg.family;
  if (f == "lin") return cf::gen_lin_count(seed_variant(cfg));
  if (f == "poly") return cf::gen_poly_count(cfg.a, cfg.b);
  if (f == "bin") return cf::gen_bin_count(cfg.k, cfg.a, cfg.b);
  if (f == "nondet") return cf::gen_nondet_count(cfg.k);
  throw UsageError("unknown family '" + f + "'");
}

int cmd_gen(const Config& cfg) {
  if (cfg.family != "lin" && (cfg.a == 0 || cfg.b == 0)) {
    throw UsageError("--a and --b must be positive");
  }
  if (cfg.family == "bin" && cfg.k == 0) throw UsageError("--k must be positive for bin");
  cf::CountingModule m = module_for(cfg);
  std::string text;
  if (cfg.probes >= 0) {
    std::vector<unsigned> steps;
    for (int i = 0; i <= cfg.probes; ++i) steps.push_back(static_cast<unsigned>(i));
    text = cf::counting_probe_source(m, steps);
  } else {
    text = m.source();
  }
  cf::parse_program(text);
  emit(cfg, text);
  return kOk;
}

int cmd_compile(const Config& cfg) {
  cf::TuringMachine tm = cf::parse_tm(read_file(cfg.tm_path));
  std::string bound = cfg.bound.empty() ? tm.bound : cfg.bound;
  std::string text =
      cf::compile_tm_source(tm, cf::counting_module_for(bound, seed_variant(cfg)));
  cf::parse_program(text);
  emit(cfg, text);
  return kOk;
}

int cmd_bench(const Config& cfg) {
  cf::TuringMachine tm =
      cf::parse_tm(cfg.tm_path.empty() ? std::string(kParityMachine)
                                       : read_file(cfg.tm_path));
  std::string bound = cfg.bound.empty() ? tm.bound : cfg.bound;
  cf::Program p = cf::compile_tm(tm, cf::counting_module_for(bound));
  cf::SaturationOptions opts;
  opts.mode = parse_mode(cfg.mode);
  opts.domain_cap = cfg.domain_cap;
  auto rows = cf::scaling_probe(p, "start", cfg.sizes, opts);
  std::vector<std::pair<double, double>> points;
  if (!records(cfg)) {
    std::cout << "     n   generated   confirmed    seconds\n";
  }
  for (const auto& r : rows) {
    if (records(cfg)) {
      std::cout << "row=" << r.n << "," << r.statements_generated << ","
                << r.statements_confirmed << "," << r.seconds << "\n";
    } else {
      std::printf("%6u %11llu %11llu %10.4f\n", r.n,
                  static_cast<unsigned long long>(r.statements_generated),
                  static_cast<unsigned long long>(r.statements_confirmed),
                  r.seconds);
    }
    if (r.n > 0) points.emplace_back(r.n, static_cast<double>(r.statements_confirmed));
  }
  if (points.size() >= 2) {
    double slope = cf::loglog_slope(points);
    if (records(cfg)) {
      std::cout << "slope=" << slope << "\n";
    } else {
      std::cout << "fitted exponent (confirmed statements vs n): " << slope << "\n";
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cons-free higher-order rewriting: analysis, evaluation, saturation"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;

  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"human", "records"}))
      ->capture_default_str();
  app.add_option("--seed-erratum", cfg.seed_erratum,
                 "Seed rule of the linear counter")
      ->check(CLI::IsMember({"paper", "corrected"}))
      ->capture_default_str();

  auto* check = app.add_subcommand("check", "Classify a program");
  check->add_option("program", cfg.program_path, "Program file")->required();

  auto add_eval = [&](CLI::App* cmd) {
    cmd->add_option("program", cfg.program_path, "Program file")->required();
    cmd->add_option("inputs", cfg.inputs,
                    "Arguments: bitstrings or data terms");
    cmd->add_option("--entry", cfg.entry, "Defined symbol to call")
        ->capture_default_str();
  };
  const CLI::Validator positive(
      [](std::string& s) -> std::string {
        bool digits = !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
        if (digits && s.find_first_not_of('0') != std::string::npos) return {};
        return "expected a positive integer, got '" + s + "'";
      },
      "POSITIVE");
  auto* run = app.add_subcommand("run", "Enumerate results by bounded evaluation");
  add_eval(run);
  run->add_option("--budget-depth", cfg.budget_depth, "Maximum rule-application depth")
      ->check(positive)
      ->capture_default_str();
  run->add_option("--max-branchings", cfg.max_branchings, "Maximum rule applications")
      ->check(positive)
      ->capture_default_str();
  run->add_flag("--trace", cfg.trace, "Print every rule application");

  auto* sat = app.add_subcommand("saturate", "Compute all results by saturation");
  add_eval(sat);
  sat->add_option("--domain-cap", cfg.domain_cap, "Largest materialized domain")
      ->check(positive)
      ->capture_default_str();
  sat->add_option("--mode", cfg.mode, "Saturation engine")
      ->check(CLI::IsMember({"auto", "eager", "demand"}))
      ->capture_default_str();
  sat->add_flag("--dump-statements", cfg.dump_statements, "Print confirmed statements");

  auto* compile = app.add_subcommand("compile", "Compile a Turing machine");
  compile->add_option("machine", cfg.tm_path, "Machine file (.tm)")->required();
  compile->add_option("--bound", cfg.bound, "Counting family, e.g. 'bin 1 1 1'");
  compile->add_option("-o,--output", cfg.output, "Output file");

  auto* gen = app.add_subcommand("gen", "Emit a counting module");
  gen->add_option("family", cfg.family, "lin, poly, bin or nondet")
      ->required()
      ->check(CLI::IsMember({"lin", "poly", "bin", "nondet"}));
  gen->add_option("--k", cfg.k, "Level")->capture_default_str();
  gen->add_option("--a", cfg.a, "Factor")->capture_default_str();
  gen->add_option("--b", cfg.b, "Exponent")->capture_default_str();
  gen->add_option("--probes", cfg.probes,
                  "Add probe_0 .. probe_N testing zero after i predecessor steps");
  gen->add_option("-o,--output", cfg.output, "Output file");

  auto* bench = app.add_subcommand("bench", "Statement counts of a compiled machine by input size");
  bench->add_option("--machine", cfg.tm_path, "Machine file (default: even-length parity)");
  bench->add_option("--bound", cfg.bound, "Counting family override");
  bench->add_option("--sizes", cfg.sizes, "Input lengths")->delimiter(',');
  bench->add_option("--mode", cfg.mode, "Saturation engine")
      ->check(CLI::IsMember({"auto", "eager", "demand"}))
      ->capture_default_str();
  bench->add_option("--domain-cap", cfg.domain_cap, "Largest materialized domain")
      ->check(positive);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*check) return cmd_check(cfg);
    if (*run) return cmd_run(cfg);
    if (*sat) return cmd_saturate(cfg);
    if (*compile) return cmd_compile(cfg);
    if (*gen) return cmd_gen(cfg);
    if (*bench) return cmd_bench(cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const cf::ParseError& e) {
    for (const auto& d : e.diagnostics()) std::cerr << d.to_string() << "\n";
    return kCheckFailed;
  } catch (const cf::ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const cf::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kUsage;
}
