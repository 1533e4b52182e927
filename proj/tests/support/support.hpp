#pragma once

#include <filesystem>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cf/program.hpp"

namespace cftest {

std::string read_file(const std::filesystem::path& path);
std::filesystem::path data_dir();
/// Sorted `.cf` files of tests/corpus.
std::vector<std::filesystem::path> corpus_files();
cf::Program load_program(const std::filesystem::path& path);

/// Every bitstring of length 0..max_len, shortest first.
std::vector<std::string> bitstrings(unsigned max_len);

/// `f args` as a term.
cf::Term call(const cf::Program& p, const std::string& f,
              const std::vector<cf::Term>& args);
cf::Term input(const cf::Program& p, const std::string& bits);

/// Printed forms, sorted.
std::set<std::string> printed(const std::vector<cf::Term>& terms);

/// Documented results: lines `-- expect "<bits>": {a, b}`.
struct Expectation {
  std::string bits;
  std::set<std::string> results;
};
std::vector<Expectation> expectations(const std::string& source);

/// Random well-typed cons-free programs over bool and list with a
/// `start : list => bool` entry. Includes partial applications, function
/// arguments, products, overlapping rules and constructor rhs subterms taken
/// from the left-hand side.
class RandomProgramGenerator {
 public:
  explicit RandomProgramGenerator(std::uint64_t seed) : rng_(seed) {}
  std::string generate();

 private:
  struct Symbol {
    std::string name;
    std::vector<std::string> params;
    std::string result;  // after the params
  };
  struct Binding {
    std::string text;
    std::string type;
  };

  std::string rhs(const std::string& type, int depth,
                  const std::vector<Binding>& env);
  std::string pattern(const std::string& type, std::vector<Binding>& env,
                      int& fresh, int depth);
  std::string leaf(const std::string& type, const std::vector<Binding>& env);
  std::string pick(const std::vector<std::string>& v);
  bool chance(double p);

  std::mt19937_64 rng_;
  std::vector<Symbol> symbols_;
};

}  // namespace cftest
