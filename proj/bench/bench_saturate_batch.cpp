#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "cf/programgen.hpp"
#include "cf/saturation.hpp"
#include "cf/syntax.hpp"

namespace {

const cf::Program& parity() {
  static const cf::Program p = [] {
    std::ifstream in(std::string(CF_MACHINES_DIR) + "/parity.tm");
    std::stringstream text;
    text << in.rdbuf();
    return cf::compile_tm(cf::parse_tm(text.str()), cf::gen_lin_count());
  }();
  return p;
}

// Every bitstring of the given length, as list inputs.
std::vector<std::vector<cf::Term>> queries(unsigned length) {
  std::vector<std::vector<cf::Term>> out;
  for (unsigned mask = 0; mask < (1u << length); ++mask) {
    std::string list;
    for (unsigned i = 0; i < length; ++i) list += (mask >> i & 1 ? "true :: " : "false :: ");
    out.push_back({cf::parse_term(parity().symbols(), list + "[]")});
  }
  return out;
}

void BM_SaturateBatch(benchmark::State& state) {
  auto qs = queries(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cf::saturate_batch(parity(), "start", qs));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(qs.size()));
}

void BM_SaturateBatchSerial(benchmark::State& state) {
  auto qs = queries(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cf::saturate_batch_serial(parity(), "start", qs));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(qs.size()));
}

BENCHMARK(BM_SaturateBatch)->DenseRange(2, 4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SaturateBatchSerial)->DenseRange(2, 4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
