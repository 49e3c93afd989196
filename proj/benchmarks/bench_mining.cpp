#include <benchmark/benchmark.h>

#include "psph/miner.hpp"
#include "psph/synth.hpp"

using namespace psph;

namespace {

SequenceDatabase corpus(std::size_t rows) {
  SynthSpec spec;
  spec.rows = rows;
  spec.alphabet_size = 26;
  spec.letter_exponent = 0.0;
  spec.min_length = 12;
  spec.max_length = 30;
  spec.vocabulary = 200;
  return synth(spec);
}

void BM_Mine(benchmark::State& state, PatternMode mode, BackScan pruning) {
  const auto db = corpus(static_cast<std::size_t>(state.range(0)));
  MinerConfig cfg;
  cfg.minsup = Minsup::parse("5%");
  cfg.mode = mode;
  cfg.pruning = pruning;
  std::size_t n = 0;
  for (auto _ : state) {
    auto ps = mine(db, cfg);
    n = ps.size();
    benchmark::DoNotOptimize(ps);
  }
  state.counters["patterns"] = static_cast<double>(n);
}

}  // namespace

BENCHMARK_CAPTURE(BM_Mine, positional, PatternMode::kPositional, BackScan::kOn)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Mine, positional_no_backscan, PatternMode::kPositional, BackScan::kOff)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Mine, regular, PatternMode::kRegular, BackScan::kOn)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
