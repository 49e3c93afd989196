#include <benchmark/benchmark.h>

#include "psph/estimator.hpp"
#include "psph/synth.hpp"
#include "psph/workload.hpp"

using namespace psph;

namespace {

struct Fixture {
  SequenceDatabase db;
  Histogram h;
  std::vector<LikePredicate> group1, group2;

  Fixture() {
    SynthSpec spec;
    spec.rows = 2000;
    spec.alphabet_size = 26;
    spec.letter_exponent = 0.0;
    spec.min_length = 12;
    spec.max_length = 30;
    spec.vocabulary = 200;
    db = synth(spec);
    MinerConfig cfg;
    cfg.minsup = Minsup::parse("5%");
    const auto kept = eliminate_redundant(mine(db, cfg), {}, db.size()).kept;
    h = build_histogram(kept, 2048, {db.size(), cfg.minsup.resolve(db.size()), 10.0});
    WorkloadSpec ws;
    group1 = gen_group1(db, ws);
    group2 = gen_group2(db, ws);
  }
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

void BM_Estimate(benchmark::State& state, int group, bool partition) {
  const auto& f = fixture();
  const Estimator est(f.h);
  const auto& qs = group == 1 ? f.group1 : f.group2;
  EstimatorConfig cfg;
  cfg.partitioning_enabled = partition;
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(est.estimate(qs[i++ % qs.size()], cfg));
  }
  state.counters["buckets"] = static_cast<double>(f.h.buckets.size());
}

}  // namespace

BENCHMARK_CAPTURE(BM_Estimate, group1, 1, true)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_Estimate, group2, 2, true)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_Estimate, group2_no_partition, 2, false)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
