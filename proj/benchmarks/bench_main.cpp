#include <benchmark/benchmark.h>

#include "plr/benchgen.hpp"
#include "plr/engine.hpp"
#include "plr/saturation.hpp"

namespace {

using namespace plr;

OracleOntology synthetic(std::size_t classes) {
  SyntheticOracleParams p;
  p.classes = classes;
  p.height = 10;
  p.disjoint_pairs = classes / 20;
  Rng rng(1);
  return gen_synthetic_oracle(p, rng);
}

struct World {
  OracleOntology onto;
  GeneratedKB kb;
  Oracle oracle;
  Vocabulary vocab;

  explicit World(std::size_t classes) : onto(synthetic(classes)), kb(make_kb(onto)), oracle(Oracle::builtin(onto)) {
    vocab = {kb.roles, kb.properties, onto.concept_names()};
  }
  static GeneratedKB make_kb(const OracleOntology& o) {
    Rng rng(2);
    return gen_main_kb(KBParams::preset("K1"), o.concept_names(), rng);
  }

  std::vector<std::pair<FullConcept, FullConcept>> pairs(std::size_t ni, std::size_t count) const {
    PolicyParams pp = PolicyParams::preset("P1");
    pp.target_intervals = ni;
    const PolicyGenerator gen(kb.kb, oracle, vocab, pp);
    std::vector<std::pair<FullConcept, FullConcept>> out;
    for (std::size_t q = 0; q < count; ++q) {
      out.emplace_back(gen.business(q).policy, gen.consent(q, MutationParams::generalizing_only()).policy);
    }
    return out;
  }
};

const World& world() {
  static const World w(10'000);
  return w;
}

void BM_SaturationBuild(benchmark::State& state) {
  const OracleOntology onto = synthetic(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(SaturationIndex::build(onto));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SaturationBuild)->RangeMultiplier(4)->Range(256, 16384)->Unit(benchmark::kMillisecond);

void BM_OracleConjunctiveQuery(benchmark::State& state) {
  const World& w = world();
  const auto names = w.onto.concept_names();
  Rng rng(3);
  std::vector<OracleQuery> qs;
  for (int i = 0; i < 1024; ++i) {
    qs.emplace_back(std::vector<Symbol>{names[rng.index(names.size())], names[rng.index(names.size())]},
                    names[rng.index(names.size())]);
  }
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(w.oracle.query(qs[i++ % qs.size()]));
}
BENCHMARK(BM_OracleConjunctiveQuery);

void BM_SplitIntervals(benchmark::State& state) {
  const auto pairs = world().pairs(static_cast<std::size_t>(state.range(0)), 8);
  std::size_t i = 0, produced = 0;
  for (auto _ : state) {
    const auto& [lhs, rhs] = pairs[i++ % pairs.size()];
    produced += split_intervals(lhs, rhs).size();
  }
  state.counters["disjuncts"] = benchmark::Counter(static_cast<double>(produced), benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_SplitIntervals)->DenseRange(0, 4);

// One engine per run: later repetitions of a pair hit the caches.
void BM_CheckCached(benchmark::State& state) {
  const World& w = world();
  const auto pairs = w.pairs(static_cast<std::size_t>(state.range(0)), 50);
  const Engine e = Engine::build(w.kb.kb, w.oracle);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(e.check(pairs[i % pairs.size()].first, pairs[i % pairs.size()].second));
    ++i;
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_CheckCached)->DenseRange(0, 4);

// Caches cleared before every check.
void BM_CheckColdCache(benchmark::State& state) {
  const World& w = world();
  const auto pairs = w.pairs(static_cast<std::size_t>(state.range(0)), 50);
  Engine e = Engine::build(w.kb.kb, w.oracle);
  std::size_t i = 0;
  for (auto _ : state) {
    state.PauseTiming();
    e.clear_caches();
    state.ResumeTiming();
    benchmark::DoNotOptimize(e.check(pairs[i % pairs.size()].first, pairs[i % pairs.size()].second));
    ++i;
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_CheckColdCache)->DenseRange(0, 3);

void BM_CheckUncached(benchmark::State& state) {
  const World& w = world();
  const auto pairs = w.pairs(static_cast<std::size_t>(state.range(0)), 50);
  EngineConfig off;
  off.use_caches = false;
  const Engine e = Engine::build(w.kb.kb, w.oracle, off);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(e.check(pairs[i % pairs.size()].first, pairs[i % pairs.size()].second));
    ++i;
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_CheckUncached)->DenseRange(0, 3);

}  // namespace

BENCHMARK_MAIN();
