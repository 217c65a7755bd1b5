// Engine and construction throughput on the catalog machines. Word inputs
// are fixed so runs are comparable across revisions.

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "wtl/constructions.hpp"
#include "wtl/engine.hpp"
#include "wtl/format.hpp"
#include "wtl/langlib.hpp"
#include "wtl/valc.hpp"

namespace {

wtl::Automaton fixture(const std::string& name) {
  return *wtl::load_automaton(wtl::fixture_text(name)).automaton;
}

wtl::Word chars(const std::string& s) {
  wtl::Word w;
  for (char c : s) w.emplace_back(1, c);
  return w;
}

void BM_CompileEngine(benchmark::State& state) {
  auto aut = fixture("exa21");
  for (auto _ : state) {
    wtl::Engine eng(aut);
    benchmark::DoNotOptimize(&eng);
  }
}
BENCHMARK(BM_CompileEngine);

void BM_AcceptNondeterministic(benchmark::State& state) {
  wtl::Engine eng(fixture("exa21"));
  auto w = chars("bab#abab#");
  for (auto _ : state) benchmark::DoNotOptimize(eng.accepts(w));
}
BENCHMARK(BM_AcceptNondeterministic);

void BM_AcceptDeterministic(benchmark::State& state) {
  wtl::Engine eng(fixture("m_abc_counts"));
  auto w = chars("abcabcabcabcabcabcabcabcabcabc");
  for (auto _ : state) benchmark::DoNotOptimize(eng.accepts(w));
}
BENCHMARK(BM_AcceptDeterministic);

void BM_DeterministicTrace(benchmark::State& state) {
  wtl::Engine eng(fixture("m_abc_counts"));
  auto w = chars("abcabcabcabcabcabcabcabcabcabc");
  for (auto _ : state) {
    auto v = eng.run_deterministic(w);
    benchmark::DoNotOptimize(v.trace.size());
  }
}
BENCHMARK(BM_DeterministicTrace);

void BM_Enumerate(benchmark::State& state) {
  wtl::Engine eng(fixture("m_l1"));
  for (auto _ : state) {
    auto words = eng.enumerate(static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(words.size());
  }
}
BENCHMARK(BM_Enumerate)->Arg(4)->Arg(6);

void BM_SubsetSimulation(benchmark::State& state) {
  auto aut = fixture("exa21");
  for (auto _ : state) {
    auto npda = wtl::letter_equivalent_npda(aut);
    benchmark::DoNotOptimize(npda.states.size());
  }
}
BENCHMARK(BM_SubsetSimulation);

void BM_ComplementBuild(benchmark::State& state) {
  auto lba = *wtl::load_lba(wtl::toy_lba_text()).lba;
  for (auto _ : state) {
    auto m = wtl::build_invalc(lba);
    benchmark::DoNotOptimize(m.states.size());
  }
}
BENCHMARK(BM_ComplementBuild);

void BM_ComplementReject(benchmark::State& state) {
  auto lba = *wtl::load_lba(wtl::toy_lba_text()).lba;
  wtl::Engine eng(wtl::build_invalc(lba));
  auto valid = *wtl::valc_generate(lba, chars("ab"));
  for (auto _ : state) benchmark::DoNotOptimize(eng.accepts(valid));
}
BENCHMARK(BM_ComplementReject);

}  // namespace

BENCHMARK_MAIN();
