// Microbenchmarks for the hot paths: the exact solver, the lookahead
// heuristic, the validator, and model emission, on generated instances of
// honest (small) sizes so the numbers are comparable run to run.

#include <benchmark/benchmark.h>

#include "wove/emitter.hpp"
#include "wove/exact.hpp"
#include "wove/heuristic.hpp"
#include "wove/scenario.hpp"
#include "wove/validator.hpp"

using namespace wove;

namespace {

Instance make_instance(int nodes, std::uint64_t seed) {
  ScenarioConfig cfg;
  cfg.node_count = nodes;
  cfg.seed = seed;
  return generate_instance(cfg);
}

void BM_exact(benchmark::State& state) {
  const Instance inst = make_instance(static_cast<int>(state.range(0)), 301);
  for (auto _ : state) {
    const SolveResult r = solve_exact(inst.net, inst.app, {});
    benchmark::DoNotOptimize(r.status);
  }
}
BENCHMARK(BM_exact)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_heuristic(benchmark::State& state) {
  const Instance inst = make_instance(static_cast<int>(state.range(0)), 301);
  HeuristicParams hp;
  hp.level = 1;
  hp.k = 3;
  hp.max_path_hops = 3;
  for (auto _ : state) {
    const HeuristicResult r = solve_heuristic(inst.net, inst.app, hp);
    benchmark::DoNotOptimize(r.status);
  }
}
BENCHMARK(BM_heuristic)->Arg(6)->Arg(10)->Arg(14)
    ->Unit(benchmark::kMillisecond);

void BM_validate(benchmark::State& state) {
  const Instance inst = make_instance(4, 401);
  const SolveResult r = solve_exact(inst.net, inst.app, {});
  for (auto _ : state) {
    const ValidationReport rep =
        validate(*r.solution, inst.net, inst.app, Mode::relaxed);
    benchmark::DoNotOptimize(rep.ok);
  }
}
BENCHMARK(BM_validate)->Unit(benchmark::kMicrosecond);

void BM_build_model(benchmark::State& state) {
  const Instance inst = make_instance(static_cast<int>(state.range(0)), 301);
  EmitterOptions opts;
  for (auto _ : state) {
    const ConstraintModel m = build_model(inst.net, inst.app, opts);
    benchmark::DoNotOptimize(m.constraints.size());
  }
}
BENCHMARK(BM_build_model)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
