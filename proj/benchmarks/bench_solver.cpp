// Microbenchmarks for the hot paths: single edge updates, full iterations
// in sequential vs parallel mode, schedule construction, and the dual
// evaluation that dominates checkpointing overhead.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "minsum/dual.hpp"
#include "minsum/engine.hpp"
#include "minsum/generate.hpp"
#include "minsum/model.hpp"
#include "minsum/schedule.hpp"
#include "minsum/updates.hpp"

namespace {

using namespace minsum;

aggregated_cost make_aggregate(int labels, std::uint64_t seed) {
  splitmix64 rng(seed);
  aggregated_cost g;
  g.rows = labels;
  g.cols = labels;
  g.g.resize(static_cast<std::size_t>(labels) * labels);
  for (double& x : g.g)
    x = rng.uniform();
  return g;
}

void BM_update(benchmark::State& state, update_rule rule) {
  const auto g = make_aggregate(static_cast<int>(state.range(0)), 9);
  for (auto _ : state)
    benchmark::DoNotOptimize(run_update(rule, g));
  state.SetItemsProcessed(state.iterations());
}

void BM_iteration(benchmark::State& state, solve_mode mode) {
  const auto m = gen_complete(30, 8, 3);
  const auto sched = compute_schedule(m);
  const int workers = static_cast<int>(state.range(0));
  auto s = init_reparam(m);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        run_iteration(s, m, sched, update_rule::handshake, mode, workers));
  state.SetItemsProcessed(state.iterations() * m.num_edges());
}

void BM_schedule(benchmark::State& state) {
  const auto m = gen_complete(static_cast<int>(state.range(0)), 2, 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(compute_schedule(m));
}

void BM_dual(benchmark::State& state) {
  const auto m = gen_complete(30, 8, 3);
  const auto s = init_reparam(m);
  for (auto _ : state)
    benchmark::DoNotOptimize(dual_value(s));
}

}  // namespace

BENCHMARK_CAPTURE(BM_update, uniform, update_rule::uniform)
    ->Arg(8)
    ->Arg(32);
BENCHMARK_CAPTURE(BM_update, mplp, update_rule::mplp)->Arg(8)->Arg(32);
BENCHMARK_CAPTURE(BM_update, handshake, update_rule::handshake)
    ->Arg(8)
    ->Arg(32);

BENCHMARK_CAPTURE(BM_iteration, sequential, solve_mode::sequential)->Arg(1);
BENCHMARK_CAPTURE(BM_iteration, parallel, solve_mode::parallel)
    ->Arg(2)
    ->Arg(4)
    ->Arg(8);

BENCHMARK(BM_schedule)->Arg(30)->Arg(100);
BENCHMARK(BM_dual);

BENCHMARK_MAIN();
