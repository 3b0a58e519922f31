// Serial reference loops against the OpenMP kernels.
#include <benchmark/benchmark.h>

#include <random>

#include "mmskit/bobw.hpp"
#include "mmskit/bounds.hpp"
#include "mmskit/oracle.hpp"

using namespace mmskit;

namespace {

Execution mode(const benchmark::State& state) { return state.range(0) == 0 ? Execution::Serial : Execution::Parallel; }

void label(benchmark::State& state) { state.SetLabel(state.range(0) == 0 ? "serial" : "parallel"); }

Instance random_instance(int agents, int goods, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> value(1, 40);
  Instance inst(agents, goods);
  for (AgentId a = 0; a < agents; ++a)
    for (GoodId g = 0; g < goods; ++g) inst.set_value(a, g, value(rng));
  return inst;
}

/// Identical agents with 3n goods worth 1/3 each.
Instance flat_instance(int n) {
  std::vector<Rational> row(3 * n, make_rational(1, 3));
  return Instance::from_rows(std::vector<std::vector<Rational>>(n, row));
}

void BM_MmsAllAgents(benchmark::State& state) {
  auto inst = random_instance(8, 18, 7);
  for (auto _ : state) benchmark::DoNotOptimize(mms_all_agents(inst, 5, {}, mode(state)));
  label(state);
}

void BM_GammaSweep(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bound_sweep(BoundKind::Gamma, 1, 2000, mode(state)));
  label(state);
}

void BM_Hard2Sweep(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bound_sweep(BoundKind::Hard2, 2, 2000, mode(state)));
  label(state);
}

void BM_Rotations(benchmark::State& state) {
  auto inst = flat_instance(24);
  auto taus = thresholds_thm46(24);
  RbfOptions opts;
  opts.check_normalized = false;
  for (auto _ : state) benchmark::DoNotOptimize(cyclic_rotation_distribution(inst, taus, opts, mode(state)));
  label(state);
}

}  // namespace

BENCHMARK(BM_MmsAllAgents)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GammaSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Hard2Sweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Rotations)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
