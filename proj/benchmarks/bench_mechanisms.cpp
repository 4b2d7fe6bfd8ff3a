#include <benchmark/benchmark.h>

#include "bfhire/mechanism.hpp"
#include "bfhire/sim.hpp"
#include "bfhire/tbc.hpp"
#include "bfhire/verify.hpp"

namespace {

using namespace bfhire;

Instance instance_of_size(std::int64_t n, std::int64_t budget) {
  GeneratorConfig cfg;
  cfg.n = static_cast<std::size_t>(n);
  cfg.seed = 1;
  cfg.hospital_budget = Money(budget);
  cfg.patient_budget = Money(budget);
  return generate_instance(cfg);
}

void BM_Generate(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(instance_of_size(state.range(0), 100));
}
BENCHMARK(BM_Generate)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void run_kind(benchmark::State& state, MechanismKind kind) {
  const Instance inst = instance_of_size(state.range(0), state.range(1));
  const BidProfile bids = BidProfile::truthful(inst);
  for (auto _ : state) benchmark::DoNotOptimize(run_mechanism({kind, 1}, inst, bids));
  state.SetComplexityN(state.range(0));
}

void BM_Tbc(benchmark::State& state) { run_kind(state, MechanismKind::Tbc); }
void BM_NoTbc(benchmark::State& state) { run_kind(state, MechanismKind::NoTbc); }
void BM_Random(benchmark::State& state) { run_kind(state, MechanismKind::Random); }

// m grows with the budget held large enough to keep many leaders in play.
BENCHMARK(BM_Tbc)->ArgsProduct({{125, 250, 500, 1000}, {1000}})->Unit(benchmark::kMillisecond)->Complexity();
BENCHMARK(BM_NoTbc)->ArgsProduct({{125, 250, 500, 1000}, {1000}})->Unit(benchmark::kMillisecond)->Complexity();
BENCHMARK(BM_Random)->ArgsProduct({{200, 1000}, {1000}})->Unit(benchmark::kMicrosecond);

void BM_LeaderThreshold(benchmark::State& state) {
  const Instance inst = instance_of_size(state.range(0), 1000);
  const BidProfile bids = BidProfile::truthful(inst);
  for (auto _ : state) benchmark::DoNotOptimize(tbc_li_threshold(inst, bids, EcId{1}));
}
BENCHMARK(BM_LeaderThreshold)->Arg(200)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_DeviationSearch(benchmark::State& state) {
  const Instance inst = generate_suite_instance(3, 8);
  for (auto _ : state)
    benchmark::DoNotOptimize(deviation_search(inst, {MechanismKind::Tbc, 3}, EcId{1}));
}
BENCHMARK(BM_DeviationSearch)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
