#include <benchmark/benchmark.h>

#include "sliceadm/opportunity_cost.hpp"
#include "sliceadm/oracle.hpp"
#include "sliceadm/simulator.hpp"

using namespace sliceadm;

namespace {

Instance toy(int horizon, ContractMode mode) {
  Instance in;
  in.space = ResourceSpace(1, 100);
  in.initial_pool = ResourceVector(std::vector<int>{100});
  std::vector<CatalogEntry> entries;
  std::vector<double> weights;
  for (int T = 1; T <= 3; ++T) {
    entries.push_back({ResourceVector(std::vector<int>{40}), T, 2.0});
    entries.push_back({ResourceVector(std::vector<int>{60}), T, 3.0});
    weights.insert(weights.end(), {0.1, 0.2 / 3});
  }
  in.catalog = Catalog(entries);
  in.demand = RequestDistribution(in.catalog, weights, 0.5);
  in.econ = EconomicParams{0.9, {4.0}};
  in.mode = mode;
  in.horizon = horizon;
  in.validate();
  return in;
}

bool always(const MarketState&, const Request&) { return true; }

void BM_OcMonteCarlo(benchmark::State& state) {
  const auto in = toy(static_cast<int>(state.range(0)), ContractMode::non_expiring);
  const Request r{0, ResourceVector(std::vector<int>{40}), 1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(oc_monte_carlo(in, in.initial_state(), r, always, 1000, RandomStream(1, 1)));
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_OcMonteCarlo)->Arg(6)->Arg(20)->Arg(50);

void BM_OcEnumeration(benchmark::State& state) {
  const auto in = toy(static_cast<int>(state.range(0)), ContractMode::non_expiring);
  const Request r{0, ResourceVector(std::vector<int>{40}), 1};
  for (auto _ : state) benchmark::DoNotOptimize(oc_exact_enumeration(in, in.initial_state(), r, always));
}
BENCHMARK(BM_OcEnumeration)->Arg(4)->Arg(6)->Arg(8);

void BM_RunAlwaysAccept(benchmark::State& state) {
  const auto in = toy(static_cast<int>(state.range(0)), ContractMode::expiring);
  const auto s = Strategy::always_accept();
  std::uint64_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run(in, s, RandomStream(7, k++), false).result.profit);
}
BENCHMARK(BM_RunAlwaysAccept)->Arg(10)->Arg(100)->Arg(1000);

void BM_DpSolve(benchmark::State& state) {
  const auto mode = state.range(1) ? ContractMode::expiring : ContractMode::non_expiring;
  const auto in = toy(static_cast<int>(state.range(0)), mode);
  for (auto _ : state) benchmark::DoNotOptimize(dp_solve(in).v0());
}
BENCHMARK(BM_DpSolve)->Args({6, 1})->Args({50, 0});

}  // namespace

BENCHMARK_MAIN();
