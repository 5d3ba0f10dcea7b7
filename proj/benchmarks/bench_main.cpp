#include <benchmark/benchmark.h>

#include <random>

#include "secjam/harness.hpp"
#include "secjam/maxmin.hpp"
#include "secjam/rate_max.hpp"
#include "secjam/waterfill.hpp"

using namespace secjam;

namespace {

ScenarioConfig scenario(std::size_t users, std::size_t subcarriers) {
  ScenarioConfig cfg;
  cfg.num_users = users;
  cfg.num_subcarriers = subcarriers;
  cfg.source_budget = db_to_power(15.0, 1.0);
  cfg.jammer_budget = db_to_power(6.0, 1.0);
  cfg.rng_seed = 1;
  return cfg;
}

void BM_Waterfill(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.05, 3.0);
  std::vector<WaterfillItem> items(static_cast<std::size_t>(state.range(0)));
  for (auto& it : items) {
    it.eta = u(rng);
    it.nu = u(rng);
  }
  for (auto _ : state) benchmark::DoNotOptimize(secure_waterfill(items, 10.0));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Waterfill)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_Scheme(benchmark::State& state, const char* name) {
  const auto cfg = scenario(8, static_cast<std::size_t>(state.range(0)));
  const auto ch = generate_channels(cfg);
  for (auto _ : state) benchmark::DoNotOptimize(run_scheme(name, ch, cfg));
}
BENCHMARK_CAPTURE(BM_Scheme, jpa, "jpa")->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Scheme, jpaso, "jpaso")->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Scheme, oda, "oda")->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Scheme, pfa, "pfa")->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
