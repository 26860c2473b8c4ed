#include <benchmark/benchmark.h>

#include "coalsim/baselines.hpp"

using namespace coalsim;

namespace {

Scenario make_scenario(int n_d2d, int channels, std::uint64_t seed) {
  RadioParams p;
  return generate_scenario(p, 3, 5, n_d2d, channels, seed);
}

void BM_RateModelBuild(benchmark::State& state) {
  const Scenario s = make_scenario(static_cast<int>(state.range(0)), 5, 17);
  for (auto _ : state) {
    RateModel model(s, Duplex::FD);
    benchmark::DoNotOptimize(model.noise());
  }
}
BENCHMARK(BM_RateModelBuild)->Arg(15)->Arg(30)->Arg(70);

void BM_CoalitionRate(benchmark::State& state) {
  const Scenario s = make_scenario(30, 5, 17);
  const RateModel model(s, Duplex::FD);
  Rng rng(3);
  const Partition p = random_feasible_partition(s, Duplex::FD, rng);
  const std::vector<LinkId> members = p.members_of(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(model.coalition_rate(members));
}
BENCHMARK(BM_CoalitionRate);

void BM_GameRun(benchmark::State& state) {
  const Scenario s = make_scenario(static_cast<int>(state.range(0)), 5, 17);
  GameConfig cfg;
  cfg.seed = 5;
  const CoalitionGame game(s, cfg);
  for (auto _ : state) {
    const GameResult r = game.run();
    benchmark::DoNotOptimize(r.attempts);
  }
}
BENCHMARK(BM_GameRun)->Arg(15)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_ExhaustiveOptimal(benchmark::State& state) {
  const Scenario s = make_scenario(static_cast<int>(state.range(0)), 3, 17);
  GameConfig cfg;
  for (auto _ : state) {
    const Partition p = exhaustive_optimal(s, cfg, true);
    benchmark::DoNotOptimize(p.channel.data());
  }
}
BENCHMARK(BM_ExhaustiveOptimal)->Arg(4)->Arg(6)->Arg(8)
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
