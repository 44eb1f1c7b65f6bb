#include <random>

#include <benchmark/benchmark.h>

#include "cyclewalk/density.hpp"
#include "cyclewalk/evolution.hpp"
#include "cyclewalk/homology.hpp"
#include "cyclewalk/presets.hpp"
#include "cyclewalk/spectral.hpp"

namespace {

using namespace cyclewalk;

WalkState random_state(const ArcSpace& space, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  WalkState st = WalkState::zero(space);
  for (cplx& a : st.amps) a = cplx{g(rng), g(rng)};
  st.normalize();
  return st;
}

// Dense state that never reaches the window boundary (every vertex sum
// vanishes), so the kernel can be timed for an unbounded number of steps.
// The per-step cost does not depend on the amplitude values.
WalkState trapped_superposition(const ArcSpace& space, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 6.28318);
  WalkState st = WalkState::zero(space);
  for (std::int32_t j = -space.radius(); j <= space.radius(); ++j)
    for (int m = 0; m < 4; ++m) {
      const std::array<cplx, 10> comp = eta_coin_components(m);
      const cplx phase = std::polar(1.0, u(rng));
      for (int c = 1; c <= 8; ++c)
        st.amps[static_cast<std::size_t>(space.coin_arc(c, j))] +=
            phase * comp[static_cast<std::size_t>(c)];
    }
  st.normalize();
  return st;
}

void BM_Step(benchmark::State& state) {
  const ArcSpace space = ArcSpace::build(GraphKind::C4Prime, static_cast<int>(state.range(0)));
  Evolution ev(space);
  WalkState st = trapped_superposition(space, 5);
  for (auto _ : state) {
    ev.step(st);
    benchmark::DoNotOptimize(st.amps.data());
  }
  state.SetItemsProcessed(state.iterations() * space.arc_count());
}
BENCHMARK(BM_Step)->Arg(64)->Arg(512)->Arg(4096)->Arg(32768);

void BM_LongRun(benchmark::State& state) {
  const std::int64_t t_max = state.range(0);
  for (auto _ : state) {
    const ArcSpace space =
        ArcSpace::build(GraphKind::C4Prime, static_cast<int>(t_max) + 2);
    Evolution ev(space);
    WalkState st = make_coin_state(space, preset_amplitudes("fig3b"));
    ev.run_steps(st, t_max);
    benchmark::DoNotOptimize(st.amps.data());
  }
}
BENCHMARK(BM_LongRun)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_BandSweep(benchmark::State& state) {
  const int grid = static_cast<int>(state.range(0));
  for (auto _ : state) {
    double acc = 0.0;
    for (int i = 0; i < grid; ++i) {
      const double k = -3.0 + 6.0 * i / grid;
      for (int j = 0; j < 3; ++j) acc += velocity(j, 0, k);
    }
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * grid * 3);
}
BENCHMARK(BM_BandSweep)->Arg(4096)->Arg(65536);

void BM_WeakLimit(benchmark::State& state) {
  const ArcSpace space = ArcSpace::build(GraphKind::C4Prime, 2);
  const WalkState st = random_state(space, 7);
  const int grid = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const LimitLaw law = weak_limit(st, grid);
    benchmark::DoNotOptimize(law.delta());
  }
}
BENCHMARK(BM_WeakLimit)->Arg(2048)->Arg(16384)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
