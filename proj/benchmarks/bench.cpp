#include <benchmark/benchmark.h>

#include "slowcav/cavity.hpp"
#include "slowcav/kk.hpp"
#include "slowcav/profile.hpp"

using namespace slowcav;

namespace {

AbsorptionProfile window_profile(double span_hz) {
    auto bg = build_background(BackgroundShape::flat, 3750.0, 0.0, span_hz);
    return burn_hole(bg, {0.0, 1e6, 0.0, 0.0});
}

void bm_kk_analytic(benchmark::State& state) {
    const auto prof = window_profile(40e6);
    FrequencyGrid grid(default_carrier_hz, 40e6, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto disp = kk_analytic(prof, grid);
        benchmark::DoNotOptimize(disp.delta_n.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_kk_analytic)->Arg(1 << 12)->Arg(1 << 16);

void bm_kk_numeric(benchmark::State& state) {
    const auto prof = window_profile(40e6);
    FrequencyGrid grid(default_carrier_hz, 40e6, static_cast<std::size_t>(state.range(0)));
    const auto samples = prof.sample(grid);
    for (auto _ : state) {
        auto disp = kk_numeric(samples, grid);
        benchmark::DoNotOptimize(disp.delta_n.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_kk_numeric)->Arg(1 << 12)->Arg(1 << 16);

void bm_transfer(benchmark::State& state) {
    const auto prof = window_profile(40e6);
    FrequencyGrid grid(default_carrier_hz, 40e6, static_cast<std::size_t>(state.range(0)));
    const auto samples = prof.sample(grid);
    const auto disp = kk_analytic(prof, grid);
    CavityConfig cfg;
    for (auto _ : state) {
        auto ft = transfer(cfg, samples, disp);
        benchmark::DoNotOptimize(ft.T.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_transfer)->Arg(1 << 12)->Arg(1 << 16);

void bm_find_modes(benchmark::State& state) {
    const auto prof = window_profile(40e6);
    FrequencyGrid grid(default_carrier_hz, 40e6, static_cast<std::size_t>(state.range(0)));
    const auto ft = transfer(CavityConfig{}, prof.sample(grid), kk_analytic(prof, grid));
    for (auto _ : state) {
        auto modes = find_modes(ft);
        benchmark::DoNotOptimize(modes.rows.data());
    }
}
BENCHMARK(bm_find_modes)->Arg(1 << 16);

}  // namespace

BENCHMARK_MAIN();
