#include <benchmark/benchmark.h>

#include "edlab/evolve.hpp"

namespace {

void BM_CrankNicolsonStep(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const edlab::Grid1D grid = edlab::Grid1D::centered(0.02, n);
    const edlab::UnitSystem units;
    const auto psi0 = edlab::wave::gaussian_packet(grid, 0.0, 0.8, 0.0);
    const auto v = edlab::wave::ScalarField::zero();
    for (auto _ : state) {
        auto r = edlab::wave::evolve(psi0, v, units, 1e-4, 64, 64);
        benchmark::DoNotOptimize(r.states.back().amp.data());
    }
    state.SetItemsProcessed(state.iterations() * 64 * static_cast<int64_t>(n));
}
BENCHMARK(BM_CrankNicolsonStep)->Arg(512)->Arg(2048)->Arg(8192);

void BM_GaugedStep(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const edlab::Grid1D grid = edlab::Grid1D::centered(0.02, n);
    const edlab::UnitSystem units;
    const auto psi0 = edlab::wave::gaussian_packet(grid, 0.0, 0.8, 1.0);
    edlab::wave::GaugeField g;
    g.beta = 0.5;
    g.A = edlab::wave::ScalarField::constant(1.0);
    for (auto _ : state) {
        auto r = edlab::wave::evolve_gauged(psi0, g, units, 1e-4, 64, 64);
        benchmark::DoNotOptimize(r.states.back().amp.data());
    }
    state.SetItemsProcessed(state.iterations() * 64 * static_cast<int64_t>(n));
}
BENCHMARK(BM_GaugedStep)->Arg(2048);

} // namespace
