#include <benchmark/benchmark.h>

#include "edlab/sampler.hpp"

namespace {

using namespace edlab;

void BM_EnsembleSteps(benchmark::State &state) {
    const Grid1D grid = Grid1D::centered(0.1, 400);
    const UnitSystem units;
    const auto psi0 = wave::gaussian_packet(grid, 0.0, 1.0, 0.0);
    const auto traj = wave::evolve(psi0, wave::ScalarField::zero(), units, 0.01, 50, 10);

    sampler::SamplerConfig cfg;
    cfg.n_traj = static_cast<std::size_t>(state.range(0));
    cfg.dt = 0.01;
    cfg.seed = 7;
    for (auto _ : state) {
        auto ens = sampler::run_ensemble(traj, units, cfg);
        benchmark::DoNotOptimize(ens.positions.back().data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * 50);
}
BENCHMARK(BM_EnsembleSteps)->Arg(1000)->Arg(10000);

} // namespace
