#include <benchmark/benchmark.h>

#include "edlab/maxent.hpp"

namespace {

using namespace edlab;
using namespace edlab::inference;

void BM_MaxEntGaussian(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Grid1D grid = Grid1D::centered(16.0 / static_cast<double>(n), n);
    const Distribution prior = Distribution::uniform_grid(grid);
    ConstraintSet cs;
    cs.moments.push_back(MomentConstraint::of(prior, [](double x) { return x; }, 0.0, "mean"));
    cs.moments.push_back(
        MomentConstraint::of(prior, [](double x) { return x * x; }, 1.0, "second"));
    for (auto _ : state) {
        auto sol = maximize_entropy(prior, cs);
        benchmark::DoNotOptimize(sol.log_partition);
    }
}
BENCHMARK(BM_MaxEntGaussian)->Arg(256)->Arg(1024)->Arg(4096);

} // namespace
