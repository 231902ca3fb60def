#include <doctest.h>

#include <cmath>
#include <numbers>

#include "edlab/rng.hpp"
#include "edlab/sampler.hpp"

using namespace edlab;
using namespace edlab::sampler;

namespace {

wave::EvolutionResult free_packet_fields(double dx, std::size_t n, double dt,
                                         std::size_t steps, std::size_t ce) {
    const Grid1D g = Grid1D::centered(dx, n);
    const UnitSystem units;
    const auto psi0 = wave::gaussian_packet(g, 0.0, 1.0, 0.0);
    return wave::evolve(psi0, wave::ScalarField::zero(), units, dt, steps, ce);
}

} // namespace

TEST_CASE("single-step moments match the drift and fluctuation statistics") {
    const Grid1D g = Grid1D::centered(0.02, 2048);
    const UnitSystem units;
    const auto psi = wave::gaussian_packet(g, 0.0, 1.0, 0.0);
    const wave::HydroFields fields = wave::decompose(psi, units);

    const double dt = 1e-3;
    const std::size_t n = 1000000;
    std::mt19937_64 rng = stream_rng(99, 0);

    double sum = 0.0, sum2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x0 = sample_initial_position(psi, rng);
        const double dx_step = sample_step(x0, fields, units, dt, rng) - x0;
        sum += dx_step;
        sum2 += dx_step * dx_step;
    }
    const double mean = sum / static_cast<double>(n);
    const double var = sum2 / static_cast<double>(n) - mean * mean;

    // A real state drifts nowhere on average; the variance is hbar dt / m.
    const double sigma_mean = std::sqrt(var / static_cast<double>(n));
    CHECK(std::abs(mean) <= 3.0 * sigma_mean);
    const double sigma_var = var * std::sqrt(2.0 / static_cast<double>(n));
    CHECK(std::abs(var - units.hbar * dt / units.mass) <= 3.0 * sigma_var + 3e-7);
}

TEST_CASE("plane-wave fields drift at hbar k / m") {
    const Grid1D g(0.0, 0.05, 512);
    const UnitSystem units;
    const double k = 2.0 * std::numbers::pi * 16.0 / g.length();
    const auto psi = wave::plane_wave(g, k);
    const wave::HydroFields fields = wave::decompose(psi, units);

    const double dt = 1e-3;
    const std::size_t n = 1000000;
    std::mt19937_64 rng = stream_rng(100, 0);
    double sum = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x0 = sample_initial_position(psi, rng);
        if (x0 < g.x_min + 1.0 || x0 > g.x_max() - 1.0) continue;  // mask edges
        sum += sample_step(x0, fields, units, dt, rng) - x0;
        ++used;
    }
    const double mean = sum / static_cast<double>(used);
    const double sigma_mean = std::sqrt(units.hbar * dt / units.mass / static_cast<double>(used));
    CHECK(std::abs(mean - k * dt) <= 3.0 * sigma_mean);
}

TEST_CASE("halving dt halves the step variance") {
    const Grid1D g = Grid1D::centered(0.02, 2048);
    const UnitSystem units;
    const auto psi = wave::gaussian_packet(g, 0.0, 1.0, 0.0);
    const wave::HydroFields fields = wave::decompose(psi, units);

    auto step_variance = [&](double dt, std::uint64_t seed) {
        const std::size_t n = 400000;
        std::mt19937_64 rng = stream_rng(seed, 0);
        double sum = 0.0, sum2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double x0 = sample_initial_position(psi, rng);
            const double d = sample_step(x0, fields, units, dt, rng) - x0;
            sum += d;
            sum2 += d * d;
        }
        const double mean = sum / static_cast<double>(n);
        return sum2 / static_cast<double>(n) - mean * mean;
    };
    const double v1 = step_variance(1e-3, 5);
    const double v2 = step_variance(5e-4, 6);
    CHECK(v1 / v2 == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("ensembles track the evolving density") {
    const auto fields = free_packet_fields(0.2, 200, 0.01, 100, 1);
    const UnitSystem units;

    SamplerConfig cfg;
    cfg.n_traj = 10000;
    cfg.dt = 1e-3;
    cfg.seed = 7;
    const TrajectoryEnsemble ens = run_ensemble(fields, units, cfg);
    const EnsembleComparison cmp = compare_ensemble(ens, fields);

    REQUIRE(cmp.l1.size() == 101);
    CHECK(ens.times.back() == doctest::Approx(1.0));
    for (double l : cmp.l1) CHECK(l <= 0.08);
    CHECK(ens.escaped_fraction() == 0.0);

    // Variance grows with the spreading packet.
    CHECK(cmp.moments.back().variance > cmp.moments.front().variance);
}

TEST_CASE("ensembles are deterministic and stream-independent") {
    const auto fields = free_packet_fields(0.2, 200, 0.01, 50, 1);
    const UnitSystem units;

    SamplerConfig big;
    big.n_traj = 200;
    big.dt = 1e-3;
    big.seed = 42;
    SamplerConfig small = big;
    small.n_traj = 80;

    const TrajectoryEnsemble a = run_ensemble(fields, units, big);
    const TrajectoryEnsemble b = run_ensemble(fields, units, big);
    const TrajectoryEnsemble c = run_ensemble(fields, units, small);

    for (std::size_t k = 0; k < a.positions.size(); ++k) {
        for (std::size_t j = 0; j < big.n_traj; ++j)
            CHECK(a.positions[k][j] == b.positions[k][j]);
        // Trajectory j does not depend on how many others were requested.
        for (std::size_t j = 0; j < small.n_traj; ++j)
            CHECK(a.positions[k][j] == c.positions[k][j]);
    }

    SamplerConfig other = big;
    other.seed = 43;
    const TrajectoryEnsemble d = run_ensemble(fields, units, other);
    CHECK(d.positions[1][0] != a.positions[1][0]);
}

TEST_CASE("sampler configuration is validated against the field spacing") {
    const auto fields = free_packet_fields(0.2, 200, 0.01, 50, 25);  // spacing 0.25
    const UnitSystem units;

    SamplerConfig bad;
    bad.n_traj = 10;
    bad.seed = 1;
    bad.dt = 0.2;  // does not divide 0.25
    CHECK_THROWS_AS(run_ensemble(fields, units, bad), ValidationError);
    bad.dt = 0.01;  // 25 sub-steps > 10
    CHECK_THROWS_AS(run_ensemble(fields, units, bad), ValidationError);
    bad.dt = 0.025;
    CHECK_NOTHROW(run_ensemble(fields, units, bad));
}

TEST_CASE("walls freeze trajectories and too many escapes invalidate the run") {
    // A tight box around a spreading packet loses mass quickly.
    const Grid1D g = Grid1D::centered(0.05, 128);  // spans about [-3.2, 3.2]
    const UnitSystem units;
    const auto psi0 = wave::gaussian_packet(g, 0.0, 0.5, 0.0);
    const auto fields = wave::evolve(psi0, wave::ScalarField::zero(), units, 0.01, 200, 20);

    SamplerConfig cfg;
    cfg.n_traj = 2000;
    cfg.dt = 0.02;
    cfg.seed = 11;
    cfg.escape_limit = 1e-6;
    CHECK_THROWS_AS(run_ensemble(fields, units, cfg), ValidationError);

    cfg.escape_limit = 1.0;
    const TrajectoryEnsemble ens = run_ensemble(fields, units, cfg);
    CHECK(ens.escaped_fraction() > 0.0);
    for (std::size_t k = 0; k < ens.positions.size(); ++k)
        for (std::size_t j = 0; j < cfg.n_traj; ++j) {
            CHECK(ens.positions[k][j] >= g.x_min - 0.5 * g.dx);
            CHECK(ens.positions[k][j] <= g.x_max() + 0.5 * g.dx);
        }
}

TEST_CASE("initial positions histogram to the initial density") {
    const auto fields = free_packet_fields(0.2, 200, 0.01, 10, 10);
    const UnitSystem units;
    SamplerConfig cfg;
    cfg.n_traj = 20000;
    cfg.dt = 0.01;
    cfg.seed = 3;
    const TrajectoryEnsemble ens = run_ensemble(fields, units, cfg);
    const auto h = checkpoint_histogram(ens, 0, fields.states[0].grid);
    std::vector<double> target(h.size());
    const auto rho = fields.states[0].density();
    for (std::size_t i = 0; i < h.size(); ++i) target[i] = rho[i] * 0.2;
    CHECK(l1_distance(h, target) <= 0.05);
}
