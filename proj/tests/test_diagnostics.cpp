#include <doctest.h>

#include <cmath>
#include <numbers>

#include "edlab/diagnostics.hpp"

using namespace edlab;
using namespace edlab::wave;

TEST_CASE("harmonic ground-state energy is hbar omega / 2") {
    const Grid1D g = Grid1D::centered(0.01, 1601);
    const UnitSystem units;
    const WaveFunction psi = harmonic_ground_state(g, units, 1.0);
    const ScalarField v = ScalarField::from_expression(Expression::parse("0.5*x^2"));
    CHECK(energy(psi, v, units) == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("free packet conserves energy") {
    const Grid1D g = Grid1D::centered(0.04, 1024);
    const UnitSystem units;
    const WaveFunction psi0 = gaussian_packet(g, 0.0, 1.0, 0.0);
    const EvolutionResult traj = evolve(psi0, ScalarField::zero(), units, 1e-3, 2000, 200);
    CHECK(energy_drift(traj, ScalarField::zero(), units) <= 1e-6);
    // E = <p^2>/2m = 1/(8 sigma0^2)
    CHECK(energy(traj.states.front(), ScalarField::zero(), units) ==
          doctest::Approx(0.125).epsilon(1e-6));
}

TEST_CASE("driven potential pumps energy at the predicted rate") {
    const Grid1D g = Grid1D::centered(0.02, 2048);
    const UnitSystem units;
    const WaveFunction psi0 = gaussian_packet(g, 2.0, 1.0, 0.0);
    const ScalarField v = ScalarField::from_expression(Expression::parse("x*t"));
    const EvolutionResult traj = evolve(psi0, v, units, 1e-3, 1000, 20);
    CHECK(driven_energy_mismatch(traj, v, units) <= 1e-4);
}

TEST_CASE("osmotic-mass scaling of the energy functional") {
    const Grid1D g = Grid1D::centered(0.02, 1024);
    const WaveFunction psi = gaussian_packet(g, 0.0, 1.0, 0.0);
    // k0 = 0: the kinetic energy is purely osmotic, so it scales with mu.
    const UnitSystem base(1.0, 1.0, 1.0);
    const UnitSystem doubled(1.0, 1.0, 2.0);
    const double e1 = energy(psi, ScalarField::zero(), base);
    const double e2 = energy(psi, ScalarField::zero(), doubled);
    CHECK(e2 == doctest::Approx(2.0 * e1).epsilon(1e-9));
}

TEST_CASE("stationary state has a tiny continuity residual") {
    const Grid1D g = Grid1D::centered(0.01, 1600);
    const UnitSystem units;
    const WaveFunction psi0 = harmonic_ground_state(g, units, 1.0);
    const ScalarField v = ScalarField::from_expression(Expression::parse("0.5*x^2"));
    const EvolutionResult traj = evolve(psi0, v, units, 1e-3, 400, 100);
    const auto res = fokker_planck_residual(traj, units);
    REQUIRE(res.size() == 3);
    // Only the discretization floor remains.
    for (double r : res) CHECK(r <= 2e-7);
}

TEST_CASE("continuity residual converges at second order") {
    const UnitSystem units;
    // Halving (dx, dt) also halves the checkpoint spacing the residual
    // differentiates across.
    auto run = [&](double dx, double dt) {
        const auto n = static_cast<std::size_t>(std::lround(32.0 / dx));
        const Grid1D g = Grid1D::centered(dx, n);
        const WaveFunction psi0 = gaussian_packet(g, 0.0, 1.0, 1.0);
        const auto steps = static_cast<std::size_t>(std::lround(1.0 / dt));
        const EvolutionResult traj =
            evolve(psi0, ScalarField::zero(), units, dt, steps, 50);
        const auto res = fokker_planck_residual(traj, units);
        double worst = 0.0;
        for (double r : res) worst = std::max(worst, r);
        return worst;
    };
    const double coarse = run(0.08, 2e-3);
    const double fine = run(0.04, 1e-3);
    const double ratio = coarse / fine;
    CHECK(ratio > 3.0);
    CHECK(ratio < 5.0);
}

TEST_CASE("random smooth state keeps a finite, refining residual") {
    const UnitSystem units;
    auto run = [&](double dx, double dt) {
        const auto n = static_cast<std::size_t>(std::lround(32.0 / dx));
        const Grid1D g = Grid1D::centered(dx, n);
        // Smooth two-packet superposition, renormalized.
        WaveFunction a = gaussian_packet(g, -1.0, 0.9, 0.7);
        const WaveFunction b = gaussian_packet(g, 1.2, 1.1, -0.4);
        for (std::size_t i = 0; i < a.size(); ++i) a.amp[i] = a.amp[i] + b.amp[i];
        a.normalize();
        const auto steps = static_cast<std::size_t>(std::lround(0.4 / dt));
        const EvolutionResult traj = evolve(a, ScalarField::zero(), units, dt, steps, 25);
        const auto res = fokker_planck_residual(traj, units);
        double worst = 0.0;
        for (double r : res) worst = std::max(worst, r);
        return worst;
    };
    const double coarse = run(0.08, 2e-3);
    const double fine = run(0.04, 1e-3);
    CHECK(std::isfinite(coarse));
    CHECK(fine < coarse);
}

TEST_CASE("stationary phase advances at minus E over hbar") {
    const Grid1D g = Grid1D::centered(0.005, 3200);
    const UnitSystem units;
    const WaveFunction psi0 = harmonic_ground_state(g, units, 1.0);
    const ScalarField v = ScalarField::from_expression(Expression::parse("0.5*x^2"));
    const EvolutionResult traj = evolve(psi0, v, units, 1e-3, 200, 100);
    const auto res = phase_equation_residual(traj, v, units);
    for (double r : res) CHECK(r <= 1e-4);
}

TEST_CASE("phase-equation residual converges at second order") {
    const UnitSystem units;
    auto run = [&](double dx, double dt) {
        const auto n = static_cast<std::size_t>(std::lround(32.0 / dx));
        const Grid1D g = Grid1D::centered(dx, n);
        const WaveFunction psi0 = gaussian_packet(g, 0.0, 1.0, 1.0);
        const auto steps = static_cast<std::size_t>(std::lround(0.5 / dt));
        const EvolutionResult traj =
            evolve(psi0, ScalarField::zero(), units, dt, steps, 25);
        const auto res = phase_equation_residual(traj, ScalarField::zero(), units);
        double worst = 0.0;
        for (double r : res) worst = std::max(worst, r);
        return worst;
    };
    const double coarse = run(0.08, 2e-3);
    const double fine = run(0.04, 1e-3);
    const double ratio = coarse / fine;
    CHECK(ratio > 3.0);
    CHECK(ratio < 5.0);
}

TEST_CASE("plane-wave phase equation nearly cancels term by term") {
    const Grid1D g(0.0, 0.05, 256);
    const UnitSystem units;
    const double k = 2.0 * std::numbers::pi * 2.0 / g.length();
    const WaveFunction psi0 = plane_wave(g, k);
    const EvolutionResult traj = evolve(psi0, ScalarField::zero(), units, 1e-3, 100, 50);
    const auto res = phase_equation_residual(traj, ScalarField::zero(), units);
    for (double r : res) CHECK(r <= 1e-3);
}
