#include <doctest.h>

#include <cmath>

#include "edlab/evolve.hpp"
#include "edlab/hydro.hpp"
#include "helpers.hpp"

using namespace edlab;
using namespace edlab::wave;

namespace {

double max_density_gap(const EvolutionResult &a, const EvolutionResult &b) {
    double worst = 0.0;
    for (std::size_t k = 0; k < a.states.size(); ++k) {
        const auto ra = a.states[k].density();
        const auto rb = b.states[k].density();
        for (std::size_t i = 0; i < ra.size(); ++i)
            worst = std::max(worst, std::abs(ra[i] - rb[i]));
    }
    return worst;
}

double wrap(double a) {
    while (a > M_PI) a -= 2.0 * M_PI;
    while (a < -M_PI) a += 2.0 * M_PI;
    return a;
}

} // namespace

TEST_CASE("zero gauge field reproduces the plain evolution exactly") {
    const Grid1D g = Grid1D::centered(0.02, 1024);
    const UnitSystem units;
    const WaveFunction psi0 = gaussian_packet(g, 0.0, 1.0, 1.0);

    GaugeField gauge;  // beta = 0, A = 0, V = 0
    const EvolutionResult a = evolve(psi0, ScalarField::zero(), units, 1e-3, 200, 100);
    const EvolutionResult b = evolve_gauged(psi0, gauge, units, 1e-3, 200, 100);
    double worst = 0.0;
    for (std::size_t k = 0; k < a.states.size(); ++k)
        for (std::size_t i = 0; i < g.n; ++i)
            worst = std::max(worst, std::abs(a.states[k].amp[i] - b.states[k].amp[i]));
    CHECK(worst <= 1e-14);
}

TEST_CASE("constant vector potential shifts the drift velocity") {
    const Grid1D g = Grid1D::centered(0.01, 4096);
    const UnitSystem units;
    const WaveFunction psi0 = gaussian_packet(g, -5.0, 1.0, 1.0);

    GaugeField gauge;
    gauge.beta = 0.5;
    gauge.A = ScalarField::constant(1.0);
    const EvolutionResult traj = evolve_gauged(psi0, gauge, units, 1e-3, 500, 100);

    // Ehrenfest oracle: slope of <x>(t) against the kinetic velocity
    // (hbar k0 - beta hbar A)/m = 0.5.
    std::vector<double> means;
    for (const auto &s : traj.states) means.push_back(oracle::position_moments(s).first);
    for (std::size_t k = 1; k < means.size(); ++k) {
        const double slope = (means[k] - means[k - 1]) / (traj.times[k] - traj.times[k - 1]);
        CHECK(slope == doctest::Approx(0.5).epsilon(1e-4));
    }
    CHECK(traj.max_step_norm_drift <= 1e-12);
}

TEST_CASE("constant gauge functions are global phase shifts") {
    const Grid1D g = Grid1D::centered(0.02, 1024);
    const UnitSystem units;
    const WaveFunction psi0 = gaussian_packet(g, 0.0, 1.0, 0.5);

    GaugeField gauge;
    gauge.beta = 0.7;
    const GaugeFunction f = GaugeFunction::analytic(
        [](double, double) { return 2.0; }, [](double, double) { return 0.0; },
        [](double, double) { return 0.0; });
    const auto [psi_t, gauge_t] = gauge_transform(psi0, gauge, f, 0.0, units);

    for (std::size_t i = 0; i < psi0.size(); ++i)
        CHECK(std::abs(psi_t.amp[i] - psi0.amp[i] * std::polar(1.0, 0.7 * 2.0)) <= 1e-14);

    const EvolutionResult a = evolve_gauged(psi0, gauge, units, 1e-3, 200, 100);
    const EvolutionResult b = evolve_gauged(psi_t, gauge_t, units, 1e-3, 200, 100);
    CHECK(max_density_gap(a, b) <= 1e-14);
}

TEST_CASE("linear-in-x gauge change leaves the density evolution invariant") {
    const Grid1D g = Grid1D::centered(0.01, 2048);
    const UnitSystem units;
    const WaveFunction psi0 = gaussian_packet(g, 0.0, 1.0, 0.5);

    GaugeField gauge;
    gauge.beta = 0.25;
    const GaugeFunction f = GaugeFunction::analytic(
        [](double x, double) { return x; }, [](double, double) { return 1.0; },
        [](double, double) { return 0.0; });
    const auto [psi_t, gauge_t] = gauge_transform(psi0, gauge, f, 0.0, units);

    const EvolutionResult a = evolve_gauged(psi0, gauge, units, 1e-3, 500, 100);
    const EvolutionResult b = evolve_gauged(psi_t, gauge_t, units, 1e-3, 500, 100);
    CHECK(max_density_gap(a, b) <= 1e-8);

    // Phases differ by beta f (mod 2 pi) on the mask at every checkpoint.
    for (std::size_t k = 0; k < a.states.size(); ++k) {
        const HydroFields fa = decompose(a.states[k], units);
        const HydroFields fb = decompose(b.states[k], units);
        for (std::size_t i = 0; i < g.n; i += 11) {
            if (!fa.mask[i] || !fb.mask[i]) continue;
            CHECK(std::abs(wrap(fb.phi[i] - fa.phi[i] - 0.25 * g.x(i))) <= 1e-8);
        }
    }
}

TEST_CASE("time-linear gauge change trades A against the scalar potential") {
    const Grid1D g = Grid1D::centered(0.01, 2048);
    const UnitSystem units;
    const WaveFunction psi0 = gaussian_packet(g, 0.0, 1.0, 0.0);

    GaugeField gauge;
    gauge.beta = 0.1;
    // f = x t:  A -> A + t,  V -> V - hbar beta x.
    const GaugeFunction f = GaugeFunction::analytic(
        [](double x, double t) { return x * t; }, [](double, double t) { return t; },
        [](double x, double) { return x; });
    const auto [psi_t, gauge_t] = gauge_transform(psi0, gauge, f, 0.0, units);

    CHECK(gauge_t.A(1.5, 2.0) == doctest::Approx(2.0));
    CHECK(gauge_t.V(1.5, 2.0) == doctest::Approx(-0.1 * 1.5));

    const EvolutionResult a = evolve_gauged(psi0, gauge, units, 1e-3, 500, 100);
    const EvolutionResult b = evolve_gauged(psi_t, gauge_t, units, 1e-3, 500, 100);
    CHECK(max_density_gap(a, b) <= 1e-8);
}

TEST_CASE("finite-difference gauge derivatives match analytic ones") {
    const Expression e = Expression::parse("x*t");
    const GaugeFunction f = GaugeFunction::from_expression(e, 1e-3);
    CHECK(f.dfdx(0.7, 1.3) == doctest::Approx(1.3).epsilon(1e-10));
    CHECK(f.dfdt(0.7, 1.3) == doctest::Approx(0.7).epsilon(1e-10));
}
