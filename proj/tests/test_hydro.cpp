#include <doctest.h>

#include <cmath>
#include <numbers>

#include "edlab/hydro.hpp"

using namespace edlab;
using namespace edlab::wave;

TEST_CASE("a real positive state has zero phase and zero current velocity") {
    const Grid1D g = Grid1D::centered(0.02, 1024);
    const UnitSystem units;
    const WaveFunction psi = gaussian_packet(g, 0.0, 1.0, 0.0);
    const HydroFields f = decompose(psi, units);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!f.mask[i]) continue;
        CHECK(std::abs(f.phi[i]) <= 1e-12);
        if (f.velocity_mask[i]) CHECK(std::abs(f.v[i]) <= 1e-10);
    }
}

TEST_CASE("plane wave has uniform current velocity and zero osmotic velocity") {
    const Grid1D g(0.0, 0.05, 512);
    const UnitSystem units;
    const double k = 2.0 * std::numbers::pi * 8.0 / g.length();
    const WaveFunction psi = plane_wave(g, k);
    const HydroFields f = decompose(psi, units);
    // Central differences of the linear phase are exact.
    for (std::size_t i = 2; i + 2 < f.size(); i += 7) {
        REQUIRE(f.velocity_mask[i]);
        CHECK(f.v[i] == doctest::Approx(k).epsilon(1e-10));
        CHECK(std::abs(f.u[i]) <= 1e-9);
    }
}

TEST_CASE("osmotic velocity of a gaussian is linear in x") {
    const Grid1D g = Grid1D::centered(0.02, 1024);
    const UnitSystem units;
    const double sigma = 0.8, x0 = 0.4;
    const WaveFunction psi = gaussian_packet(g, x0, sigma, 0.0);
    const HydroFields f = decompose(psi, units);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!f.velocity_mask[i]) continue;
        const double x = g.x(i);
        if (std::abs(x - x0) > 4.0 * sigma) continue;
        const double expected = 0.5 * (x - x0) / (sigma * sigma);
        CHECK(f.u[i] == doctest::Approx(expected).epsilon(1e-7));
    }
}

TEST_CASE("the drift velocity is v - u by construction") {
    const Grid1D g = Grid1D::centered(0.02, 1024);
    const UnitSystem units;
    const WaveFunction psi = gaussian_packet(g, 0.0, 1.0, 2.0);
    const HydroFields f = decompose(psi, units);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!f.velocity_mask[i]) continue;
        CHECK(f.b[i] == doctest::Approx(f.v[i] - f.u[i]).epsilon(1e-12));
    }
}

TEST_CASE("unwrapped phase of a boosted packet is linear across many turns") {
    const Grid1D g = Grid1D::centered(0.02, 1024);
    const UnitSystem units;
    const double k0 = 5.0;
    const WaveFunction psi = gaussian_packet(g, 0.0, 1.0, k0);
    const HydroFields f = decompose(psi, units);

    // phi(x) = k0 x + const on the mask, far beyond a single branch.
    double offset = 0.0;
    bool first = true;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!f.mask[i]) continue;
        const double expected = k0 * g.x(i);
        if (first) {
            offset = f.phi[i] - expected;
            first = false;
        }
        CHECK(f.phi[i] - expected == doctest::Approx(offset).epsilon(1e-8));
    }
    CHECK(std::abs(k0 * (g.x(900) - g.x(100))) > 4.0 * std::numbers::pi);
}

TEST_CASE("entropy field is phi plus half log rho") {
    const Grid1D g = Grid1D::centered(0.02, 1024);
    const UnitSystem units;
    const WaveFunction psi = gaussian_packet(g, 0.0, 1.0, 1.0);
    const HydroFields f = decompose(psi, units);
    for (std::size_t i = 0; i < f.size(); i += 17) {
        if (!f.mask[i]) continue;
        CHECK(f.entropy[i] ==
              doctest::Approx(f.phi[i] + 0.5 * std::log(f.rho[i])).epsilon(1e-13));
    }
}

TEST_CASE("recompose inverts decompose up to a global phase") {
    const Grid1D g = Grid1D::centered(0.02, 1024);
    const UnitSystem units;
    const WaveFunction psi = gaussian_packet(g, 0.3, 0.9, 3.0);
    const HydroFields f = decompose(psi, units);
    const WaveFunction back = recompose(f, psi.boundary, units);

    Complex corr = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i)
        corr += std::conj(back.amp[i]) * psi.amp[i];
    const Complex phase = corr / std::abs(corr);
    double worst = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        if (!f.mask[i]) continue;
        worst = std::max(worst, std::abs(psi.amp[i] - phase * back.amp[i]));
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("decompose requires density above the floor") {
    const Grid1D g = Grid1D::centered(0.02, 1024);
    const UnitSystem units;
    const WaveFunction psi = gaussian_packet(g, 0.0, 1.0, 0.0);
    CHECK_THROWS_AS(decompose(psi, units, 1e9), ValidationError);
}
