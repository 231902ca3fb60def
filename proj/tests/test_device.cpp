#include <doctest.h>

#include <cmath>

#include "edlab/device.hpp"

using namespace edlab;
using namespace edlab::measure;

TEST_CASE("harmonic basis is orthonormal and starts at the ground state") {
    const Grid1D g = Grid1D::centered(0.01, 2001);
    const UnitSystem units;
    const MeasurementDevice dev = MeasurementDevice::harmonic(g, units, 1.0, 12);
    CHECK(dev.n_outcomes() == 12);

    const wave::WaveFunction ground = wave::harmonic_ground_state(g, units, 1.0);
    const wave::Complex ov = wave::inner_product(dev.basis_state(0), ground);
    CHECK(std::abs(ov) == doctest::Approx(1.0).epsilon(1e-10));

    CHECK(dev.eigenvalue(0) == doctest::Approx(0.5));
    CHECK(dev.eigenvalue(11) == doctest::Approx(11.5));
}

TEST_CASE("grid deltas are orthonormal position states") {
    const Grid1D g = Grid1D::centered(0.1, 64);
    const MeasurementDevice dev = MeasurementDevice::grid_deltas(g, {5, 20, 40});
    CHECK(dev.n_outcomes() == 3);
    CHECK(dev.pointer_position(1) == doctest::Approx(g.x(20)));
    CHECK(dev.basis_state(0).norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("device validation rejects broken input") {
    const Grid1D g = Grid1D::centered(0.1, 64);
    // Duplicate pointer position.
    CHECK_THROWS_AS(MeasurementDevice::grid_deltas(g, {5, 5}), ValidationError);
    // Pointer off the grid.
    CHECK_THROWS_AS(MeasurementDevice::grid_deltas(g, {99}), ValidationError);

    // Non-orthonormal basis.
    const double amp = 1.0 / std::sqrt(g.dx);
    std::vector<std::vector<wave::Complex>> basis(
        2, std::vector<wave::Complex>(g.n, wave::Complex(0.0, 0.0)));
    basis[0][3] = amp;
    basis[1][3] = amp;  // identical states
    CHECK_THROWS_AS(MeasurementDevice(g, Boundary::Dirichlet, basis, {3, 4}),
                    ValidationError);
}

TEST_CASE("plane-wave devices require monotone eigenvalues") {
    const Grid1D g(0.0, 0.1, 128);
    const UnitSystem units;
    const MeasurementDevice dev =
        MeasurementDevice::plane_waves(g, units, {-2, 0, 1, 3});
    CHECK(dev.continuous());
    CHECK(dev.eigenvalue(0) < dev.eigenvalue(1));
    CHECK_THROWS_AS(MeasurementDevice::plane_waves(g, units, {3, 1}), ValidationError);
}

TEST_CASE("amplifier models are column-stochastic") {
    CHECK_THROWS_AS(AmplifierModel({{0.9, 0.2}, {0.2, 0.8}}), ValidationError);
    CHECK_THROWS_AS(AmplifierModel({{1.1, -0.1}, {-0.1, 1.1}}), ValidationError);

    const AmplifierModel good = AmplifierModel::near_diagonal(3, 0.99);
    CHECK(good.min_diagonal() == doctest::Approx(0.99));
    CHECK(good.is_good());
    CHECK_FALSE(AmplifierModel::near_diagonal(3, 0.9).is_good());

    const AmplifierModel id = AmplifierModel::identity(4);
    CHECK(id.min_diagonal() == doctest::Approx(1.0));
}
