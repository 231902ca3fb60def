#pragma once

#include <complex>
#include <vector>

#include "edlab/grid.hpp"

namespace edlab::wave {

using Complex = std::complex<double>;

/// Complex amplitudes on a grid, normalized so that sum |psi|^2 dx = 1.
struct WaveFunction {
    Grid1D grid;
    Boundary boundary = Boundary::Dirichlet;
    std::vector<Complex> amp;

    WaveFunction() = default;
    WaveFunction(Grid1D g, Boundary b, std::vector<Complex> a);

    std::size_t size() const { return amp.size(); }

    /// sum |psi|^2 dx.
    double norm_squared() const;
    /// |psi_i|^2.
    std::vector<double> density() const;

    /// Throws ValidationError if the norm is off by more than tol.
    void check_normalized(double tol = 1e-10) const;
    /// Rescale to unit norm.
    void normalize();
};

/// <a|b> = sum conj(a_i) b_i dx.
Complex inner_product(const WaveFunction &a, const WaveFunction &b);

/// Gaussian packet  psi ~ exp[-(x-x0)^2/(4 sigma0^2)] exp(i k0 x), normalized.
/// Requires at least 6 sigma0 of clearance from both Dirichlet walls.
WaveFunction gaussian_packet(const Grid1D &grid, double x0, double sigma0, double k0,
                             Boundary boundary = Boundary::Dirichlet);

/// Ground state of V = (1/2) m omega^2 x^2 centered on zero.
WaveFunction harmonic_ground_state(const Grid1D &grid, const UnitSystem &units,
                                   double omega = 1.0);

/// Normalized plane wave exp(i k x) on a periodic grid; k must sit on a
/// lattice mode 2 pi j / L within 1e-9.
WaveFunction plane_wave(const Grid1D &grid, double k);

} // namespace edlab::wave
