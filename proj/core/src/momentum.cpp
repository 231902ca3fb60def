#include "edlab/momentum.hpp"

#include <cmath>

#include "edlab/hydro.hpp"
#include "fft_internal.hpp"

namespace edlab::wave {

MomentumStats momentum_stats(const WaveFunction &psi, const UnitSystem &units,
                             double boundary_tol) {
    psi.check_normalized(1e-8);
    const std::size_t n = psi.size();
    const double dx = psi.grid.dx;

    if (psi.boundary == Boundary::Dirichlet) {
        const double edge = (std::norm(psi.amp[0]) + std::norm(psi.amp[n - 1])) * dx;
        if (edge > boundary_tol)
            throw ValidationError("momentum_stats: density has not decayed at the walls");
    }

    MomentumStats s;

    // Spectral momentum distribution.
    const auto hat = detail::dft_forward(psi.amp);
    const auto k = detail::wavenumbers(n, dx);
    double total = 0.0, p1 = 0.0, p2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double w = std::norm(hat[j]);
        total += w;
        p1 += w * units.hbar * k[j];
        p2 += w * units.hbar * k[j] * units.hbar * k[j];
    }
    s.p_mean = p1 / total;
    s.p_var = p2 / total - s.p_mean * s.p_mean;

    // Position moments by quadrature.
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double rho = std::norm(psi.amp[i]);
        const double x = psi.grid.x(i);
        m1 += rho * x;
        m2 += rho * x * x;
    }
    s.x_mean = m1 * dx;
    s.x_var = m2 * dx - s.x_mean * s.x_mean;

    // Hydrodynamic split on the velocity mask.
    const HydroFields f = decompose(psi, units);
    double mass = 0.0, v1 = 0.0, v2 = 0.0, u2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!f.velocity_mask[i]) continue;
        const double w = f.rho[i];
        mass += w;
        v1 += w * f.v[i];
        v2 += w * f.v[i] * f.v[i];
        u2 += w * f.u[i] * f.u[i];
    }
    if (mass == 0.0) throw ValidationError("momentum_stats: empty velocity mask");
    v1 /= mass;
    v2 /= mass;
    u2 /= mass;
    s.v_mean = v1;
    s.mv_var = units.mass * units.mass * (v2 - v1 * v1);
    s.mu2_mean = units.mass * units.mass * u2;
    return s;
}

} // namespace edlab::wave
