#include "edlab/hydro.hpp"

#include <cmath>
#include <limits>

namespace edlab::wave {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double principal(double dphi) {
    while (dphi > M_PI) dphi -= 2.0 * M_PI;
    while (dphi < -M_PI) dphi += 2.0 * M_PI;
    return dphi;
}
} // namespace

HydroFields decompose(const WaveFunction &psi, const UnitSystem &units, double rho_min) {
    const std::size_t n = psi.size();
    if (rho_min < 0.0) rho_min = default_rho_min(psi.grid);

    HydroFields f;
    f.grid = psi.grid;
    f.rho_min = rho_min;
    f.rho = psi.density();
    f.phi.assign(n, kNaN);
    f.v.assign(n, kNaN);
    f.u.assign(n, kNaN);
    f.b.assign(n, kNaN);
    f.entropy.assign(n, kNaN);
    f.mask.assign(n, false);
    f.velocity_mask.assign(n, false);

    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
        f.mask[i] = f.rho[i] >= rho_min;
        any = any || f.mask[i];
    }
    if (!any) throw ValidationError("decompose: no density above rho_min");

    // Unwrap the phase within each contiguous masked-in component, walking
    // outward from its densest point.
    std::size_t i = 0;
    while (i < n) {
        if (!f.mask[i]) {
            ++i;
            continue;
        }
        std::size_t begin = i;
        while (i < n && f.mask[i]) ++i;
        const std::size_t end = i; // [begin, end)

        std::size_t seed = begin;
        for (std::size_t k = begin; k < end; ++k)
            if (f.rho[k] > f.rho[seed]) seed = k;

        f.phi[seed] = std::arg(psi.amp[seed]);
        for (std::size_t k = seed + 1; k < end; ++k)
            f.phi[k] = f.phi[k - 1] + principal(std::arg(psi.amp[k]) - std::arg(psi.amp[k - 1]));
        for (std::size_t k = seed; k-- > begin;)
            f.phi[k] = f.phi[k + 1] + principal(std::arg(psi.amp[k]) - std::arg(psi.amp[k + 1]));
    }

    const double inv2dx = 1.0 / (2.0 * psi.grid.dx);
    const double hm = units.hbar / units.mass;
    for (std::size_t k = 0; k < n; ++k) {
        if (!f.mask[k]) continue;
        f.entropy[k] = f.phi[k] + 0.5 * std::log(f.rho[k]);
        if (k == 0 || k + 1 == n || !f.mask[k - 1] || !f.mask[k + 1]) continue;
        f.velocity_mask[k] = true;
        f.v[k] = hm * (f.phi[k + 1] - f.phi[k - 1]) * inv2dx;
        f.u[k] = -0.5 * hm * (std::log(f.rho[k + 1]) - std::log(f.rho[k - 1])) * inv2dx;
        f.b[k] = f.v[k] - f.u[k];
    }
    return f;
}

WaveFunction recompose(const HydroFields &fields, Boundary boundary, const UnitSystem &) {
    std::vector<Complex> amp(fields.size(), Complex(0.0, 0.0));
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (!fields.mask[i]) {
            // Below the floor the phase is undefined; keep the magnitude.
            amp[i] = std::sqrt(fields.rho[i]);
            continue;
        }
        amp[i] = std::polar(std::sqrt(fields.rho[i]), fields.phi[i]);
    }
    WaveFunction psi(fields.grid, boundary, std::move(amp));
    psi.normalize();
    return psi;
}

} // namespace edlab::wave
