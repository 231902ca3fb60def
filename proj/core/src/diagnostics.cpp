#include "edlab/diagnostics.hpp"

#include <cmath>

#include "fft_internal.hpp"

namespace edlab::wave {

namespace {

double weighted_rms(const std::vector<double> &r, const std::vector<double> &w,
                    const std::vector<bool> &valid) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (!valid[i]) continue;
        num += w[i] * r[i] * r[i];
        den += w[i];
    }
    if (den == 0.0) throw ValidationError("residual: empty mask");
    return std::sqrt(num / den);
}

} // namespace

double energy(const WaveFunction &psi, const ScalarField &potential, const UnitSystem &units,
              double t) {
    const auto dpsi = detail::spectral_derivative(psi.amp, psi.grid.dx);
    const double dx = psi.grid.dx;
    const double c_phase = units.hbar * units.hbar / (2.0 * units.mass);
    const double c_osm =
        units.osmotic_mass * units.hbar * units.hbar / (2.0 * units.mass * units.mass);

    double e = 0.0;
    if (units.osmotic_mass == units.mass) {
        // rho (dphi)^2 + rho (dlog rho)^2/4 = |dpsi|^2 pointwise.
        for (std::size_t i = 0; i < psi.size(); ++i)
            e += c_phase * std::norm(dpsi[i]) + potential(psi.grid.x(i), t) * std::norm(psi.amp[i]);
    } else {
        const double floor = 1e-300;
        for (std::size_t i = 0; i < psi.size(); ++i) {
            const double rho = std::norm(psi.amp[i]);
            const Complex grad = std::conj(psi.amp[i]) * dpsi[i];
            if (rho > floor) {
                e += c_phase * grad.imag() * grad.imag() / rho +
                     c_osm * grad.real() * grad.real() / rho;
            }
            e += potential(psi.grid.x(i), t) * rho;
        }
    }
    return e * dx;
}

std::vector<double> energy_series(const EvolutionResult &traj, const ScalarField &potential,
                                  const UnitSystem &units) {
    std::vector<double> out;
    out.reserve(traj.states.size());
    for (std::size_t k = 0; k < traj.states.size(); ++k)
        out.push_back(energy(traj.states[k], potential, units, traj.times[k]));
    return out;
}

double energy_drift(const EvolutionResult &traj, const ScalarField &potential,
                    const UnitSystem &units) {
    const auto e = energy_series(traj, potential, units);
    if (e.empty()) throw ValidationError("energy_drift: empty trajectory");
    if (e[0] == 0.0) throw ValidationError("energy_drift: zero reference energy");
    double worst = 0.0;
    for (double ek : e) worst = std::max(worst, std::abs(ek - e[0]) / std::abs(e[0]));
    return worst;
}

double driven_energy_mismatch(const EvolutionResult &traj, const ScalarField &potential,
                              const UnitSystem &units) {
    if (traj.states.size() < 3)
        throw ValidationError("driven_energy_mismatch: need at least 3 checkpoints");
    const auto e = energy_series(traj, potential, units);
    const double dtc = traj.times[1] - traj.times[0];

    double worst = 0.0;
    for (std::size_t k = 1; k + 1 < traj.states.size(); ++k) {
        const double dEdt = (e[k + 1] - e[k - 1]) / (2.0 * dtc);
        // int rho dV/dt by centered differences of V in t.
        const WaveFunction &psi = traj.states[k];
        const double h = 0.5 * dtc;
        double pump = 0.0;
        for (std::size_t i = 0; i < psi.size(); ++i) {
            const double x = psi.grid.x(i);
            const double dVdt =
                (potential(x, traj.times[k] + h) - potential(x, traj.times[k] - h)) / (2.0 * h);
            pump += std::norm(psi.amp[i]) * dVdt;
        }
        pump *= psi.grid.dx;
        const double scale = std::max({std::abs(pump), std::abs(dEdt), 1e-12});
        worst = std::max(worst, std::abs(dEdt - pump) / scale);
    }
    return worst;
}

std::vector<double> fokker_planck_residual(const EvolutionResult &traj,
                                           const UnitSystem &units, double rho_min) {
    if (traj.states.size() < 3)
        throw ValidationError("fokker_planck_residual: need at least 3 checkpoints");
    const double dtc = traj.times[1] - traj.times[0];
    const double dx = traj.states[0].grid.dx;

    std::vector<double> out;
    for (std::size_t k = 1; k + 1 < traj.states.size(); ++k) {
        const HydroFields f = decompose(traj.states[k], units, rho_min);
        const auto rho_prev = traj.states[k - 1].density();
        const auto rho_next = traj.states[k + 1].density();
        const std::size_t n = f.size();

        std::vector<double> flux(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            if (f.velocity_mask[i]) flux[i] = f.v[i] * f.rho[i];

        std::vector<double> r(n, 0.0);
        std::vector<bool> valid(n, false);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (!f.velocity_mask[i] || !f.velocity_mask[i - 1] || !f.velocity_mask[i + 1])
                continue;
            const double drho_dt = (rho_next[i] - rho_prev[i]) / (2.0 * dtc);
            const double div = (flux[i + 1] - flux[i - 1]) / (2.0 * dx);
            r[i] = drho_dt + div;
            valid[i] = true;
        }
        out.push_back(weighted_rms(r, f.rho, valid));
    }
    return out;
}

std::vector<double> phase_equation_residual(const EvolutionResult &traj,
                                            const ScalarField &potential,
                                            const UnitSystem &units, double rho_min) {
    if (traj.states.size() < 2)
        throw ValidationError("phase_equation_residual: need at least 2 checkpoints");
    const Grid1D &grid = traj.states[0].grid;
    if (rho_min < 0.0) rho_min = default_rho_min(grid);
    const double dx = grid.dx;
    const double hb = units.hbar;
    const double c_phase = hb * hb / (2.0 * units.mass);
    const double c_qp = units.osmotic_mass * hb * hb / (2.0 * units.mass * units.mass);

    std::vector<double> out;
    for (std::size_t k = 0; k + 1 < traj.states.size(); ++k) {
        const WaveFunction &a = traj.states[k];
        const WaveFunction &b = traj.states[k + 1];
        const double dtc = traj.times[k + 1] - traj.times[k];
        const double t_mid = 0.5 * (traj.times[k] + traj.times[k + 1]);
        const std::size_t n = a.size();

        const HydroFields fa = decompose(a, units, rho_min);

        // Pointwise phase advance between the two checkpoints; valid while
        // the per-interval advance stays under pi.
        std::vector<double> dphi(n, 0.0), phi_mid(n, 0.0), sqrho(n, 0.0), rho_mid(n, 0.0);
        std::vector<bool> ok(n, false);
        for (std::size_t i = 0; i < n; ++i) {
            rho_mid[i] = 0.5 * (std::norm(a.amp[i]) + std::norm(b.amp[i]));
            sqrho[i] = std::sqrt(rho_mid[i]);
            if (!fa.mask[i] || std::norm(b.amp[i]) < rho_min) continue;
            dphi[i] = std::arg(b.amp[i] * std::conj(a.amp[i]));
            phi_mid[i] = fa.phi[i] + 0.5 * dphi[i];
            ok[i] = true;
        }

        std::vector<double> r(n, 0.0);
        std::vector<bool> valid(n, false);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (!ok[i] || !ok[i - 1] || !ok[i + 1]) continue;
            const double dphidt = dphi[i] / dtc;
            const double grad = (phi_mid[i + 1] - phi_mid[i - 1]) / (2.0 * dx);
            const double qp = (sqrho[i + 1] - 2.0 * sqrho[i] + sqrho[i - 1]) / (dx * dx);
            r[i] = hb * dphidt + c_phase * grad * grad + potential(grid.x(i), t_mid) -
                   c_qp * qp / sqrho[i];
            valid[i] = true;
        }
        out.push_back(weighted_rms(r, rho_mid, valid));
    }
    return out;
}

} // namespace edlab::wave
