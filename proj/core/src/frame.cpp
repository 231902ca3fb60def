#include "edlab/frame.hpp"

#include <cmath>
#include <complex>

#include "edlab/hydro.hpp"
#include "edlab/numeric.hpp"

namespace edlab::frames {

FrameMotion FrameMotion::constant_velocity(double v0) {
    return FrameMotion{[v0](double t) { return v0 * t; }, [v0](double) { return v0; },
                       [](double) { return 0.0; }};
}

FrameMotion FrameMotion::constant_acceleration(double g) {
    return FrameMotion{[g](double t) { return 0.5 * g * t * t; },
                       [g](double t) { return g * t; }, [g](double) { return g; }};
}

FrameMotion FrameMotion::from_expression(const Expression &e, double h) {
    if (!(h > 0.0)) throw ValidationError("FrameMotion: derivative step must be positive");
    auto xi = [e](double t) { return e(0.0, t); };
    auto xd = [e, h](double t) {
        return (-e(0.0, t + 2 * h) + 8 * e(0.0, t + h) - 8 * e(0.0, t - h) + e(0.0, t - 2 * h)) /
               (12.0 * h);
    };
    auto xdd = [e, h](double t) {
        return (-e(0.0, t + 2 * h) + 16 * e(0.0, t + h) - 30 * e(0.0, t) + 16 * e(0.0, t - h) -
                e(0.0, t - 2 * h)) /
               (12.0 * h * h);
    };
    return FrameMotion{xi, xd, xdd};
}

namespace {

double integration_constant(const FrameMotion &motion, double t, std::size_t panels) {
    if (t == 0.0) return 0.0;
    auto speed2 = [&motion](double s) {
        const double v = motion.xi_dot(s);
        return v * v;
    };
    return -0.5 * simpson(speed2, 0.0, t, panels);
}

double wrap(double a) {
    while (a > M_PI) a -= 2.0 * M_PI;
    while (a < -M_PI) a += 2.0 * M_PI;
    return a;
}

} // namespace

double phase_shift(const FrameMotion &motion, const UnitSystem &units, double x_tilde,
                   double t, std::size_t panels) {
    const double c = integration_constant(motion, t, panels);
    return units.mass / units.hbar * (motion.xi_dot(t) * x_tilde + c);
}

double phase_shift_boost(const UnitSystem &units, double v0, double x_tilde, double t) {
    return units.mass / units.hbar * (v0 * x_tilde - 0.5 * v0 * v0 * t);
}

double phase_shift_uniform_acceleration(const UnitSystem &units, double g, double x_tilde,
                                        double t) {
    return units.mass / units.hbar * (g * x_tilde * t - g * g * t * t * t / 6.0);
}

WaveFunction transform_state(const WaveFunction &psi, const FrameMotion &motion,
                             const UnitSystem &units, double t, std::size_t panels) {
    const double shift = motion.xi(t);
    const double speed = motion.xi_dot(t);
    const double c = integration_constant(motion, t, panels);
    const double scale = units.mass / units.hbar;

    WaveFunction out(psi.grid.shifted(shift), psi.boundary, psi.amp);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double xt = out.grid.x(i);
        out.amp[i] *= std::polar(1.0, scale * (speed * xt + c));
    }
    return out;
}

ScalarField transformed_potential(const ScalarField &potential, const FrameMotion &motion,
                                  const UnitSystem &units) {
    const double m = units.mass;
    auto xi = motion.xi;
    auto xdd = motion.xi_ddot;
    return ScalarField(
        [potential, xi, xdd, m](double x_tilde, double t) {
            return potential(x_tilde - xi(t), t) - m * xdd(t) * x_tilde;
        },
        true);
}

SymmetryReport verify_symmetry(const WaveFunction &psi0, const ScalarField &potential,
                               const FrameMotion &motion, const UnitSystem &units, double dt,
                               std::size_t steps, std::size_t checkpoint_every) {
    if (std::abs(motion.xi(0.0)) > 1e-9)
        throw ValidationError("verify_symmetry: motion must start at xi(0) = 0");

    const EvolutionResult rest = wave::evolve(psi0, potential, units, dt, steps, checkpoint_every);

    const std::size_t panels = std::max<std::size_t>(2, steps);
    const WaveFunction moving0 = transform_state(psi0, motion, units, 0.0, panels);
    const ScalarField v_tilde = transformed_potential(potential, motion, units);
    const EvolutionResult moving =
        wave::evolve(moving0, v_tilde, units, dt, steps, checkpoint_every);

    const Grid1D &grid = psi0.grid;
    const double dx = grid.dx;
    const std::size_t n = grid.n;

    SymmetryReport rep;
    rep.times = rest.times;

    double phase_num = 0.0, phase_mass = 0.0;
    std::complex<double> mean_dir(0.0, 0.0);
    struct Sample {
        double weight;
        double delta;
    };
    std::vector<Sample> samples;

    for (std::size_t k = 0; k < rest.states.size(); ++k) {
        const double t = rest.times[k];
        const double displaced = motion.xi(t) / dx;
        const long s = std::lround(displaced);
        if (std::abs(displaced - static_cast<double>(s)) > 1e-6)
            throw ValidationError(
                "verify_symmetry: checkpoint displacement is not a whole number of cells");
        rep.shifts.push_back(s);

        const auto rho_rest = rest.states[k].density();
        const auto rho_mov = moving.states[k].density();
        double worst = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const long src = static_cast<long>(j) - s;
            const double reference =
                (src >= 0 && src < static_cast<long>(n)) ? rho_rest[static_cast<std::size_t>(src)]
                                                         : 0.0;
            worst = std::max(worst, std::abs(rho_mov[j] - reference) * dx);
        }
        rep.density_residual.push_back(worst);
        rep.max_density_residual = std::max(rep.max_density_residual, worst);

        if (k == 0) continue; // the transform is exact at t = 0 by construction
        const wave::HydroFields fr = wave::decompose(rest.states[k], units);
        const wave::HydroFields fm = wave::decompose(moving.states[k], units);
        const std::size_t quad_panels = std::max<std::size_t>(2, checkpoint_every * k);
        const double c = integration_constant(motion, t, quad_panels);
        const double speed = motion.xi_dot(t);
        const double scale = units.mass / units.hbar;
        for (std::size_t j = 0; j < n; ++j) {
            const long src = static_cast<long>(j) - s;
            if (src < 0 || src >= static_cast<long>(n)) continue;
            const auto sj = static_cast<std::size_t>(src);
            if (!fm.mask[j] || !fr.mask[sj]) continue;
            const double x_tilde = moving.states[k].grid.x(j);
            const double predicted = scale * (speed * x_tilde + c);
            const double delta = wrap(fm.phi[j] - fr.phi[sj] - predicted);
            const double w = fm.rho[j];
            samples.push_back({w, delta});
            mean_dir += w * std::polar(1.0, delta);
        }
    }

    if (!samples.empty()) {
        const double offset = std::arg(mean_dir);
        for (const auto &smp : samples) {
            const double d = wrap(smp.delta - offset);
            phase_num += smp.weight * d * d;
            phase_mass += smp.weight;
        }
        rep.phase_residual = std::sqrt(phase_num / phase_mass);
    }
    return rep;
}

ProperTimeResidue proper_time_residue(const FrameMotion &motion, double c_light, double T,
                                      std::size_t panels) {
    if (!(c_light > 0.0)) throw ValidationError("proper_time_residue: c must be positive");
    if (!(T >= 0.0)) throw ValidationError("proper_time_residue: negative time span");

    double vmax = 0.0;
    for (std::size_t i = 0; i <= panels; ++i) {
        const double t = T * static_cast<double>(i) / static_cast<double>(std::max<std::size_t>(panels, 1));
        vmax = std::max(vmax, std::abs(motion.xi_dot(t)));
    }
    if (vmax >= c_light)
        throw ValidationError("proper_time_residue: superluminal frame speed");
    if (vmax / c_light > 0.3)
        throw ValidationError("proper_time_residue: frame speed exceeds 0.3 c");

    auto speed2 = [&motion](double s) {
        const double v = motion.xi_dot(s);
        return v * v;
    };
    auto gamma_inv = [&motion, c_light](double s) {
        const double beta = motion.xi_dot(s) / c_light;
        return std::sqrt(1.0 - beta * beta);
    };

    ProperTimeResidue r;
    r.lhs = simpson(speed2, 0.0, T, panels) / (2.0 * c_light * c_light);
    r.rhs = T - simpson(gamma_inv, 0.0, T, panels);
    r.gap = r.rhs - r.lhs;
    return r;
}

} // namespace edlab::frames
