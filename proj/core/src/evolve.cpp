#include "edlab/evolve.hpp"

#include <cmath>

namespace edlab::wave {

GaugeFunction GaugeFunction::analytic(std::function<double(double, double)> f,
                                      std::function<double(double, double)> dfdx,
                                      std::function<double(double, double)> dfdt) {
    return GaugeFunction{std::move(f), std::move(dfdx), std::move(dfdt)};
}

GaugeFunction GaugeFunction::from_expression(const Expression &e, double h) {
    if (!(h > 0.0)) throw ValidationError("GaugeFunction: derivative step must be positive");
    auto f = [e](double x, double t) { return e(x, t); };
    auto dfdx = [e, h](double x, double t) {
        return (-e(x + 2 * h, t) + 8 * e(x + h, t) - 8 * e(x - h, t) + e(x - 2 * h, t)) /
               (12.0 * h);
    };
    auto dfdt = [e, h](double x, double t) {
        return (-e(x, t + 2 * h) + 8 * e(x, t + h) - 8 * e(x, t - h) + e(x, t - 2 * h)) /
               (12.0 * h);
    };
    return GaugeFunction{f, dfdx, dfdt};
}

namespace {

// Thomas solve of a tridiagonal system; diag/upper/lower are overwritten.
void solve_tridiagonal(std::vector<Complex> &lower, std::vector<Complex> &diag,
                       std::vector<Complex> &upper, std::vector<Complex> &rhs) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        const Complex w = lower[i] / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    rhs[n - 1] /= diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
}

struct Stepper {
    const Grid1D grid;
    const Boundary boundary;
    const UnitSystem units;
    const GaugeField gauge;
    const double dt;
    const double kappa;   // hbar^2 / (2 m dx^2)
    const Complex alpha;  // i dt / (2 hbar)
    const bool fields_static;

    std::vector<Complex> link;  // e^{-i theta} on bond (i, i+1)
    std::vector<double> v;      // scalar potential samples

    Stepper(const WaveFunction &psi, const GaugeField &g, const UnitSystem &u, double dt_)
        : grid(psi.grid), boundary(psi.boundary), units(u), gauge(g), dt(dt_),
          kappa(u.hbar * u.hbar / (2.0 * u.mass * grid.dx * grid.dx)),
          alpha(Complex(0.0, dt_ / (2.0 * u.hbar))),
          fields_static(g.A.is_static() && g.V.is_static()) {
        link.assign(grid.n, Complex(1.0, 0.0));
        v.assign(grid.n, 0.0);
        sample_fields(0.5 * dt);
    }

    void sample_fields(double t_mid) {
        for (std::size_t i = 0; i < grid.n; ++i) v[i] = gauge.V(grid.x(i), t_mid);
        if (gauge.beta != 0.0) {
            // Trapezoid link integral of A across each bond; exact for A
            // linear in x, which keeps polynomial gauge shifts exact.
            const std::size_t nb = boundary == Boundary::Periodic ? grid.n : grid.n - 1;
            for (std::size_t i = 0; i < nb; ++i) {
                const double xa = grid.x(i);
                const double xb = xa + grid.dx;
                const double theta =
                    gauge.beta * 0.5 * grid.dx * (gauge.A(xa, t_mid) + gauge.A(xb, t_mid));
                link[i] = std::polar(1.0, -theta);
            }
        }
    }

    // One Crank-Nicolson step from time t.
    void step(std::vector<Complex> &psi, double t) {
        if (!fields_static) sample_fields(t + 0.5 * dt);
        const std::size_t n = grid.n;

        std::vector<Complex> rhs(n), diag(n), up(n), lo(n);
        auto h_apply = [&](std::size_t i) {
            Complex acc = (2.0 * kappa + v[i]) * psi[i];
            if (i + 1 < n)
                acc -= kappa * link[i] * psi[i + 1];
            else if (boundary == Boundary::Periodic)
                acc -= kappa * link[n - 1] * psi[0];
            if (i > 0)
                acc -= kappa * std::conj(link[i - 1]) * psi[i - 1];
            else if (boundary == Boundary::Periodic)
                acc -= kappa * std::conj(link[n - 1]) * psi[n - 1];
            return acc;
        };
        for (std::size_t i = 0; i < n; ++i) {
            rhs[i] = psi[i] - alpha * h_apply(i);
            diag[i] = 1.0 + alpha * (2.0 * kappa + v[i]);
        }
        // M+ = 1 + alpha H, so the off-diagonals are alpha * H_offdiag.
        for (std::size_t i = 0; i + 1 < n; ++i) {
            up[i] = alpha * (-kappa * link[i]);
            lo[i + 1] = alpha * (-kappa * std::conj(link[i]));
        }

        if (boundary == Boundary::Dirichlet) {
            solve_tridiagonal(lo, diag, up, rhs);
            psi = rhs;
            return;
        }

        // Periodic: Sherman-Morrison on the cyclic corner terms.
        const Complex corner_up = alpha * (-kappa * link[n - 1]);        // M+(n-1, 0)
        const Complex corner_lo = alpha * (-kappa * std::conj(link[n - 1]));  // M+(0, n-1)
        const Complex gamma = -diag[0];
        std::vector<Complex> d1 = diag, u1 = up, l1 = lo;
        d1[0] -= gamma;
        d1[n - 1] -= corner_up * corner_lo / gamma;
        std::vector<Complex> u_vec(n, Complex(0.0, 0.0));
        u_vec[0] = gamma;
        u_vec[n - 1] = corner_up;

        std::vector<Complex> rhs1 = rhs;
        {
            std::vector<Complex> dd = d1, uu = u1, ll = l1;
            solve_tridiagonal(ll, dd, uu, rhs1);
        }
        std::vector<Complex> q = u_vec;
        {
            std::vector<Complex> dd = d1, uu = u1, ll = l1;
            solve_tridiagonal(ll, dd, uu, q);
        }
        // v_row = (1, 0, ..., 0, corner_lo / gamma)
        const Complex vy = rhs1[0] + (corner_lo / gamma) * rhs1[n - 1];
        const Complex vq = q[0] + (corner_lo / gamma) * q[n - 1];
        const Complex factor = vy / (1.0 + vq);
        for (std::size_t i = 0; i < n; ++i) psi[i] = rhs1[i] - factor * q[i];
    }
};

EvolutionResult run_evolution(const WaveFunction &psi0, const GaugeField &gauge,
                              const UnitSystem &units, double dt, std::size_t steps,
                              std::size_t checkpoint_every) {
    if (!(dt > 0.0)) throw ValidationError("evolve: dt must be positive");
    if (steps == 0) throw ValidationError("evolve: need at least one step");
    if (checkpoint_every == 0 || steps % checkpoint_every != 0)
        throw ValidationError("evolve: steps must be a multiple of checkpoint_every");
    psi0.check_normalized(1e-8);

    EvolutionResult out;
    out.dt = dt;
    out.steps = steps;
    out.checkpoint_every = checkpoint_every;
    out.times.push_back(0.0);
    out.states.push_back(psi0);

    Stepper stepper(psi0, gauge, units, dt);
    std::vector<Complex> psi = psi0.amp;
    double prev_norm = psi0.norm_squared();

    for (std::size_t k = 0; k < steps; ++k) {
        const double t = dt * static_cast<double>(k);
        stepper.step(psi, t);

        double n2 = 0.0;
        for (const Complex &c : psi) n2 += std::norm(c);
        n2 *= psi0.grid.dx;
        if (!std::isfinite(n2)) throw NumericError("evolve: non-finite state (solver breakdown)");
        out.max_step_norm_drift = std::max(out.max_step_norm_drift, std::abs(n2 - prev_norm));
        prev_norm = n2;

        if ((k + 1) % checkpoint_every == 0) {
            out.times.push_back(dt * static_cast<double>(k + 1));
            out.states.emplace_back(psi0.grid, psi0.boundary, psi);
        }
    }
    return out;
}

} // namespace

EvolutionResult evolve(const WaveFunction &psi0, const ScalarField &potential,
                       const UnitSystem &units, double dt, std::size_t steps,
                       std::size_t checkpoint_every) {
    GaugeField g;
    g.V = potential;
    return run_evolution(psi0, g, units, dt, steps, checkpoint_every);
}

EvolutionResult evolve_gauged(const WaveFunction &psi0, const GaugeField &gauge,
                              const UnitSystem &units, double dt, std::size_t steps,
                              std::size_t checkpoint_every) {
    return run_evolution(psi0, gauge, units, dt, steps, checkpoint_every);
}

std::pair<WaveFunction, GaugeField> gauge_transform(const WaveFunction &psi,
                                                    const GaugeField &gauge,
                                                    const GaugeFunction &f, double t,
                                                    const UnitSystem &units) {
    if (!f.f || !f.dfdx || !f.dfdt)
        throw ValidationError("gauge_transform: gauge function lacks derivatives");
    WaveFunction out = psi;
    for (std::size_t i = 0; i < psi.size(); ++i)
        out.amp[i] *= std::polar(1.0, gauge.beta * f.f(psi.grid.x(i), t));

    GaugeField g2;
    g2.beta = gauge.beta;
    const auto A = gauge.A;
    const auto V = gauge.V;
    const auto dfdx = f.dfdx;
    const auto dfdt = f.dfdt;
    const double hb = units.hbar;
    const double beta = gauge.beta;
    g2.A = ScalarField([A, dfdx](double x, double tt) { return A(x, tt) + dfdx(x, tt); }, true);
    g2.V = ScalarField(
        [V, dfdt, hb, beta](double x, double tt) { return V(x, tt) - hb * beta * dfdt(x, tt); },
        true);
    return {std::move(out), std::move(g2)};
}

} // namespace edlab::wave
