#include "edlab/classical.hpp"

#include <cmath>
#include <limits>

#include "edlab/rng.hpp"

namespace edlab::sampler {

ComStepVariance com_step_variance(const HydroFields &fields, const WaveFunction &initial,
                                  const UnitSystem &units, double dt, std::size_t n_particles,
                                  std::size_t n_ensembles, std::uint64_t seed) {
    if (n_particles == 0 || n_ensembles < 2)
        throw ValidationError("com_step_variance: need particles and at least 2 ensembles");

    const InitialPositionSampler draw_initial(initial);
    std::vector<double> dR(n_ensembles, 0.0);
    for (std::size_t e = 0; e < n_ensembles; ++e) {
        std::mt19937_64 rng = stream_rng(seed, e);
        double acc = 0.0;
        for (std::size_t p = 0; p < n_particles; ++p) {
            const double x0 = draw_initial(rng);
            const double x1 = sample_step(x0, fields, units, dt, rng);
            acc += x1 - x0;
        }
        dR[e] = acc / static_cast<double>(n_particles);
    }

    ComStepVariance out;
    out.variance = sample_moments(dR).variance;
    out.expected = units.hbar * dt / (units.mass * static_cast<double>(n_particles));
    out.n_particles = n_particles;
    out.n_ensembles = n_ensembles;
    return out;
}

TrajectoryEnsemble com_ensemble(const EvolutionResult &fields, const UnitSystem &units,
                                const SamplerConfig &config, std::size_t n_particles) {
    if (n_particles == 0) throw ValidationError("com_ensemble: need at least one particle");
    if (config.n_traj == 0) throw ValidationError("com_ensemble: no ensembles requested");
    if (fields.states.size() < 2)
        throw ValidationError("com_ensemble: need at least two field checkpoints");

    const double spacing = fields.times[1] - fields.times[0];
    const double ratio = spacing / config.dt;
    const auto n_sub = static_cast<std::size_t>(std::lround(ratio));
    if (n_sub == 0 || std::abs(ratio - static_cast<double>(n_sub)) > 1e-9)
        throw ValidationError("com_ensemble: dt must divide the field-checkpoint spacing");
    if (n_sub > 10)
        throw ValidationError("com_ensemble: checkpoint spacing exceeds 10 sampler steps");

    const std::size_t n_check = fields.states.size();
    const Grid1D &grid = fields.states[0].grid;
    const double lo = grid.x_min - 0.5 * grid.dx;
    const double hi = grid.x_max() + 0.5 * grid.dx;

    std::vector<HydroFields> tables;
    for (std::size_t k = 0; k + 1 < n_check; ++k)
        tables.push_back(wave::decompose(fields.states[k], units));

    TrajectoryEnsemble ens;
    ens.seed = config.seed;
    ens.times = fields.times;
    ens.positions.assign(n_check, std::vector<double>(config.n_traj, 0.0));
    ens.escaped.assign(config.n_traj, false);

    const InitialPositionSampler draw_initial(fields.states[0]);
    std::vector<double> xs(n_particles);
    for (std::size_t e = 0; e < config.n_traj; ++e) {
        std::mt19937_64 rng = stream_rng(config.seed, e);
        double R = 0.0;
        for (std::size_t p = 0; p < n_particles; ++p) {
            xs[p] = draw_initial(rng);
            R += xs[p];
        }
        ens.positions[0][e] = R / static_cast<double>(n_particles);

        bool frozen = false;
        for (std::size_t k = 0; k + 1 < n_check; ++k) {
            if (!frozen) {
                for (std::size_t s = 0; s < n_sub && !frozen; ++s) {
                    for (std::size_t p = 0; p < n_particles; ++p) {
                        const double xn = sample_step(xs[p], tables[k], units, config.dt,
                                                      rng, &ens.fluctuation_only_steps);
                        if (xn < lo || xn > hi) {
                            frozen = true;
                            ens.escaped[e] = true;
                            break;
                        }
                        xs[p] = xn;
                    }
                }
            }
            double Rk = 0.0;
            for (double v : xs) Rk += v;
            ens.positions[k + 1][e] = Rk / static_cast<double>(n_particles);
        }
    }

    if (ens.escaped_fraction() > config.escape_limit)
        throw ValidationError("com_ensemble: escaped fraction exceeds the configured limit");
    return ens;
}

HamiltonJacobiGap hamilton_jacobi_gap(const WaveFunction &psi, const UnitSystem &units) {
    const wave::HydroFields f = wave::decompose(psi, units);
    const double dx = psi.grid.dx;
    const double c_qp = units.hbar * units.hbar / (2.0 * units.mass);
    const double c_kin = units.hbar * units.hbar / (2.0 * units.mass);

    double mass = 0.0, qp = 0.0, kin = 0.0;
    const std::size_t n = f.size();
    std::vector<double> sq(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) sq[i] = std::sqrt(f.rho[i]);

    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!f.velocity_mask[i]) continue;
        const double w = f.rho[i];
        const double lap = (sq[i + 1] - 2.0 * sq[i] + sq[i - 1]) / (dx * dx);
        const double grad_phi = (f.phi[i + 1] - f.phi[i - 1]) / (2.0 * dx);
        mass += w;
        qp += w * std::abs(c_qp * lap / sq[i]);
        kin += w * c_kin * grad_phi * grad_phi;
    }
    if (mass == 0.0) throw ValidationError("hamilton_jacobi_gap: empty mask");

    HamiltonJacobiGap out;
    out.quantum_term = qp / mass;
    out.kinetic_term = kin / mass;
    if (out.kinetic_term > 0.0) {
        out.ratio = out.quantum_term / out.kinetic_term;
        out.defined = true;
    } else {
        out.ratio = std::numeric_limits<double>::quiet_NaN();
        out.defined = false;
    }
    return out;
}

} // namespace edlab::sampler
