#include "edlab/sampler.hpp"

#include <algorithm>
#include <cmath>

#include "edlab/rng.hpp"

namespace edlab::sampler {

double TrajectoryEnsemble::escaped_fraction() const {
    if (escaped.empty()) return 0.0;
    std::size_t c = 0;
    for (bool e : escaped) c += e ? 1 : 0;
    return static_cast<double>(c) / static_cast<double>(escaped.size());
}

namespace {

/// Drift at x with linear interpolation, falling back to the nearest valid
/// node at mask edges. Returns false when no drift information exists.
bool drift_at(const HydroFields &f, double x, double &b_out) {
    const Grid1D &g = f.grid;
    const double t = (x - g.x_min) / g.dx;
    const auto n = static_cast<long>(g.n);
    long i0 = static_cast<long>(std::floor(t));
    if (i0 < -1 || i0 > n - 1) return false;

    const long i1 = i0 + 1;
    const bool ok0 = i0 >= 0 && i0 < n && f.velocity_mask[static_cast<std::size_t>(i0)];
    const bool ok1 = i1 >= 0 && i1 < n && f.velocity_mask[static_cast<std::size_t>(i1)];
    if (ok0 && ok1) {
        const double w = t - static_cast<double>(i0);
        b_out = (1.0 - w) * f.b[static_cast<std::size_t>(i0)] +
                w * f.b[static_cast<std::size_t>(i1)];
        return true;
    }
    if (ok0) {
        b_out = f.b[static_cast<std::size_t>(i0)];
        return true;
    }
    if (ok1) {
        b_out = f.b[static_cast<std::size_t>(i1)];
        return true;
    }
    return false;
}

} // namespace

double sample_step(double x, const HydroFields &fields, const UnitSystem &units, double dt,
                   std::mt19937_64 &rng, std::size_t *fluctuation_events) {
    double b = 0.0;
    if (!drift_at(fields, x, b)) {
        b = 0.0;
        if (fluctuation_events) ++(*fluctuation_events);
    }
    std::normal_distribution<double> normal(0.0, 1.0);
    const double sigma = std::sqrt(units.hbar * dt / units.mass);
    return x + b * dt + sigma * normal(rng);
}

InitialPositionSampler::InitialPositionSampler(const WaveFunction &psi) : grid_(psi.grid) {
    cdf_.resize(grid_.n);
    double acc = 0.0;
    for (std::size_t i = 0; i < grid_.n; ++i) {
        acc += std::norm(psi.amp[i]) * grid_.dx;
        cdf_[i] = acc;
    }
}

double InitialPositionSampler::operator()(std::mt19937_64 &rng) const {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double target = unif(rng) * cdf_.back();
    const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), target);
    const auto i = static_cast<std::size_t>(
        it == cdf_.end() ? grid_.n - 1 : std::distance(cdf_.begin(), it));
    const double lo = i == 0 ? 0.0 : cdf_[i - 1];
    const double cell = cdf_[i] - lo;
    const double frac = cell > 0.0 ? (target - lo) / cell : 0.5;
    return grid_.x(i) + (frac - 0.5) * grid_.dx;
}

double sample_initial_position(const WaveFunction &psi, std::mt19937_64 &rng) {
    return InitialPositionSampler(psi)(rng);
}

TrajectoryEnsemble run_ensemble(const EvolutionResult &fields, const UnitSystem &units,
                                const SamplerConfig &config) {
    if (config.n_traj == 0) throw ValidationError("run_ensemble: no trajectories requested");
    if (!(config.dt > 0.0)) throw ValidationError("run_ensemble: dt must be positive");
    if (fields.states.size() < 2)
        throw ValidationError("run_ensemble: need at least two field checkpoints");

    const double spacing = fields.times[1] - fields.times[0];
    const double ratio = spacing / config.dt;
    const auto n_sub = static_cast<std::size_t>(std::lround(ratio));
    if (n_sub == 0 || std::abs(ratio - static_cast<double>(n_sub)) > 1e-9)
        throw ValidationError("run_ensemble: dt must divide the field-checkpoint spacing");
    if (n_sub > 10)
        throw ValidationError("run_ensemble: checkpoint spacing exceeds 10 sampler steps");

    const std::size_t n_check = fields.states.size();
    const Grid1D &grid = fields.states[0].grid;
    const double lo = grid.x_min - 0.5 * grid.dx;
    const double hi = grid.x_max() + 0.5 * grid.dx;

    std::vector<HydroFields> tables;
    tables.reserve(n_check - 1);
    for (std::size_t k = 0; k + 1 < n_check; ++k)
        tables.push_back(wave::decompose(fields.states[k], units));

    TrajectoryEnsemble ens;
    ens.seed = config.seed;
    ens.times = fields.times;
    ens.positions.assign(n_check, std::vector<double>(config.n_traj, 0.0));
    ens.escaped.assign(config.n_traj, false);

    const InitialPositionSampler draw_initial(fields.states[0]);
    for (std::size_t j = 0; j < config.n_traj; ++j) {
        std::mt19937_64 rng = stream_rng(config.seed, j);
        double x = draw_initial(rng);
        ens.positions[0][j] = x;
        bool frozen = false;
        for (std::size_t k = 0; k + 1 < n_check; ++k) {
            if (!frozen) {
                for (std::size_t s = 0; s < n_sub; ++s) {
                    const double xn = sample_step(x, tables[k], units, config.dt, rng,
                                                  &ens.fluctuation_only_steps);
                    if (xn < lo || xn > hi) {
                        frozen = true;
                        ens.escaped[j] = true;
                        break;
                    }
                    x = xn;
                }
            }
            ens.positions[k + 1][j] = x;
        }
    }

    if (ens.escaped_fraction() > config.escape_limit)
        throw ValidationError("run_ensemble: escaped fraction " +
                              std::to_string(ens.escaped_fraction()) +
                              " exceeds the configured limit");
    return ens;
}

std::vector<double> checkpoint_histogram(const TrajectoryEnsemble &ens, std::size_t checkpoint,
                                         const Grid1D &grid) {
    if (checkpoint >= ens.positions.size())
        throw ValidationError("checkpoint_histogram: index out of range");
    std::vector<double> h(grid.n, 0.0);
    const auto &xs = ens.positions[checkpoint];
    const double w = 1.0 / static_cast<double>(xs.size());
    for (double x : xs) {
        const double t = (x - grid.x_min) / grid.dx + 0.5;
        long i = static_cast<long>(std::floor(t));
        if (i < 0) i = 0;
        if (i >= static_cast<long>(grid.n)) i = static_cast<long>(grid.n) - 1;
        h[static_cast<std::size_t>(i)] += w;
    }
    return h;
}

EnsembleComparison compare_ensemble(const TrajectoryEnsemble &ens,
                                    const EvolutionResult &fields) {
    if (ens.positions.size() != fields.states.size())
        throw ValidationError("compare_ensemble: checkpoint count mismatch");
    const Grid1D &grid = fields.states[0].grid;

    EnsembleComparison cmp;
    for (std::size_t k = 0; k < ens.positions.size(); ++k) {
        const auto h = checkpoint_histogram(ens, k, grid);
        std::vector<double> target(grid.n);
        const auto rho = fields.states[k].density();
        for (std::size_t i = 0; i < grid.n; ++i) target[i] = rho[i] * grid.dx;
        cmp.l1.push_back(l1_distance(h, target));
        cmp.moments.push_back(sample_moments(ens.positions[k]));
    }
    return cmp;
}

} // namespace edlab::sampler
