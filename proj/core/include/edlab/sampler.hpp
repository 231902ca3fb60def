#pragma once

#include <cstdint>
#include <random>

#include "edlab/evolve.hpp"
#include "edlab/hydro.hpp"
#include "edlab/numeric.hpp"

namespace edlab::sampler {

using wave::EvolutionResult;
using wave::HydroFields;
using wave::WaveFunction;

struct SamplerConfig {
    std::size_t n_traj = 0;
    double dt = 0.0;               // must divide the field-checkpoint spacing
    std::uint64_t seed = 0;
    double escape_limit = 0.01;    // invalid above this escaped fraction
};

/// Stochastic paths recorded at the field checkpoints. Trajectories that
/// leave the domain are frozen at their last interior position and flagged.
struct TrajectoryEnsemble {
    std::uint64_t seed = 0;
    std::vector<double> times;
    std::vector<std::vector<double>> positions;  // [checkpoint][trajectory]
    std::vector<bool> escaped;                   // per trajectory
    std::size_t fluctuation_only_steps = 0;      // steps taken outside the drift mask

    std::size_t n_traj() const { return escaped.size(); }
    double escaped_fraction() const;
};

/// One Euler step of  dx = b dt + dw,  <dw^2> = (hbar/m) dt. The drift is
/// interpolated linearly between grid values; where the mask cuts off, the
/// nearest valid value is used, and fully outside it the step is pure
/// fluctuation (counted in *fluctuation_events).
double sample_step(double x, const HydroFields &fields, const UnitSystem &units, double dt,
                   std::mt19937_64 &rng, std::size_t *fluctuation_events = nullptr);

/// Draw a position from |psi|^2 by inverse CDF on the grid cells (uniform
/// within a cell).
double sample_initial_position(const WaveFunction &psi, std::mt19937_64 &rng);

/// Precomputed inverse-CDF sampler for |psi|^2; draws agree with
/// sample_initial_position on the same stream.
class InitialPositionSampler {
  public:
    explicit InitialPositionSampler(const WaveFunction &psi);
    double operator()(std::mt19937_64 &rng) const;

  private:
    Grid1D grid_;
    std::vector<double> cdf_;  // cumulative cell masses, cdf_[n-1] = total
};

/// Advance n_traj trajectories through a checkpointed field evolution.
/// Fields are piecewise constant between checkpoints; the checkpoint
/// spacing must be an exact multiple (at most 10x) of config.dt. Output is
/// a deterministic function of (seed, n_traj).
TrajectoryEnsemble run_ensemble(const EvolutionResult &fields, const UnitSystem &units,
                                const SamplerConfig &config);

/// Histogram of checkpoint positions over the grid cells, as probability
/// mass per cell.
std::vector<double> checkpoint_histogram(const TrajectoryEnsemble &ens, std::size_t checkpoint,
                                         const Grid1D &grid);

struct EnsembleComparison {
    std::vector<double> l1;        // per checkpoint: L1(histogram, |psi|^2 dx)
    std::vector<Moments> moments;  // per checkpoint: ensemble mean/variance
};

/// Compare an ensemble against the wavefield densities it was sampled from.
EnsembleComparison compare_ensemble(const TrajectoryEnsemble &ens,
                                    const EvolutionResult &fields);

} // namespace edlab::sampler
