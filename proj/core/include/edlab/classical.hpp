#pragma once

#include "edlab/sampler.hpp"

namespace edlab::sampler {

/// Variance of a single center-of-mass step of N independent identical
/// particles, estimated over n_ensembles repetitions. For large N this
/// approaches (hbar dt / m) / N.
struct ComStepVariance {
    double variance = 0.0;
    double expected = 0.0;  // (hbar dt / m) / N
    std::size_t n_particles = 0;
    std::size_t n_ensembles = 0;
};

ComStepVariance com_step_variance(const HydroFields &fields, const WaveFunction &initial,
                                  const UnitSystem &units, double dt, std::size_t n_particles,
                                  std::size_t n_ensembles, std::uint64_t seed);

/// Center-of-mass paths of ensembles of N independent identical particles
/// advancing through the same field evolution. With N = 1 this reproduces
/// run_ensemble exactly (same streams, same draws).
TrajectoryEnsemble com_ensemble(const EvolutionResult &fields, const UnitSystem &units,
                                const SamplerConfig &config, std::size_t n_particles);

/// Size of the quantum-potential term of the phase equation relative to
/// the kinetic term, both averaged over the density. Large mass and smooth
/// states drive the ratio to zero, recovering Hamilton-Jacobi motion.
struct HamiltonJacobiGap {
    double quantum_term = 0.0;  // < | (hbar^2/2M) (d^2 sqrt(rho)/dx^2)/sqrt(rho) | >
    double kinetic_term = 0.0;  // < (1/2M) (dS_HJ/dx)^2 >,  S_HJ = hbar phi
    double ratio = 0.0;
    bool defined = false;       // false when the kinetic term vanishes
};

HamiltonJacobiGap hamilton_jacobi_gap(const WaveFunction &psi, const UnitSystem &units);

} // namespace edlab::sampler
