#pragma once

#include "edlab/evolve.hpp"
#include "edlab/hydro.hpp"

namespace edlab::wave {

/// Total energy  E = int rho [ (hbar^2/2m)(dphi)^2
///                           + (mu hbar^2/8m^2)(dlog rho)^2 + V ] dx,
/// evaluated with spectral derivatives of psi.
double energy(const WaveFunction &psi, const ScalarField &potential, const UnitSystem &units,
              double t = 0.0);

/// E at every checkpoint of a trajectory.
std::vector<double> energy_series(const EvolutionResult &traj, const ScalarField &potential,
                                  const UnitSystem &units);

/// max_k |E(t_k) - E(0)| / |E(0)| for a static potential.
double energy_drift(const EvolutionResult &traj, const ScalarField &potential,
                    const UnitSystem &units);

/// For a driven potential: compares dE/dt (centered differences on the
/// checkpoint series) with int rho dV/dt. Returns the largest relative
/// mismatch over interior checkpoints.
double driven_energy_mismatch(const EvolutionResult &traj, const ScalarField &potential,
                              const UnitSystem &units);

/// Continuity-equation residual  r = d rho/dt + d(v rho)/dx  at each
/// interior checkpoint, reported as a density-weighted RMS over the
/// velocity mask. Needs at least 3 checkpoints. Second order in (dx, dt).
std::vector<double> fokker_planck_residual(const EvolutionResult &traj,
                                           const UnitSystem &units, double rho_min = -1.0);

/// Residual of  hbar dphi/dt + (hbar^2/2m)(dphi)^2 + V
///              - (mu hbar^2/2m^2) (d^2 sqrt(rho)/dx^2)/sqrt(rho) = 0
/// for each consecutive checkpoint pair (evaluated at the midpoint),
/// reported as a density-weighted RMS.
std::vector<double> phase_equation_residual(const EvolutionResult &traj,
                                            const ScalarField &potential,
                                            const UnitSystem &units, double rho_min = -1.0);

} // namespace edlab::wave
