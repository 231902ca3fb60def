#pragma once

#include "edlab/wavefunction.hpp"

namespace edlab::wave {

/// Momentum and position statistics of a state, with the hydrodynamic
/// split of the momentum variance: Var p = Var(m v) + m^2 <u^2>.
struct MomentumStats {
    double p_mean = 0.0;   // <p>, spectral
    double p_var = 0.0;    // Var p, spectral
    double x_mean = 0.0;
    double x_var = 0.0;
    double v_mean = 0.0;   // density-weighted mean current velocity
    double mv_var = 0.0;   // m^2 Var(v)
    double mu2_mean = 0.0; // m^2 <u^2>
};

/// Computes the table above. For Dirichlet states the density must have
/// decayed at the walls (combined edge mass <= boundary_tol), otherwise the
/// osmotic moments are unreliable and a ValidationError is thrown.
MomentumStats momentum_stats(const WaveFunction &psi, const UnitSystem &units,
                             double boundary_tol = 1e-10);

} // namespace edlab::wave
