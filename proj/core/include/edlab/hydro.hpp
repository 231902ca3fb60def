#pragma once

#include "edlab/wavefunction.hpp"

namespace edlab::wave {

/// Hydrodynamic decomposition of a wave function: density, unwrapped
/// phase, current/osmotic/drift velocities and the entropy field
/// S = phi + (1/2) log rho. Everything below rho_min is masked out; the
/// velocity fields additionally require both neighbors in the mask.
struct HydroFields {
    Grid1D grid;
    double rho_min = 0.0;
    std::vector<double> rho;
    std::vector<double> phi;       // unwrapped where masked in, NaN outside
    std::vector<double> v;         // current velocity (hbar/m) dphi/dx
    std::vector<double> u;         // osmotic velocity -(hbar/2m) dlog(rho)/dx
    std::vector<double> b;         // drift velocity, b = v - u
    std::vector<double> entropy;   // S = phi + log sqrt(rho)
    std::vector<bool> mask;        // rho >= rho_min
    std::vector<bool> velocity_mask;  // mask with both neighbors masked in

    std::size_t size() const { return rho.size(); }
};

/// Default density floor below which the phase is treated as undefined.
inline double default_rho_min(const Grid1D &g) { return 1e-12 / g.dx; }

/// Decompose psi. The phase is unwrapped by accumulating principal-value
/// phase differences outward from the densest point of each masked-in
/// component. Throws ValidationError when no point clears rho_min.
HydroFields decompose(const WaveFunction &psi, const UnitSystem &units, double rho_min = -1.0);

/// Rebuild a wave function from (rho, phi); inverse of decompose up to a
/// global phase on the mask.
WaveFunction recompose(const HydroFields &fields, Boundary boundary,
                       const UnitSystem &units);

} // namespace edlab::wave
