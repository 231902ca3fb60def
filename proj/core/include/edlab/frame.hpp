#pragma once

#include "edlab/diagnostics.hpp"
#include "edlab/evolve.hpp"
#include "edlab/expression.hpp"

namespace edlab::frames {

using wave::EvolutionResult;
using wave::ScalarField;
using wave::WaveFunction;

/// Rigid displacement xi(t) of a moving frame, with its first two time
/// derivatives. Presets carry closed forms; expression-backed motions use
/// 4th-order finite differences with step h.
struct FrameMotion {
    std::function<double(double)> xi;
    std::function<double(double)> xi_dot;
    std::function<double(double)> xi_ddot;

    static FrameMotion constant_velocity(double v0);
    static FrameMotion constant_acceleration(double g);
    static FrameMotion from_expression(const Expression &e, double h);
};

/// Entropy/phase shift between the frames,
///   dS = (m/hbar) (xi_dot(t) x~ + c(t)),  c(t) = -1/2 int_0^t xi_dot^2,
/// with the integral done by composite Simpson (`panels` panels).
double phase_shift(const FrameMotion &motion, const UnitSystem &units, double x_tilde,
                   double t, std::size_t panels = 256);

/// Closed forms for the two standard special cases.
double phase_shift_boost(const UnitSystem &units, double v0, double x_tilde, double t);
double phase_shift_uniform_acceleration(const UnitSystem &units, double g, double x_tilde,
                                        double t);

/// State seen by the moving observer at time t: densities transported
/// pointwise onto the grid translated by xi(t), phase shifted by dS.
WaveFunction transform_state(const WaveFunction &psi, const FrameMotion &motion,
                             const UnitSystem &units, double t, std::size_t panels = 256);

/// Potential in the moving frame:  V~(x~, t) = V(x~ - xi(t), t) - m xi_ddot(t) x~.
ScalarField transformed_potential(const ScalarField &potential, const FrameMotion &motion,
                                  const UnitSystem &units);

struct SymmetryReport {
    std::vector<double> times;
    /// max_x |rho~(x~, t) - rho(x, t)| * dx per checkpoint.
    std::vector<double> density_residual;
    double max_density_residual = 0.0;
    /// Density-weighted RMS of the wrapped difference between the measured
    /// inter-frame phase shift and dS, with the global phase removed.
    double phase_residual = 0.0;
    /// Checkpoint displacements in cells.
    std::vector<long> shifts;
};

/// Evolve the same initial state in both frames (identical grid spacing
/// and time step) and compare the moving-frame run against the transported
/// rest-frame run. Checkpoint displacements must land on whole cells.
SymmetryReport verify_symmetry(const WaveFunction &psi0, const ScalarField &potential,
                               const FrameMotion &motion, const UnitSystem &units, double dt,
                               std::size_t steps, std::size_t checkpoint_every);

struct ProperTimeResidue {
    double lhs = 0.0;  // (1/2c^2) int xi_dot^2
    double rhs = 0.0;  // T - int sqrt(1 - xi_dot^2/c^2)
    double gap = 0.0;  // rhs - lhs, vanishing as (xi_dot/c)^4
};

/// First-order proper-time bookkeeping of the moving observer. Requires
/// max |xi_dot|/c <= 0.3 over [0, T].
ProperTimeResidue proper_time_residue(const FrameMotion &motion, double c_light, double T,
                                      std::size_t panels = 512);

} // namespace edlab::frames
