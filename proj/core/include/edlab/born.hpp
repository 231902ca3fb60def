#pragma once

#include <cstdint>

#include "edlab/device.hpp"

namespace edlab::measure {

struct BornResult {
    /// p_i = |<a_i|psi>|^2 per outcome.
    std::vector<double> p;
    /// Probability mass outside the device subspace. Grids truncate
    /// spectra; reporting the leak beats silently renormalizing it away.
    double no_click = 0.0;
    /// For continuous-spectrum devices: probability density per unit
    /// eigenvalue, p_i / delta_a_i. Empty otherwise.
    std::vector<double> density;
};

/// Outcome probabilities by direct overlap with the device basis.
BornResult born_probabilities(const WaveFunction &psi, const MeasurementDevice &device);

/// Send psi through the device unitary U (U|a_i> = |x_i>, completed
/// unitarily on the rest of the spanned subspace). The pointer-position
/// distribution of the result equals born_probabilities(psi, device);
/// that agreement is the derived form of the Born rule.
WaveFunction apply_device(const WaveFunction &psi, const MeasurementDevice &device);

struct OutcomeCounts {
    std::vector<std::uint64_t> counts;  // per outcome
    std::uint64_t no_click = 0;
    std::uint64_t shots = 0;
};

/// Multinomial sampling of outcomes; deterministic per seed.
OutcomeCounts simulate_outcomes(const WaveFunction &psi, const MeasurementDevice &device,
                                std::uint64_t n_shots, std::uint64_t seed);

/// sum_i lambda_i p_i.
double expectation_value(const WaveFunction &psi, const MeasurementDevice &device,
                         const std::vector<double> &eigenvalues);

/// Post-selection on outcome k followed by inverse evolution: the state
/// leaving the apparatus is the eigenstate |a_k>. Errors when p_k = 0.
WaveFunction filter_update(const WaveFunction &psi, const MeasurementDevice &device,
                           std::size_t outcome);

/// Replace the density with rho_target while leaving the entropy field
/// S = phi + log sqrt(rho) untouched:
///   psi' = sqrt(rho_target) exp(i phi'),  phi' = phi - (1/2) log(rho_target/rho).
/// rho_target must be normalized and supported inside the mask of psi.
WaveFunction density_constrained_update(const WaveFunction &psi,
                                        const std::vector<double> &rho_target,
                                        const UnitSystem &units);

/// Pointer-state probabilities P(alpha_r) = sum_s P(alpha_r|x_s) P(x_s).
std::vector<double> amplify(const std::vector<double> &position_probs,
                            const AmplifierModel &amplifier);

enum class Feasibility { Feasible, Overconstrained };

/// Can a state be prepared that yields outcome a with device A and outcome
/// b with device B, both with certainty? Only when the two eigenstates
/// coincide up to a global phase.
Feasibility preparation_feasibility(const MeasurementDevice &device_a, std::size_t outcome_a,
                                    const MeasurementDevice &device_b, std::size_t outcome_b);

} // namespace edlab::measure
