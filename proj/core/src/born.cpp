#include "edlab/born.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "edlab/hydro.hpp"
#include "edlab/rng.hpp"

namespace edlab::measure {

namespace {

Complex overlap(const MeasurementDevice &device, std::size_t i, const WaveFunction &psi) {
    const auto &a = device.basis_amplitudes(i);
    Complex acc = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) acc += std::conj(a[k]) * psi.amp[k];
    return acc * device.grid().dx;
}

} // namespace

BornResult born_probabilities(const WaveFunction &psi, const MeasurementDevice &device) {
    if (!psi.grid.same_geometry(device.grid()))
        throw ValidationError("born_probabilities: state and device grids differ");
    psi.check_normalized(1e-8);

    BornResult out;
    out.p.resize(device.n_outcomes());
    double total = 0.0;
    for (std::size_t i = 0; i < device.n_outcomes(); ++i) {
        out.p[i] = std::norm(overlap(device, i, psi));
        total += out.p[i];
    }
    out.no_click = std::max(0.0, 1.0 - total);

    if (device.continuous()) {
        const auto &a = device.eigenvalues();
        out.density.resize(out.p.size());
        for (std::size_t i = 0; i < out.p.size(); ++i) {
            double da;
            if (a.size() == 1)
                da = 1.0;
            else if (i == 0)
                da = a[1] - a[0];
            else if (i + 1 == a.size())
                da = a[i] - a[i - 1];
            else
                da = 0.5 * (a[i + 1] - a[i - 1]);
            out.density[i] = out.p[i] / da;
        }
    }
    return out;
}

WaveFunction apply_device(const WaveFunction &psi, const MeasurementDevice &device) {
    if (!psi.grid.same_geometry(device.grid()))
        throw ValidationError("apply_device: state and device grids differ");
    const std::size_t ng = psi.grid.n;
    const std::size_t n = device.n_outcomes();
    const double sdx = std::sqrt(psi.grid.dx);

    // Work in the l2 scaling u = amp * sqrt(dx); grid deltas become unit
    // coordinate vectors there.
    Eigen::MatrixXcd A(ng, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < ng; ++k)
            A(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) =
                device.basis_amplitudes(i)[k] * sdx;

    Eigen::MatrixXcd X = Eigen::MatrixXcd::Zero(ng, n);
    for (std::size_t i = 0; i < n; ++i)
        X(static_cast<Eigen::Index>(device.pointer_index(i)), static_cast<Eigen::Index>(i)) = 1.0;

    // Orthonormal basis P of the joint subspace starting from the device
    // basis, and R starting from the pointer states, by modified
    // Gram-Schmidt with reorthogonalization.
    auto complete = [&](const Eigen::MatrixXcd &head,
                        const Eigen::MatrixXcd &tail) -> Eigen::MatrixXcd {
        std::vector<Eigen::VectorXcd> cols;
        for (Eigen::Index c = 0; c < head.cols(); ++c) cols.push_back(head.col(c));
        for (Eigen::Index c = 0; c < tail.cols(); ++c) {
            Eigen::VectorXcd v = tail.col(c);
            for (int pass = 0; pass < 2; ++pass)
                for (const auto &q : cols) v -= q * (q.dot(v));
            const double nv = v.norm();
            if (nv > 1e-8) cols.push_back(v / nv);
        }
        Eigen::MatrixXcd out(ng, static_cast<Eigen::Index>(cols.size()));
        for (std::size_t c = 0; c < cols.size(); ++c)
            out.col(static_cast<Eigen::Index>(c)) = cols[c];
        return out;
    };

    const Eigen::MatrixXcd P = complete(A, X);
    const Eigen::MatrixXcd R = complete(X, A);
    if (P.cols() != R.cols())
        throw NumericError("apply_device: inconsistent subspace completion");
    if ((P.adjoint() * P - Eigen::MatrixXcd::Identity(P.cols(), P.cols())).norm() > 1e-10 ||
        (R.adjoint() * R - Eigen::MatrixXcd::Identity(R.cols(), R.cols())).norm() > 1e-10)
        throw NumericError("apply_device: completed map is not unitary within tolerance");

    Eigen::VectorXcd u(ng);
    for (std::size_t k = 0; k < ng; ++k)
        u(static_cast<Eigen::Index>(k)) = psi.amp[k] * sdx;

    // psi' = (I - P P^+) psi + R (P^+ psi): unitary on the subspace,
    // identity on its complement.
    const Eigen::VectorXcd coeffs = P.adjoint() * u;
    const Eigen::VectorXcd v = u - P * coeffs + R * coeffs;

    WaveFunction out = psi;
    for (std::size_t k = 0; k < ng; ++k)
        out.amp[k] = v(static_cast<Eigen::Index>(k)) / sdx;
    return out;
}

OutcomeCounts simulate_outcomes(const WaveFunction &psi, const MeasurementDevice &device,
                                std::uint64_t n_shots, std::uint64_t seed) {
    const BornResult born = born_probabilities(psi, device);

    std::vector<double> weights = born.p;
    weights.push_back(born.no_click);
    std::discrete_distribution<std::size_t> draw(weights.begin(), weights.end());
    std::mt19937_64 rng = stream_rng(seed, 0);

    OutcomeCounts out;
    out.counts.assign(born.p.size(), 0);
    out.shots = n_shots;
    for (std::uint64_t s = 0; s < n_shots; ++s) {
        const std::size_t k = draw(rng);
        if (k < out.counts.size())
            ++out.counts[k];
        else
            ++out.no_click;
    }
    return out;
}

double expectation_value(const WaveFunction &psi, const MeasurementDevice &device,
                         const std::vector<double> &eigenvalues) {
    if (eigenvalues.size() != device.n_outcomes())
        throw ValidationError("expectation_value: eigenvalue count mismatch");
    const BornResult born = born_probabilities(psi, device);
    double acc = 0.0;
    for (std::size_t i = 0; i < eigenvalues.size(); ++i) acc += eigenvalues[i] * born.p[i];
    return acc;
}

WaveFunction filter_update(const WaveFunction &psi, const MeasurementDevice &device,
                           std::size_t outcome) {
    if (outcome >= device.n_outcomes())
        throw ValidationError("filter_update: outcome index out of range");
    const double p = std::norm(overlap(device, outcome, psi));
    if (!(p > 0.0))
        throw InfeasibleError("filter_update: requested outcome has zero probability");
    return device.basis_state(outcome);
}

WaveFunction density_constrained_update(const WaveFunction &psi,
                                        const std::vector<double> &rho_target,
                                        const UnitSystem &units) {
    if (rho_target.size() != psi.size())
        throw ValidationError("density_constrained_update: density size mismatch");
    double total = 0.0;
    for (double r : rho_target) {
        if (!(r >= 0.0))
            throw ValidationError("density_constrained_update: negative target density");
        total += r;
    }
    total *= psi.grid.dx;
    if (std::abs(total - 1.0) > 1e-10)
        throw ValidationError("density_constrained_update: target density is not normalized");

    const wave::HydroFields f = wave::decompose(psi, units);

    // The updated phase needs the old one, so the target may only put
    // negligible mass where the phase is below the floor.
    double spill = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i)
        if (!f.mask[i]) spill += rho_target[i] * psi.grid.dx;
    if (spill > 1e-9)
        throw ValidationError("density_constrained_update: target density puts mass " +
                              std::to_string(spill) + " outside the mask");

    WaveFunction out = psi;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        if (!f.mask[i]) {
            out.amp[i] = std::polar(std::sqrt(rho_target[i]), std::arg(psi.amp[i]));
            continue;
        }
        if (rho_target[i] == 0.0) {
            out.amp[i] = 0.0;
            continue;
        }
        const double phi_new = f.phi[i] - 0.5 * std::log(rho_target[i] / f.rho[i]);
        out.amp[i] = std::polar(std::sqrt(rho_target[i]), phi_new);
    }
    return out;
}

std::vector<double> amplify(const std::vector<double> &position_probs,
                            const AmplifierModel &amplifier) {
    if (position_probs.size() != amplifier.size())
        throw ValidationError("amplify: dimension mismatch");
    const std::size_t n = position_probs.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s) out[r] += amplifier(r, s) * position_probs[s];
    return out;
}

Feasibility preparation_feasibility(const MeasurementDevice &device_a, std::size_t outcome_a,
                                    const MeasurementDevice &device_b, std::size_t outcome_b) {
    if (outcome_a >= device_a.n_outcomes() || outcome_b >= device_b.n_outcomes())
        throw ValidationError("preparation_feasibility: outcome index out of range");
    if (!device_a.grid().same_geometry(device_b.grid()))
        throw ValidationError("preparation_feasibility: device grids differ");

    const auto &a = device_a.basis_amplitudes(outcome_a);
    const auto &b = device_b.basis_amplitudes(outcome_b);
    Complex ov = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) ov += std::conj(a[k]) * b[k];
    ov *= device_a.grid().dx;
    return std::abs(ov) >= 1.0 - 1e-10 ? Feasibility::Feasible : Feasibility::Overconstrained;
}

} // namespace edlab::measure
