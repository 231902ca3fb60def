#include "edlab/device.hpp"

#include <cmath>
#include <numbers>
#include <set>

namespace edlab::measure {

MeasurementDevice::MeasurementDevice(Grid1D grid, Boundary boundary,
                                     std::vector<std::vector<Complex>> basis,
                                     std::vector<std::size_t> pointer_index,
                                     std::vector<double> eigenvalues, bool continuous)
    : grid_(grid), boundary_(boundary), basis_(std::move(basis)),
      pointer_(std::move(pointer_index)), eigenvalues_(std::move(eigenvalues)),
      continuous_(continuous) {
    const std::size_t n = basis_.size();
    if (n == 0) throw ValidationError("MeasurementDevice: empty basis");
    if (pointer_.size() != n)
        throw ValidationError("MeasurementDevice: pointer map size mismatch");
    if (!eigenvalues_.empty() && eigenvalues_.size() != n)
        throw ValidationError("MeasurementDevice: eigenvalue table size mismatch");

    std::set<std::size_t> seen;
    for (std::size_t p : pointer_) {
        if (p >= grid_.n)
            throw ValidationError("MeasurementDevice: pointer position off the grid");
        if (!seen.insert(p).second)
            throw ValidationError("MeasurementDevice: pointer map is not injective");
    }
    if (continuous_) {
        if (eigenvalues_.empty())
            throw ValidationError("MeasurementDevice: continuous device needs eigenvalues");
        for (std::size_t i = 1; i < eigenvalues_.size(); ++i)
            if (eigenvalues_[i] <= eigenvalues_[i - 1])
                throw ValidationError(
                    "MeasurementDevice: continuous eigenvalue map must be monotone");
    }

    const double dx = grid_.dx;
    for (std::size_t i = 0; i < n; ++i) {
        if (basis_[i].size() != grid_.n)
            throw ValidationError("MeasurementDevice: basis state size mismatch");
        for (std::size_t j = i; j < n; ++j) {
            Complex ov = 0.0;
            for (std::size_t k = 0; k < grid_.n; ++k)
                ov += std::conj(basis_[i][k]) * basis_[j][k];
            ov *= dx;
            const double want = i == j ? 1.0 : 0.0;
            if (std::abs(ov - want) > 1e-10)
                throw ValidationError("MeasurementDevice: basis is not orthonormal (deviation " +
                                      std::to_string(std::abs(ov - want)) + ")");
        }
    }
}

WaveFunction MeasurementDevice::basis_state(std::size_t i) const {
    return WaveFunction(grid_, boundary_, basis_[i]);
}

MeasurementDevice MeasurementDevice::harmonic(const Grid1D &grid, const UnitSystem &units,
                                              double omega, std::size_t n,
                                              std::vector<std::size_t> pointer_index) {
    if (n == 0) throw ValidationError("harmonic device: need at least one state");
    const double s = std::sqrt(units.mass * omega / units.hbar);

    // Normalized eigenfunction recurrence
    //   phi_{k+1}(x) = sqrt(2/(k+1)) xi phi_k - sqrt(k/(k+1)) phi_{k-1},
    // with xi = s x and phi_0 a normalized Gaussian.
    std::vector<std::vector<Complex>> basis(n, std::vector<Complex>(grid.n));
    std::vector<double> prev(grid.n, 0.0), cur(grid.n, 0.0);
    const double norm0 = std::sqrt(s) / std::pow(std::numbers::pi, 0.25);
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double xi = s * grid.x(i);
        cur[i] = norm0 * std::exp(-0.5 * xi * xi);
        basis[0][i] = cur[i];
    }
    for (std::size_t k = 1; k < n; ++k) {
        std::vector<double> next(grid.n);
        const double a = std::sqrt(2.0 / static_cast<double>(k));
        const double b = std::sqrt(static_cast<double>(k - 1) / static_cast<double>(k));
        for (std::size_t i = 0; i < grid.n; ++i) {
            const double xi = s * grid.x(i);
            next[i] = a * xi * cur[i] - b * prev[i];
        }
        prev = cur;
        cur = next;
        for (std::size_t i = 0; i < grid.n; ++i) basis[k][i] = cur[i];
    }

    if (pointer_index.empty()) {
        // Evenly spaced pointer slots across the grid.
        pointer_index.resize(n);
        for (std::size_t k = 0; k < n; ++k)
            pointer_index[k] = (k + 1) * grid.n / (n + 1);
    }
    std::vector<double> eigenvalues(n);
    for (std::size_t k = 0; k < n; ++k)
        eigenvalues[k] = units.hbar * omega * (static_cast<double>(k) + 0.5);
    return MeasurementDevice(grid, Boundary::Dirichlet, std::move(basis),
                             std::move(pointer_index), std::move(eigenvalues), false);
}

MeasurementDevice MeasurementDevice::grid_deltas(const Grid1D &grid,
                                                 std::vector<std::size_t> nodes) {
    if (nodes.empty()) throw ValidationError("grid_deltas: need at least one node");
    const double amp = 1.0 / std::sqrt(grid.dx);
    std::vector<std::vector<Complex>> basis(nodes.size(),
                                            std::vector<Complex>(grid.n, Complex(0.0, 0.0)));
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        if (nodes[k] >= grid.n) throw ValidationError("grid_deltas: node off the grid");
        basis[k][nodes[k]] = amp;
    }
    std::vector<double> eigenvalues(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) eigenvalues[k] = grid.x(nodes[k]);
    return MeasurementDevice(grid, Boundary::Dirichlet, std::move(basis), nodes,
                             std::move(eigenvalues), false);
}

MeasurementDevice MeasurementDevice::plane_waves(const Grid1D &grid, const UnitSystem &units,
                                                 std::vector<long> modes,
                                                 std::vector<std::size_t> pointer_index) {
    if (modes.empty()) throw ValidationError("plane_waves: need at least one mode");
    const double L = grid.length();
    const double amp = 1.0 / std::sqrt(L);
    std::vector<std::vector<Complex>> basis(modes.size(), std::vector<Complex>(grid.n));
    std::vector<double> eigenvalues(modes.size());
    for (std::size_t m = 0; m < modes.size(); ++m) {
        const double k = 2.0 * std::numbers::pi * static_cast<double>(modes[m]) / L;
        for (std::size_t i = 0; i < grid.n; ++i)
            basis[m][i] = std::polar(amp, k * grid.x(i));
        eigenvalues[m] = units.hbar * k;
    }
    if (pointer_index.empty()) {
        pointer_index.resize(modes.size());
        for (std::size_t m = 0; m < modes.size(); ++m)
            pointer_index[m] = (m + 1) * grid.n / (modes.size() + 1);
    }
    return MeasurementDevice(grid, Boundary::Periodic, std::move(basis),
                             std::move(pointer_index), std::move(eigenvalues), true);
}

AmplifierModel::AmplifierModel(std::vector<std::vector<double>> matrix) : m_(std::move(matrix)) {
    const std::size_t n = m_.size();
    if (n == 0) throw ValidationError("AmplifierModel: empty matrix");
    for (const auto &row : m_)
        if (row.size() != n) throw ValidationError("AmplifierModel: matrix must be square");
    for (std::size_t s = 0; s < n; ++s) {
        double col = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            if (!(m_[r][s] >= 0.0)) throw ValidationError("AmplifierModel: negative entry");
            col += m_[r][s];
        }
        if (std::abs(col - 1.0) > 1e-10)
            throw ValidationError("AmplifierModel: column " + std::to_string(s) +
                                  " is not stochastic");
    }
}

AmplifierModel AmplifierModel::identity(std::size_t n) {
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1.0;
    return AmplifierModel(std::move(m));
}

AmplifierModel AmplifierModel::near_diagonal(std::size_t n, double diag) {
    if (n < 1 || diag < 0.0 || diag > 1.0)
        throw ValidationError("AmplifierModel: bad near-diagonal spec");
    const double off = n > 1 ? (1.0 - diag) / static_cast<double>(n - 1) : 0.0;
    std::vector<std::vector<double>> m(n, std::vector<double>(n, off));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = n > 1 ? diag : 1.0;
    return AmplifierModel(std::move(m));
}

double AmplifierModel::min_diagonal() const {
    double d = 1.0;
    for (std::size_t i = 0; i < m_.size(); ++i) d = std::min(d, m_[i][i]);
    return d;
}

} // namespace edlab::measure
