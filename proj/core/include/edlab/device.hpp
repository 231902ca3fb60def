#pragma once

#include "edlab/wavefunction.hpp"

namespace edlab::measure {

using wave::Complex;
using wave::WaveFunction;

/// A measurement device: n orthonormal states on a grid, each mapped to a
/// distinct pointer position (a grid node). Devices modeling a continuous
/// spectrum carry a monotone eigenvalue table and report densities per
/// unit eigenvalue.
class MeasurementDevice {
  public:
    MeasurementDevice(Grid1D grid, Boundary boundary,
                      std::vector<std::vector<Complex>> basis,
                      std::vector<std::size_t> pointer_index,
                      std::vector<double> eigenvalues = {}, bool continuous = false);

    std::size_t n_outcomes() const { return basis_.size(); }
    const Grid1D &grid() const { return grid_; }
    Boundary boundary() const { return boundary_; }

    const std::vector<Complex> &basis_amplitudes(std::size_t i) const { return basis_[i]; }
    WaveFunction basis_state(std::size_t i) const;

    std::size_t pointer_index(std::size_t i) const { return pointer_[i]; }
    double pointer_position(std::size_t i) const { return grid_.x(pointer_[i]); }

    bool has_eigenvalues() const { return !eigenvalues_.empty(); }
    double eigenvalue(std::size_t i) const { return eigenvalues_[i]; }
    const std::vector<double> &eigenvalues() const { return eigenvalues_; }
    bool continuous() const { return continuous_; }

    /// Eigenstates 0..n-1 of the harmonic well (1/2) m omega^2 x^2.
    static MeasurementDevice harmonic(const Grid1D &grid, const UnitSystem &units,
                                      double omega, std::size_t n,
                                      std::vector<std::size_t> pointer_index = {});

    /// Position states at the given nodes (grid deltas).
    static MeasurementDevice grid_deltas(const Grid1D &grid, std::vector<std::size_t> nodes);

    /// Plane waves on a periodic grid; eigenvalues are hbar k, making this
    /// a discretized continuous-spectrum momentum device.
    static MeasurementDevice plane_waves(const Grid1D &grid, const UnitSystem &units,
                                         std::vector<long> modes,
                                         std::vector<std::size_t> pointer_index = {});

  private:
    Grid1D grid_;
    Boundary boundary_;
    std::vector<std::vector<Complex>> basis_;
    std::vector<std::size_t> pointer_;
    std::vector<double> eigenvalues_;
    bool continuous_ = false;
};

/// Pointer-readout reliability: entry (r, s) is P(alpha_r | x_s); columns
/// are normalized. A good amplifier is nearly diagonal.
class AmplifierModel {
  public:
    explicit AmplifierModel(std::vector<std::vector<double>> matrix);

    static AmplifierModel identity(std::size_t n);
    /// diag on the diagonal, the remainder spread evenly off-diagonal.
    static AmplifierModel near_diagonal(std::size_t n, double diag);

    std::size_t size() const { return m_.size(); }
    double operator()(std::size_t r, std::size_t s) const { return m_[r][s]; }
    double min_diagonal() const;
    bool is_good(double threshold = 0.99) const { return min_diagonal() >= threshold; }

  private:
    std::vector<std::vector<double>> m_;
};

} // namespace edlab::measure
