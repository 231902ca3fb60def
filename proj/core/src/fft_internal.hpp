#pragma once

#include <complex>
#include <numbers>
#include <vector>

#include <fftw3.h>

namespace edlab::wave::detail {

/// Unnormalized forward DFT.
inline std::vector<std::complex<double>> dft_forward(const std::vector<std::complex<double>> &in) {
    const int n = static_cast<int>(in.size());
    std::vector<std::complex<double>> out(in.size());
    fftw_plan plan = fftw_plan_dft_1d(
        n,
        reinterpret_cast<fftw_complex *>(const_cast<std::complex<double> *>(in.data())),
        reinterpret_cast<fftw_complex *>(out.data()), FFTW_FORWARD,
        FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    return out;
}

inline std::vector<std::complex<double>> dft_backward(const std::vector<std::complex<double>> &in) {
    const int n = static_cast<int>(in.size());
    std::vector<std::complex<double>> out(in.size());
    fftw_plan plan = fftw_plan_dft_1d(
        n,
        reinterpret_cast<fftw_complex *>(const_cast<std::complex<double> *>(in.data())),
        reinterpret_cast<fftw_complex *>(out.data()), FFTW_BACKWARD,
        FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    for (auto &c : out) c /= static_cast<double>(n);
    return out;
}

/// Wavenumber of DFT bin j on a ring of n cells of width dx.
inline std::vector<double> wavenumbers(std::size_t n, double dx) {
    std::vector<double> k(n);
    const double dk = 2.0 * std::numbers::pi / (static_cast<double>(n) * dx);
    for (std::size_t j = 0; j < n; ++j) {
        const double jj = (j <= n / 2) ? static_cast<double>(j)
                                       : static_cast<double>(j) - static_cast<double>(n);
        k[j] = dk * jj;
    }
    return k;
}

/// Spectral d/dx, treating the samples as periodic. Accurate to roundoff
/// for fields that decay below roundoff at the domain edges.
inline std::vector<std::complex<double>> spectral_derivative(
    const std::vector<std::complex<double>> &in, double dx) {
    auto hat = dft_forward(in);
    const auto k = wavenumbers(in.size(), dx);
    for (std::size_t j = 0; j < hat.size(); ++j)
        hat[j] *= std::complex<double>(0.0, k[j]);
    return dft_backward(hat);
}

} // namespace edlab::wave::detail
