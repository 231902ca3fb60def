#pragma once

#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "edlab/distribution.hpp"
#include "edlab/wavefunction.hpp"

// Test-side oracles, deliberately independent of the library paths they
// check.
namespace oracle {

/// -sum p log(p/q) by direct summation.
inline double relative_entropy(const std::vector<double> &p, const std::vector<double> &q) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0.0) continue;
        s -= p[i] * std::log(p[i] / q[i]);
    }
    return s;
}

/// Momentum moments by naive quadratic-time DFT on the grid lattice modes.
struct SpectralMoments {
    double p_mean = 0.0;
    double p2_mean = 0.0;
};

inline SpectralMoments dft_momentum(const edlab::wave::WaveFunction &psi, double hbar) {
    const std::size_t n = psi.size();
    const double dx = psi.grid.dx;
    const double dk = 2.0 * std::numbers::pi / (static_cast<double>(n) * dx);
    double total = 0.0, m1 = 0.0, m2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double jj = (j <= n / 2) ? static_cast<double>(j)
                                       : static_cast<double>(j) - static_cast<double>(n);
        const double k = dk * jj;
        std::complex<double> acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double angle = -2.0 * std::numbers::pi * static_cast<double>(j) *
                                 static_cast<double>(i) / static_cast<double>(n);
            acc += psi.amp[i] * std::polar(1.0, angle);
        }
        const double w = std::norm(acc);
        total += w;
        m1 += w * hbar * k;
        m2 += w * hbar * k * hbar * k;
    }
    return {m1 / total, m2 / total};
}

/// <x> and Var x by direct quadrature.
inline std::pair<double, double> position_moments(const edlab::wave::WaveFunction &psi) {
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        const double rho = std::norm(psi.amp[i]);
        const double x = psi.grid.x(i);
        m1 += rho * x;
        m2 += rho * x * x;
    }
    m1 *= psi.grid.dx;
    m2 *= psi.grid.dx;
    return {m1, m2 - m1 * m1};
}

/// Random probability vector (normalized exponentials; strictly positive).
inline std::vector<double> random_probabilities(std::mt19937_64 &rng, std::size_t n) {
    std::uniform_real_distribution<double> unif(0.05, 1.0);
    std::vector<double> p(n);
    double total = 0.0;
    for (double &v : p) {
        v = unif(rng);
        total += v;
    }
    for (double &v : p) v /= total;
    return p;
}

/// Free-particle Gaussian spread law.
inline double gaussian_variance_at(double sigma0, double t, double hbar, double mass) {
    return sigma0 * sigma0 + hbar * hbar * t * t / (4.0 * mass * mass * sigma0 * sigma0);
}

} // namespace oracle
