#include "edlab/wavefunction.hpp"

#include <cmath>
#include <numbers>

namespace edlab::wave {

WaveFunction::WaveFunction(Grid1D g, Boundary b, std::vector<Complex> a)
    : grid(g), boundary(b), amp(std::move(a)) {
    if (amp.size() != grid.n)
        throw ValidationError("WaveFunction: amplitude count does not match grid");
}

double WaveFunction::norm_squared() const {
    double s = 0.0;
    for (const Complex &c : amp) s += std::norm(c);
    return s * grid.dx;
}

std::vector<double> WaveFunction::density() const {
    std::vector<double> rho(amp.size());
    for (std::size_t i = 0; i < amp.size(); ++i) rho[i] = std::norm(amp[i]);
    return rho;
}

void WaveFunction::check_normalized(double tol) const {
    const double n2 = norm_squared();
    if (std::abs(n2 - 1.0) > tol)
        throw ValidationError("WaveFunction: norm^2 = " + std::to_string(n2) +
                              ", expected 1 within " + std::to_string(tol));
}

void WaveFunction::normalize() {
    const double n = std::sqrt(norm_squared());
    if (!(n > 0.0)) throw ValidationError("WaveFunction: zero norm");
    for (Complex &c : amp) c /= n;
}

Complex inner_product(const WaveFunction &a, const WaveFunction &b) {
    if (!a.grid.same_geometry(b.grid))
        throw ValidationError("inner_product: grids do not match");
    Complex s = 0.0;
    for (std::size_t i = 0; i < a.amp.size(); ++i) s += std::conj(a.amp[i]) * b.amp[i];
    return s * a.grid.dx;
}

WaveFunction gaussian_packet(const Grid1D &grid, double x0, double sigma0, double k0,
                             Boundary boundary) {
    if (!(sigma0 > 0.0)) throw ValidationError("gaussian_packet: sigma0 must be positive");
    if (x0 - grid.x_min < 6.0 * sigma0 || grid.x_max() - x0 < 6.0 * sigma0)
        throw ValidationError("gaussian_packet: needs at least 6 sigma0 of clearance "
                              "from both walls");
    std::vector<Complex> a(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double x = grid.x(i);
        const double d = x - x0;
        a[i] = std::polar(std::exp(-d * d / (4.0 * sigma0 * sigma0)), k0 * x);
    }
    WaveFunction psi(grid, boundary, std::move(a));
    psi.normalize();
    return psi;
}

WaveFunction harmonic_ground_state(const Grid1D &grid, const UnitSystem &units, double omega) {
    if (!(omega > 0.0)) throw ValidationError("harmonic_ground_state: omega must be positive");
    const double a = units.mass * omega / (2.0 * units.hbar);
    std::vector<Complex> amp(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double x = grid.x(i);
        amp[i] = std::exp(-a * x * x);
    }
    WaveFunction psi(grid, Boundary::Dirichlet, std::move(amp));
    psi.normalize();
    return psi;
}

WaveFunction plane_wave(const Grid1D &grid, double k) {
    const double mode = k * grid.length() / (2.0 * std::numbers::pi);
    if (std::abs(mode - std::round(mode)) > 1e-9)
        throw ValidationError("plane_wave: k is not a lattice mode of the periodic grid");
    std::vector<Complex> a(grid.n);
    const double amp = 1.0 / std::sqrt(grid.length());
    for (std::size_t i = 0; i < grid.n; ++i) a[i] = std::polar(amp, k * grid.x(i));
    return WaveFunction(grid, Boundary::Periodic, std::move(a));
}

} // namespace edlab::wave
