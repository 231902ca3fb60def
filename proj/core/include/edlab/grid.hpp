#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "edlab/errors.hpp"

namespace edlab {

/// Uniform 1-D grid of n nodes at x_i = x_min + i*dx. Each node owns the
/// cell [x_i - dx/2, x_i + dx/2); sums weighted by dx are the quadrature
/// used throughout.
struct Grid1D {
    double x_min = 0.0;
    double dx = 0.0;
    std::size_t n = 0;

    Grid1D() = default;
    Grid1D(double x_min, double dx, std::size_t n) : x_min(x_min), dx(dx), n(n) {
        if (!(dx > 0.0)) throw ValidationError("Grid1D: dx must be positive");
        if (n < 8) throw ValidationError("Grid1D: need at least 8 nodes");
        if (!std::isfinite(x_min) || !std::isfinite(dx))
            throw ValidationError("Grid1D: non-finite geometry");
    }

    /// Symmetric grid of n nodes centered on zero.
    static Grid1D centered(double dx, std::size_t n) {
        return Grid1D(-0.5 * dx * static_cast<double>(n - 1), dx, n);
    }

    double x(std::size_t i) const { return x_min + static_cast<double>(i) * dx; }
    double x_max() const { return x(n - 1); }
    double length() const { return static_cast<double>(n) * dx; }

    std::vector<double> points() const {
        std::vector<double> xs(n);
        for (std::size_t i = 0; i < n; ++i) xs[i] = x(i);
        return xs;
    }

    /// Translated copy (same spacing and node count).
    Grid1D shifted(double offset) const { return Grid1D(x_min + offset, dx, n); }

    bool same_geometry(const Grid1D &other, double tol = 1e-12) const {
        return n == other.n && std::abs(dx - other.dx) <= tol * std::abs(dx) &&
               std::abs(x_min - other.x_min) <= tol * std::max(1.0, std::abs(x_min));
    }

    /// Nearest node index for a position inside the domain.
    std::size_t nearest(double xq) const {
        double t = (xq - x_min) / dx;
        if (t < 0.0) return 0;
        auto i = static_cast<std::size_t>(t + 0.5);
        return i >= n ? n - 1 : i;
    }

    bool contains(double xq) const { return xq >= x_min && xq <= x_max(); }
};

/// Physical constants of a scenario. Defaults are natural units with the
/// osmotic mass equal to the current mass.
struct UnitSystem {
    double hbar = 1.0;
    double mass = 1.0;
    double osmotic_mass = 1.0;

    UnitSystem() = default;
    UnitSystem(double hbar, double mass, double osmotic_mass)
        : hbar(hbar), mass(mass), osmotic_mass(osmotic_mass) {
        if (!(hbar > 0.0) || !(mass > 0.0) || !(osmotic_mass > 0.0))
            throw ValidationError("UnitSystem: hbar, mass and osmotic mass must be positive");
    }
};

enum class Boundary { Dirichlet, Periodic };

} // namespace edlab
