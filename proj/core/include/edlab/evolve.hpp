#pragma once

#include <functional>

#include "edlab/expression.hpp"
#include "edlab/wavefunction.hpp"

namespace edlab::wave {

/// Scalar field of (x, t). Fields that do not depend on t are sampled once
/// per run instead of once per step.
class ScalarField {
  public:
    ScalarField() : fn_([](double, double) { return 0.0; }), static_(true) {}
    ScalarField(std::function<double(double, double)> fn, bool time_dependent)
        : fn_(std::move(fn)), static_(!time_dependent) {}

    static ScalarField zero() { return ScalarField(); }
    static ScalarField constant(double v) {
        return ScalarField([v](double, double) { return v; }, false);
    }
    static ScalarField from_expression(const Expression &e) {
        return ScalarField([e](double x, double t) { return e(x, t); }, e.depends_on_t());
    }

    double operator()(double x, double t) const { return fn_(x, t); }
    bool is_static() const { return static_; }

  private:
    std::function<double(double, double)> fn_;
    bool static_ = true;
};

/// Minimal-coupling field: vector potential A(x,t), scalar potential
/// V(x,t) and the coupling beta = e/(hbar c). The Hamiltonian is
/// (p - hbar beta A)^2 / 2m + V, discretized with link phases so that a
/// spatially polynomial gauge change costs nothing.
struct GaugeField {
    double beta = 0.0;
    ScalarField A = ScalarField::zero();
    ScalarField V = ScalarField::zero();
};

/// Gauge function f(x,t) with its partial derivatives. The finite-difference
/// factory uses 4th-order stencils with the given step.
struct GaugeFunction {
    std::function<double(double, double)> f;
    std::function<double(double, double)> dfdx;
    std::function<double(double, double)> dfdt;

    static GaugeFunction analytic(std::function<double(double, double)> f,
                                  std::function<double(double, double)> dfdx,
                                  std::function<double(double, double)> dfdt);
    static GaugeFunction from_expression(const Expression &e, double h);
};

/// Checkpointed trajectory of an evolution.
struct EvolutionResult {
    double dt = 0.0;
    std::size_t steps = 0;
    std::size_t checkpoint_every = 0;
    std::vector<double> times;            // includes t = 0
    std::vector<WaveFunction> states;
    double max_step_norm_drift = 0.0;     // max |norm^2(k) - norm^2(k-1)|
};

/// Crank-Nicolson propagation under a scalar potential. Exactly unitary up
/// to roundoff; second order in dt and dx. `steps` must be a multiple of
/// `checkpoint_every`.
EvolutionResult evolve(const WaveFunction &psi0, const ScalarField &potential,
                       const UnitSystem &units, double dt, std::size_t steps,
                       std::size_t checkpoint_every);

/// Crank-Nicolson propagation with minimal coupling to a gauge field.
/// With A = 0 and beta = 0 this reproduces evolve() exactly.
EvolutionResult evolve_gauged(const WaveFunction &psi0, const GaugeField &gauge,
                              const UnitSystem &units, double dt, std::size_t steps,
                              std::size_t checkpoint_every);

/// Local gauge transformation at time t:
///   psi' = exp(i beta f) psi,  A' = A + df/dx,  V' = V - hbar beta df/dt.
/// Evolving (psi, gauge) and (psi', gauge') gives identical densities.
std::pair<WaveFunction, GaugeField> gauge_transform(const WaveFunction &psi,
                                                    const GaugeField &gauge,
                                                    const GaugeFunction &f, double t,
                                                    const UnitSystem &units);

} // namespace edlab::wave
