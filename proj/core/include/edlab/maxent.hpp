#pragma once

#include <optional>
#include <string>
#include <vector>

#include "edlab/distribution.hpp"

namespace edlab::inference {

/// Expectation-value constraint <f> = target, with f sampled on the
/// support of the prior. Normalization is always implicit.
struct MomentConstraint {
    std::vector<double> f;
    double target = 0.0;
    std::string label;

    static MomentConstraint sampled(std::vector<double> f, double target,
                                    std::string label = "");
    static MomentConstraint of(const Distribution &prior,
                               const std::function<double(double)> &f, double target,
                               std::string label = "");
};

/// Central-variance constraint <(x - c)^2> = sigma2. With a fixed center
/// this is an ordinary moment constraint. With the center left free the
/// information does not single out a posterior: every center gives a
/// maximizer of equal entropy, and the solver reports the system as
/// underconstrained.
struct CentralVarianceConstraint {
    double sigma2 = 0.0;
    std::optional<double> center;
};

struct ConstraintSet {
    std::vector<MomentConstraint> moments;
    std::optional<CentralVarianceConstraint> central_variance;

    ConstraintSet() = default;
    ConstraintSet(std::initializer_list<MomentConstraint> ms) : moments(ms) {}
};

enum class Classification { Well, Fully, Over, Under };
std::string to_string(Classification c);

struct MaxEntSolution {
    Classification classification = Classification::Well;
    /// Absent when the system is overconstrained.
    std::optional<Distribution> posterior;
    /// Multipliers for the Newton-solved constraints, aligned with the
    /// constraint list passed in; NaN for constraints that were resolved
    /// by support restriction (their multipliers are not finite).
    std::vector<double> multipliers;
    double log_partition = 0.0;
    /// S[posterior, prior]; 0 only when the posterior equals the prior.
    double achieved_entropy = 0.0;
    /// Largest |<f_r> - F_r| over the constraints.
    double residual = 0.0;
    std::size_t iterations = 0;
    /// Dual objective after each accepted Newton step (non-increasing).
    std::vector<double> dual_trace;
    std::string diagnostic;
};

struct MaxEntOptions {
    double tol = 1e-10;          // convergence: constraint residual inf-norm
    std::size_t max_iter = 200;  // Newton iterations
    double multiplier_limit = 1e8;
    double boundary_tol = 1e-12; // target at the edge of the range of f
    double rank_tol = 1e-10;     // Hessian eigenvalue ratio for degeneracy
};

/// Relative entropy S[p,q] = -sum p log(p/q) <= 0. Zero-probability points
/// contribute nothing. Throws ValidationError on support mismatch and
/// InfeasibleError where p > 0 but q = 0.
double relative_entropy(const Distribution &p, const Distribution &q);

/// Update `prior` to the distribution of maximum relative entropy subject
/// to the constraints. Multipliers are found by damped Newton descent on
/// the convex dual; targets at the boundary of a constraint's range are
/// resolved by restricting the support to the attaining set.
MaxEntSolution maximize_entropy(const Distribution &prior, const ConstraintSet &constraints,
                                const MaxEntOptions &options = {});

/// Diagnose the constraint system without caring about the posterior.
Classification classify_constraints(const Distribution &prior,
                                    const ConstraintSet &constraints,
                                    const MaxEntOptions &options = {});

} // namespace edlab::inference
