#include "edlab/maxent.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace edlab::inference {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

std::string to_string(Classification c) {
    switch (c) {
        case Classification::Well: return "well-constrained";
        case Classification::Fully: return "fully-constrained";
        case Classification::Over: return "overconstrained";
        case Classification::Under: return "underconstrained";
    }
    return "?";
}

MomentConstraint MomentConstraint::sampled(std::vector<double> f, double target,
                                           std::string label) {
    for (double v : f)
        if (!std::isfinite(v))
            throw ValidationError("MomentConstraint: non-finite sample in '" + label + "'");
    if (!std::isfinite(target))
        throw ValidationError("MomentConstraint: non-finite target in '" + label + "'");
    return MomentConstraint{std::move(f), target, std::move(label)};
}

MomentConstraint MomentConstraint::of(const Distribution &prior,
                                      const std::function<double(double)> &f, double target,
                                      std::string label) {
    std::vector<double> samples(prior.size());
    for (std::size_t i = 0; i < prior.size(); ++i) samples[i] = f(prior.point(i));
    return sampled(std::move(samples), target, std::move(label));
}

double relative_entropy(const Distribution &p, const Distribution &q) {
    if (!same_support(p.support(), q.support()))
        throw ValidationError("relative_entropy: distributions live on different supports");
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double pm = p.mass(i);
        if (pm == 0.0) continue;
        const double qm = q.mass(i);
        if (qm == 0.0)
            throw InfeasibleError(
                "relative_entropy: posterior assigns mass where the prior has none");
        s -= pm * std::log(pm / qm);
    }
    return s;
}

namespace {

struct WorkingConstraint {
    std::vector<double> f;   // sampled on the full support
    double target;
    std::string label;
    int source;              // index into the input moment list, or -1 for
                             // the central-variance constraint
    bool resolved = false;   // satisfied by support restriction
    bool trivial = false;    // constant on the active support and consistent
    double multiplier = kNaN;
};

struct ActiveSet {
    std::vector<std::size_t> idx;  // indices into the full support
    std::vector<double> mass;      // prior masses at those points
};

MaxEntSolution make_over(std::string why, std::size_t n_multipliers) {
    MaxEntSolution s;
    s.classification = Classification::Over;
    s.diagnostic = std::move(why);
    s.multipliers.assign(n_multipliers, kNaN);
    s.achieved_entropy = kNaN;
    s.log_partition = kNaN;
    s.residual = kNaN;
    return s;
}

Distribution build_posterior(const Distribution &prior, const ActiveSet &active,
                             const std::vector<double> &active_prob) {
    std::vector<double> w(prior.size(), 0.0);
    for (std::size_t k = 0; k < active.idx.size(); ++k)
        w[active.idx[k]] = active_prob[k] / prior.cell();
    if (prior.is_grid()) return Distribution::normalized_grid(prior.grid_support(), w);
    return Distribution::normalized_discrete(w);
}

} // namespace

MaxEntSolution maximize_entropy(const Distribution &prior, const ConstraintSet &constraints,
                                const MaxEntOptions &opt) {
    // Assemble the working list; a fixed-center variance constraint is an
    // ordinary moment, a free-center one brings an extra unknown.
    std::vector<WorkingConstraint> work;
    work.reserve(constraints.moments.size() + 1);
    for (std::size_t r = 0; r < constraints.moments.size(); ++r) {
        const auto &m = constraints.moments[r];
        if (m.f.size() != prior.size())
            throw ValidationError("maximize_entropy: constraint '" + m.label +
                                  "' is not sampled on the prior support");
        work.push_back(WorkingConstraint{m.f, m.target, m.label, static_cast<int>(r)});
    }

    bool free_center = false;
    double center = 0.0;
    if (constraints.central_variance) {
        const auto &cv = *constraints.central_variance;
        if (cv.sigma2 < 0.0)
            throw ValidationError("maximize_entropy: negative variance target");
        if (cv.center) {
            center = *cv.center;
        } else {
            free_center = true;
            center = expectation(prior, [](double x) { return x; });
        }
        std::vector<double> f(prior.size());
        for (std::size_t i = 0; i < prior.size(); ++i) {
            const double d = prior.point(i) - center;
            f[i] = d * d;
        }
        work.push_back(WorkingConstraint{std::move(f), cv.sigma2, "central_variance", -1});
    }
    const std::size_t n_mult = work.size();

    ActiveSet active;
    for (std::size_t i = 0; i < prior.size(); ++i) {
        if (prior.mass(i) > 0.0) {
            active.idx.push_back(i);
            active.mass.push_back(prior.mass(i));
        }
    }
    if (active.idx.empty()) throw ValidationError("maximize_entropy: prior has no support");

    // Resolve targets sitting at the boundary of a constraint's range by
    // restricting the support to the attaining set; a target outside the
    // closed range certifies infeasibility.
    bool restricted = false;
    bool cv_restricted = false;
    for (bool changed = true; changed;) {
        changed = false;
        for (auto &wc : work) {
            if (wc.resolved || wc.trivial) continue;
            double lo = std::numeric_limits<double>::infinity();
            double hi = -lo;
            for (std::size_t k : active.idx) {
                lo = std::min(lo, wc.f[k]);
                hi = std::max(hi, wc.f[k]);
            }
            const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
            const double btol = opt.boundary_tol * scale;
            if (wc.target < lo - btol || wc.target > hi + btol) {
                std::ostringstream why;
                why << "target " << wc.target << " of '" << wc.label
                    << "' lies outside the attainable range [" << lo << ", " << hi << "]";
                return make_over(why.str(), n_mult);
            }
            if (hi - lo <= btol) {
                // Constant on the active support and consistent with it.
                wc.trivial = true;
                wc.multiplier = 0.0;
                continue;
            }
            const bool at_min = wc.target <= lo + btol;
            const bool at_max = wc.target >= hi - btol;
            if (at_min || at_max) {
                const double edge = at_min ? lo : hi;
                ActiveSet next;
                for (std::size_t k = 0; k < active.idx.size(); ++k) {
                    if (std::abs(wc.f[active.idx[k]] - edge) <= btol) {
                        next.idx.push_back(active.idx[k]);
                        next.mass.push_back(active.mass[k]);
                    }
                }
                active = std::move(next);
                wc.resolved = true;
                restricted = true;
                if (wc.source < 0) cv_restricted = true;
                changed = true;
            }
        }
    }
    if (active.idx.empty())
        return make_over("constraints restrict the support to the empty set", n_mult);

    const std::size_t m = active.idx.size();
    std::vector<const WorkingConstraint *> newton;
    for (auto &wc : work)
        if (!wc.resolved && !wc.trivial) newton.push_back(&wc);
    const std::size_t R = newton.size();

    // Dual descent over the remaining constraints.
    Eigen::VectorXd lambda = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(R));
    Eigen::MatrixXd F(static_cast<Eigen::Index>(R), static_cast<Eigen::Index>(m));
    Eigen::VectorXd target(static_cast<Eigen::Index>(R));
    for (std::size_t r = 0; r < R; ++r) {
        target(static_cast<Eigen::Index>(r)) = newton[r]->target;
        for (std::size_t k = 0; k < m; ++k)
            F(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) =
                newton[r]->f[active.idx[k]];
    }

    std::vector<double> prob(m, 0.0);
    double log_z = 0.0;
    auto refresh = [&](const Eigen::VectorXd &lam) {
        // p_k ∝ q_k exp(-lam·f_k); returns the dual value log Z + lam·F.
        double emax = -std::numeric_limits<double>::infinity();
        std::vector<double> expo(m);
        for (std::size_t k = 0; k < m; ++k) {
            double e = std::log(active.mass[k]);
            for (std::size_t r = 0; r < R; ++r)
                e -= lam(static_cast<Eigen::Index>(r)) * F(static_cast<Eigen::Index>(r),
                                                           static_cast<Eigen::Index>(k));
            expo[k] = e;
            emax = std::max(emax, e);
        }
        double z = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            prob[k] = std::exp(expo[k] - emax);
            z += prob[k];
        }
        for (std::size_t k = 0; k < m; ++k) prob[k] /= z;
        log_z = std::log(z) + emax;
        if (!std::isfinite(log_z)) throw NumericError("maximize_entropy: overflow in exponent");
        return log_z + lam.dot(target);
    };

    auto gradient = [&]() {
        Eigen::VectorXd g = target;
        for (std::size_t r = 0; r < R; ++r) {
            double mean = 0.0;
            for (std::size_t k = 0; k < m; ++k)
                mean += prob[k] * F(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k));
            g(static_cast<Eigen::Index>(r)) -= mean;
        }
        return g;
    };

    auto hessian = [&]() {
        Eigen::VectorXd mean = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(R));
        for (std::size_t r = 0; r < R; ++r)
            for (std::size_t k = 0; k < m; ++k)
                mean(static_cast<Eigen::Index>(r)) +=
                    prob[k] * F(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k));
        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(R),
                                                  static_cast<Eigen::Index>(R));
        for (std::size_t k = 0; k < m; ++k) {
            Eigen::VectorXd d(static_cast<Eigen::Index>(R));
            for (std::size_t r = 0; r < R; ++r)
                d(static_cast<Eigen::Index>(r)) =
                    F(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) -
                    mean(static_cast<Eigen::Index>(r));
            h += prob[k] * d * d.transpose();
        }
        return h;
    };

    MaxEntSolution sol;
    sol.multipliers.assign(n_mult, kNaN);

    double dual = refresh(lambda);
    std::size_t iters = 0;
    double best_residual = std::numeric_limits<double>::infinity();
    std::size_t stagnant = 0;

    if (R > 0) {
        sol.dual_trace.push_back(dual);
        for (; iters < opt.max_iter; ++iters) {
            Eigen::VectorXd g = gradient();
            const double res = g.lpNorm<Eigen::Infinity>();
            if (res <= opt.tol) break;
            if (res < 0.5 * best_residual) {
                best_residual = res;
                stagnant = 0;
            } else if (++stagnant > 25 &&
                       lambda.lpNorm<Eigen::Infinity>() > opt.multiplier_limit) {
                return make_over("dual diverged: residual stagnated at " +
                                     std::to_string(res) + " with multiplier norm " +
                                     std::to_string(lambda.lpNorm<Eigen::Infinity>()),
                                 n_mult);
            }

            Eigen::MatrixXd H = hessian();
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(H);
            const Eigen::VectorXd &ev = eig.eigenvalues();
            const double emax_h = std::max(ev(ev.size() - 1), 0.0);

            // Directions of (numerically) zero curvature: if the combined
            // function is constant on the support but the combined target
            // disagrees, no distribution can comply.
            Eigen::VectorXd step = Eigen::VectorXd::Zero(lambda.size());
            for (Eigen::Index j = 0; j < ev.size(); ++j) {
                const Eigen::VectorXd v = eig.eigenvectors().col(j);
                if (ev(j) <= opt.rank_tol * std::max(emax_h, 1e-300)) {
                    Eigen::VectorXd combo = F.transpose() * v;
                    const double c0 = combo.dot(Eigen::Map<const Eigen::VectorXd>(
                        prob.data(), static_cast<Eigen::Index>(m)));
                    double spread = 0.0;
                    for (Eigen::Index k = 0; k < combo.size(); ++k)
                        spread = std::max(spread, std::abs(combo(k) - c0));
                    const double gap = std::abs(v.dot(g));
                    if (spread <= 1e-9 * std::max(1.0, std::abs(c0)) && gap > opt.tol) {
                        return make_over(
                            "constraints are contradictory along a degenerate direction",
                            n_mult);
                    }
                    continue; // drop the direction from the Newton step
                }
                step -= v * (v.dot(g) / ev(j));
            }
            if (step.norm() == 0.0) break;

            // Armijo backtracking keeps the dual non-increasing (up to the
            // roundoff floor of the dual itself, where the test would
            // otherwise reject the final quadratic-convergence steps).
            const double slope = g.dot(step);
            const double roundoff = 1e-14 * (std::abs(dual) + 1.0);
            double alpha = 1.0;
            double next = dual;
            for (int h = 0; h < 60; ++h) {
                next = refresh(lambda + alpha * step);
                if (next <= dual + 1e-4 * alpha * slope + roundoff) break;
                alpha *= 0.5;
            }
            lambda += alpha * step;
            dual = refresh(lambda);
            sol.dual_trace.push_back(dual);
            if (lambda.lpNorm<Eigen::Infinity>() > 10.0 * opt.multiplier_limit)
                return make_over("multipliers diverged beyond limit", n_mult);
        }

        Eigen::VectorXd g = gradient();
        const double res = g.lpNorm<Eigen::Infinity>();
        if (res > opt.tol) {
            if (lambda.lpNorm<Eigen::Infinity>() > opt.multiplier_limit)
                return make_over("dual diverged: residual " + std::to_string(res) +
                                     " with multiplier norm " +
                                     std::to_string(lambda.lpNorm<Eigen::Infinity>()),
                                 n_mult);
            throw NumericError("maximize_entropy: Newton iteration did not converge (residual " +
                               std::to_string(res) + ")");
        }
        sol.residual = res;
    } else {
        sol.residual = 0.0;
    }
    sol.iterations = iters;

    // Classification.
    Classification cls = Classification::Well;
    {
        // Unique-feasible-point test: together with normalization, the
        // remaining constraints pin every active weight.
        Eigen::MatrixXd A(static_cast<Eigen::Index>(R + 1), static_cast<Eigen::Index>(m));
        A.row(0).setOnes();
        for (std::size_t r = 0; r < R; ++r) A.row(static_cast<Eigen::Index>(r + 1)) = F.row(
            static_cast<Eigen::Index>(r));
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
        qr.setThreshold(1e-10);
        if (m == 1 || static_cast<std::size_t>(qr.rank()) >= m) cls = Classification::Fully;
    }
    if (cls != Classification::Fully && R > 0) {
        // Degenerate dual curvature: several multiplier (or center)
        // assignments describe equally valid maximizers.
        Eigen::MatrixXd H = hessian();
        Eigen::MatrixXd Haug;
        if (free_center) {
            const Eigen::Index Ri = static_cast<Eigen::Index>(R);
            Haug.resize(Ri + 1, Ri + 1);
            Haug.topLeftCorner(Ri, Ri) = H;
            // Analytic cross terms for the free center c of f = (x-c)^2.
            double lam_cv = lambda(Ri - 1);
            double mean_x = 0.0;
            for (std::size_t k = 0; k < m; ++k)
                mean_x += prob[k] * prior.point(active.idx[k]);
            double var_x = 0.0;
            for (std::size_t k = 0; k < m; ++k) {
                const double d = prior.point(active.idx[k]) - mean_x;
                var_x += prob[k] * d * d;
            }
            for (std::size_t r = 0; r < R; ++r) {
                double cov_fx = 0.0;
                for (std::size_t k = 0; k < m; ++k)
                    cov_fx += prob[k] *
                              (F(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k))) *
                              (prior.point(active.idx[k]) - mean_x);
                double entry = -2.0 * lam_cv * cov_fx;
                if (newton[r]->source < 0) entry += 2.0 * (mean_x - center);
                Haug(static_cast<Eigen::Index>(r), Ri) = entry;
                Haug(Ri, static_cast<Eigen::Index>(r)) = entry;
            }
            Haug(Ri, Ri) = 2.0 * lam_cv * (2.0 * lam_cv * var_x - 1.0);
        } else {
            Haug = H;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Haug);
        const double lo = std::abs(eig.eigenvalues()(0));
        const double hi = std::abs(eig.eigenvalues()(eig.eigenvalues().size() - 1));
        if (lo < opt.rank_tol * std::max(hi, 1e-300)) cls = Classification::Under;
    }
    if (free_center && cv_restricted) cls = Classification::Under;
    if (m == 1 && !free_center) cls = Classification::Fully;

    sol.classification = cls;
    sol.posterior = build_posterior(prior, active, prob);
    sol.log_partition = log_z;
    sol.achieved_entropy = relative_entropy(*sol.posterior, prior);
    for (std::size_t r = 0; r < R; ++r) {
        const int src = newton[r]->source;
        const double lam = lambda(static_cast<Eigen::Index>(r));
        if (src >= 0)
            sol.multipliers[static_cast<std::size_t>(src)] = lam;
        else
            sol.multipliers[n_mult - 1] = lam;
    }
    for (const auto &wc : work) {
        if (wc.trivial) {
            if (wc.source >= 0)
                sol.multipliers[static_cast<std::size_t>(wc.source)] = 0.0;
            else
                sol.multipliers[n_mult - 1] = 0.0;
        }
    }
    return sol;
}

Classification classify_constraints(const Distribution &prior, const ConstraintSet &constraints,
                                    const MaxEntOptions &options) {
    return maximize_entropy(prior, constraints, options).classification;
}

} // namespace edlab::inference
