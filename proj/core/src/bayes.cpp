#include "edlab/bayes.hpp"

#include <cmath>

namespace edlab::inference {

Distribution bayes_update(const DiscreteJoint &prior_joint, std::size_t observed) {
    if (observed >= prior_joint.n_data())
        throw ValidationError("bayes_update: observed index out of range");
    std::vector<double> post(prior_joint.n_theta());
    double evidence = 0.0;
    for (std::size_t i = 0; i < prior_joint.n_theta(); ++i) {
        post[i] = prior_joint(i, observed);
        evidence += post[i];
    }
    if (!(evidence > 0.0))
        throw InfeasibleError("bayes_update: observed datum has zero prior evidence");
    for (double &v : post) v /= evidence;
    return Distribution::discrete(std::move(post));
}

Distribution bayes_update_via_maxent(const DiscreteJoint &prior_joint, std::size_t observed) {
    if (observed >= prior_joint.n_data())
        throw ValidationError("bayes_update_via_maxent: observed index out of range");
    const std::size_t nt = prior_joint.n_theta();
    const std::size_t nd = prior_joint.n_data();
    const Distribution joint = prior_joint.flatten();

    // One indicator constraint per datum value: the marginal must be the
    // point mass at the observed value.
    ConstraintSet cs;
    for (std::size_t j = 0; j < nd; ++j) {
        std::vector<double> f(nt * nd, 0.0);
        for (std::size_t i = 0; i < nt; ++i) f[i * nd + j] = 1.0;
        cs.moments.push_back(MomentConstraint::sampled(
            std::move(f), j == observed ? 1.0 : 0.0, "data_" + std::to_string(j)));
    }

    MaxEntSolution sol = maximize_entropy(joint, cs);
    if (sol.classification == Classification::Over || !sol.posterior)
        throw InfeasibleError("bayes_update_via_maxent: " + sol.diagnostic);
    return marginalize(*sol.posterior, nd);
}

Kernel::Kernel(Support in, Support out, std::vector<std::vector<double>> rows)
    : in_(std::move(in)), out_(std::move(out)), rows_(std::move(rows)) {
    const std::size_t nin = std::holds_alternative<DiscreteSupport>(in_)
                                ? std::get<DiscreteSupport>(in_).n
                                : std::get<Grid1D>(in_).n;
    const std::size_t nout = std::holds_alternative<DiscreteSupport>(out_)
                                 ? std::get<DiscreteSupport>(out_).n
                                 : std::get<Grid1D>(out_).n;
    out_cell_ = std::holds_alternative<Grid1D>(out_) ? std::get<Grid1D>(out_).dx : 1.0;
    if (rows_.size() != nin) throw ValidationError("Kernel: row count does not match input");
    for (const auto &r : rows_) {
        if (r.size() != nout) throw ValidationError("Kernel: row length does not match output");
        double total = 0.0;
        for (double v : r) {
            if (!(v >= 0.0)) throw ValidationError("Kernel: negative entry");
            total += v * out_cell_;
        }
        if (std::abs(total - 1.0) > 1e-10)
            throw ValidationError("Kernel: row not normalized over its output variable");
    }
}

Kernel Kernel::delta(const Support &s) {
    const std::size_t n = std::holds_alternative<DiscreteSupport>(s)
                              ? std::get<DiscreteSupport>(s).n
                              : std::get<Grid1D>(s).n;
    const double cell = std::holds_alternative<Grid1D>(s) ? std::get<Grid1D>(s).dx : 1.0;
    std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) rows[i][i] = 1.0 / cell;
    return Kernel(s, s, std::move(rows));
}

Kernel compose_likelihood(const Kernel &outcome_model, const Kernel &data_model) {
    if (!same_support(outcome_model.out_support(), data_model.in_support()))
        throw ValidationError("compose_likelihood: intermediate supports do not match");
    const std::size_t nt = outcome_model.n_in();
    const std::size_t nx = outcome_model.n_out();
    const std::size_t nD = data_model.n_out();
    const double cell_x = outcome_model.out_cell();

    std::vector<std::vector<double>> rows(nt, std::vector<double>(nD, 0.0));
    for (std::size_t i = 0; i < nt; ++i)
        for (std::size_t k = 0; k < nx; ++k) {
            const double w = outcome_model.row(i)[k] * cell_x;
            if (w == 0.0) continue;
            for (std::size_t j = 0; j < nD; ++j) rows[i][j] += w * data_model.row(k)[j];
        }
    return Kernel(outcome_model.in_support(), data_model.out_support(), std::move(rows));
}

} // namespace edlab::inference
