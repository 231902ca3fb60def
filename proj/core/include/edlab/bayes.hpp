#pragma once

#include "edlab/maxent.hpp"

namespace edlab::inference {

/// Posterior over the parameter after observing datum index `observed`:
/// p(theta) = q(theta) q(D|theta) / q(D). Throws InfeasibleError when the
/// observed datum has zero prior evidence.
Distribution bayes_update(const DiscreteJoint &prior_joint, std::size_t observed);

/// The same update run through maximize_entropy on the joint with the
/// delta data constraint p(d_j) = delta_{jD}. Agrees with bayes_update to
/// machine precision; kept as a separate route so the agreement can be
/// checked.
Distribution bayes_update_via_maxent(const DiscreteJoint &prior_joint, std::size_t observed);

/// Conditional kernel q(out|in): one normalized distribution over the
/// output support per input state.
class Kernel {
  public:
    Kernel(Support in, Support out, std::vector<std::vector<double>> rows);

    static Kernel delta(const Support &s);  // q(out|in) = identity on s

    const Support &in_support() const { return in_; }
    const Support &out_support() const { return out_; }
    std::size_t n_in() const { return rows_.size(); }
    std::size_t n_out() const { return rows_.empty() ? 0 : rows_[0].size(); }
    const std::vector<double> &row(std::size_t i) const { return rows_[i]; }

    /// Quadrature weight of the output support.
    double out_cell() const { return out_cell_; }

  private:
    Support in_, out_;
    std::vector<std::vector<double>> rows_;
    double out_cell_ = 1.0;
};

/// Chain an outcome kernel q(x|theta) with a data kernel q(D|x):
/// q(D|theta) = sum_x q(x|theta) q(D|x) dx.
Kernel compose_likelihood(const Kernel &outcome_model, const Kernel &data_model);

} // namespace edlab::inference
