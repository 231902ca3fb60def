#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "edlab/grid.hpp"

namespace edlab::inference {

/// Support of a distribution: either n abstract states or a uniform grid.
struct DiscreteSupport {
    std::size_t n = 0;
    bool operator==(const DiscreteSupport &o) const { return n == o.n; }
};

using Support = std::variant<DiscreteSupport, Grid1D>;

bool same_support(const Support &a, const Support &b);

/// Probability weights over a support. Discrete weights are probabilities
/// (sum to one); grid weights are densities (sum times dx is one).
class Distribution {
  public:
    /// Validating constructors. Throw ValidationError on negative weights
    /// or normalization outside tolerance (1e-12 discrete, 1e-10 grid).
    static Distribution discrete(std::vector<double> probabilities);
    static Distribution grid(const Grid1D &g, std::vector<double> densities);

    /// Rescale arbitrary nonnegative weights to a valid distribution.
    static Distribution normalized_discrete(std::vector<double> weights);
    static Distribution normalized_grid(const Grid1D &g, std::vector<double> weights);

    static Distribution uniform_discrete(std::size_t n);
    static Distribution uniform_grid(const Grid1D &g);

    const Support &support() const { return support_; }
    const std::vector<double> &weights() const { return w_; }
    std::size_t size() const { return w_.size(); }

    bool is_grid() const { return std::holds_alternative<Grid1D>(support_); }
    const Grid1D &grid_support() const { return std::get<Grid1D>(support_); }

    /// Cell mass of state i: p_i for discrete, rho_i*dx for grids.
    double mass(std::size_t i) const { return w_[i] * cell_; }
    /// Quadrature weight (1 for discrete, dx for grids).
    double cell() const { return cell_; }

    /// Coordinate of state i: x_i on grids, the index itself otherwise.
    double point(std::size_t i) const;
    std::vector<double> points() const;

  private:
    Distribution(Support s, std::vector<double> w, double cell);
    Support support_;
    std::vector<double> w_;
    double cell_ = 1.0;
};

/// <f> under the distribution, with f sampled per support point.
double expectation(const Distribution &p, const std::vector<double> &f);
/// <f(x)> for a callable of the support coordinate.
double expectation(const Distribution &p, const std::function<double(double)> &f);
/// Var f = <f^2> - <f>^2.
double variance(const Distribution &p, const std::vector<double> &f);
double variance(const Distribution &p, const std::function<double(double)> &f);

/// Joint distribution over a (parameter, datum) product of discrete sets,
/// stored row-major: weight(i_theta, j_d).
class DiscreteJoint {
  public:
    DiscreteJoint(std::size_t n_theta, std::size_t n_data, std::vector<double> weights);

    std::size_t n_theta() const { return n_theta_; }
    std::size_t n_data() const { return n_data_; }
    double operator()(std::size_t i, std::size_t j) const { return w_[i * n_data_ + j]; }

    /// Flattened view as a plain discrete distribution (row-major).
    Distribution flatten() const;

    Distribution marginal_theta() const;
    Distribution marginal_data() const;

  private:
    std::size_t n_theta_, n_data_;
    std::vector<double> w_;
};

/// Marginalize a flat distribution over blocks of size `block`: entry k of
/// the result is the mass of states [k*block, (k+1)*block).
Distribution marginalize(const Distribution &p, std::size_t block);

} // namespace edlab::inference
