#include "edlab/distribution.hpp"

#include <cmath>
#include <numeric>

namespace edlab::inference {

bool same_support(const Support &a, const Support &b) {
    if (a.index() != b.index()) return false;
    if (std::holds_alternative<DiscreteSupport>(a))
        return std::get<DiscreteSupport>(a) == std::get<DiscreteSupport>(b);
    return std::get<Grid1D>(a).same_geometry(std::get<Grid1D>(b));
}

namespace {

void check_weights(const std::vector<double> &w, double cell, double tol) {
    if (w.empty()) throw ValidationError("Distribution: empty weight vector");
    double total = 0.0;
    for (double v : w) {
        if (!(v >= 0.0)) throw ValidationError("Distribution: negative or NaN weight");
        total += v * cell;
    }
    if (std::abs(total - 1.0) > tol)
        throw ValidationError("Distribution: weights sum to " + std::to_string(total) +
                              ", expected 1 within " + std::to_string(tol));
}

std::vector<double> rescaled(std::vector<double> w, double cell) {
    double total = 0.0;
    for (double v : w) {
        if (!(v >= 0.0)) throw ValidationError("Distribution: negative or NaN weight");
        total += v * cell;
    }
    if (!(total > 0.0)) throw ValidationError("Distribution: zero total weight");
    for (double &v : w) v /= total;
    return w;
}

} // namespace

Distribution::Distribution(Support s, std::vector<double> w, double cell)
    : support_(std::move(s)), w_(std::move(w)), cell_(cell) {}

Distribution Distribution::discrete(std::vector<double> probabilities) {
    check_weights(probabilities, 1.0, 1e-12);
    const std::size_t n = probabilities.size();
    return Distribution(DiscreteSupport{n}, std::move(probabilities), 1.0);
}

Distribution Distribution::grid(const Grid1D &g, std::vector<double> densities) {
    if (densities.size() != g.n)
        throw ValidationError("Distribution: density count does not match grid");
    check_weights(densities, g.dx, 1e-10);
    return Distribution(g, std::move(densities), g.dx);
}

Distribution Distribution::normalized_discrete(std::vector<double> weights) {
    return discrete(rescaled(std::move(weights), 1.0));
}

Distribution Distribution::normalized_grid(const Grid1D &g, std::vector<double> weights) {
    if (weights.size() != g.n)
        throw ValidationError("Distribution: density count does not match grid");
    return grid(g, rescaled(std::move(weights), g.dx));
}

Distribution Distribution::uniform_discrete(std::size_t n) {
    if (n == 0) throw ValidationError("Distribution: empty support");
    return discrete(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Distribution Distribution::uniform_grid(const Grid1D &g) {
    return grid(g, std::vector<double>(g.n, 1.0 / g.length()));
}

double Distribution::point(std::size_t i) const {
    if (is_grid()) return grid_support().x(i);
    return static_cast<double>(i);
}

std::vector<double> Distribution::points() const {
    std::vector<double> xs(size());
    for (std::size_t i = 0; i < size(); ++i) xs[i] = point(i);
    return xs;
}

double expectation(const Distribution &p, const std::vector<double> &f) {
    if (f.size() != p.size()) throw ValidationError("expectation: sample count mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) acc += p.mass(i) * f[i];
    return acc;
}

double expectation(const Distribution &p, const std::function<double(double)> &f) {
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) acc += p.mass(i) * f(p.point(i));
    return acc;
}

double variance(const Distribution &p, const std::vector<double> &f) {
    const double m = expectation(p, f);
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) acc += p.mass(i) * (f[i] - m) * (f[i] - m);
    return acc;
}

double variance(const Distribution &p, const std::function<double(double)> &f) {
    std::vector<double> samples(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) samples[i] = f(p.point(i));
    return variance(p, samples);
}

DiscreteJoint::DiscreteJoint(std::size_t n_theta, std::size_t n_data,
                             std::vector<double> weights)
    : n_theta_(n_theta), n_data_(n_data), w_(std::move(weights)) {
    if (n_theta_ == 0 || n_data_ == 0 || w_.size() != n_theta_ * n_data_)
        throw ValidationError("DiscreteJoint: shape mismatch");
    double total = std::accumulate(w_.begin(), w_.end(), 0.0);
    for (double v : w_)
        if (!(v >= 0.0)) throw ValidationError("DiscreteJoint: negative weight");
    if (std::abs(total - 1.0) > 1e-12)
        throw ValidationError("DiscreteJoint: weights must sum to 1");
}

Distribution DiscreteJoint::flatten() const { return Distribution::discrete(w_); }

Distribution DiscreteJoint::marginal_theta() const {
    std::vector<double> m(n_theta_, 0.0);
    for (std::size_t i = 0; i < n_theta_; ++i)
        for (std::size_t j = 0; j < n_data_; ++j) m[i] += (*this)(i, j);
    return Distribution::normalized_discrete(std::move(m));
}

Distribution DiscreteJoint::marginal_data() const {
    std::vector<double> m(n_data_, 0.0);
    for (std::size_t i = 0; i < n_theta_; ++i)
        for (std::size_t j = 0; j < n_data_; ++j) m[j] += (*this)(i, j);
    return Distribution::normalized_discrete(std::move(m));
}

Distribution marginalize(const Distribution &p, std::size_t block) {
    if (block == 0 || p.size() % block != 0)
        throw ValidationError("marginalize: block size does not divide the support");
    std::vector<double> m(p.size() / block, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) m[i / block] += p.mass(i);
    return Distribution::normalized_discrete(std::move(m));
}

} // namespace edlab::inference
