#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace edlab {

/// Composite Simpson quadrature of f over [a, b] with an even number of
/// panels (rounded up from `panels`).
double simpson(const std::function<double(double)> &f, double a, double b,
               std::size_t panels);

/// Sample mean and (population) variance.
struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};
Moments sample_moments(const std::vector<double> &xs);

/// Least-squares slope of y against x.
double regression_slope(const std::vector<double> &x, const std::vector<double> &y);

/// Upper-tail p-value of a chi-square statistic with `dof` degrees of freedom.
double chi_square_pvalue(double statistic, std::size_t dof);

/// L1 distance between two histograms of probability mass per cell.
double l1_distance(const std::vector<double> &a, const std::vector<double> &b);

} // namespace edlab
