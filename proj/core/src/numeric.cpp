#include "edlab/numeric.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>

#include "edlab/errors.hpp"

namespace edlab {

double simpson(const std::function<double(double)> &f, double a, double b,
               std::size_t panels) {
    if (b == a) return 0.0;
    if (panels < 2) panels = 2;
    if (panels % 2 != 0) ++panels;
    const double h = (b - a) / static_cast<double>(panels);
    double acc = f(a) + f(b);
    for (std::size_t i = 1; i < panels; ++i) {
        const double xi = a + h * static_cast<double>(i);
        acc += f(xi) * ((i % 2 == 1) ? 4.0 : 2.0);
    }
    return acc * h / 3.0;
}

Moments sample_moments(const std::vector<double> &xs) {
    Moments m;
    if (xs.empty()) return m;
    double s = 0.0;
    for (double v : xs) s += v;
    m.mean = s / static_cast<double>(xs.size());
    double q = 0.0;
    for (double v : xs) q += (v - m.mean) * (v - m.mean);
    m.variance = q / static_cast<double>(xs.size());
    return m;
}

double regression_slope(const std::vector<double> &x, const std::vector<double> &y) {
    if (x.size() != y.size() || x.size() < 2)
        throw ValidationError("regression_slope: need matching series of length >= 2");
    const Moments mx = sample_moments(x);
    double sxy = 0.0, sxx = 0.0;
    double ymean = sample_moments(y).mean;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx.mean) * (y[i] - ymean);
        sxx += (x[i] - mx.mean) * (x[i] - mx.mean);
    }
    if (sxx == 0.0) throw ValidationError("regression_slope: degenerate abscissae");
    return sxy / sxx;
}

double chi_square_pvalue(double statistic, std::size_t dof) {
    if (dof == 0) throw ValidationError("chi_square_pvalue: zero degrees of freedom");
    if (statistic <= 0.0) return 1.0;
    boost::math::chi_squared dist(static_cast<double>(dof));
    return boost::math::cdf(boost::math::complement(dist, statistic));
}

double l1_distance(const std::vector<double> &a, const std::vector<double> &b) {
    if (a.size() != b.size())
        throw ValidationError("l1_distance: size mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
    return acc;
}

} // namespace edlab
