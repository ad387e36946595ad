#ifndef ZML_SCALING_HPP
#define ZML_SCALING_HPP

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "zml/common.hpp"
#include "zml/moments.hpp"

namespace zml {

// Log-log least-squares fit of a (delta, value) grid against the reference
// exponents: points sorted by descending delta, slope of log(value) against
// log(1/delta).
struct ScalingFit {
    std::vector<std::pair<double, double>> points;
    double slope = 0.0;
    double intercept = 0.0;
    double residual_rms = 0.0;
    double theorem_exponent = 0.0;
    double classical_exponent = 0.0;
};

// max{(beta-1)/2, 1, beta-2}
inline double theorem_exponent(int beta) {
    if (beta < 2) throw domain_error("theorem_exponent: beta must be >= 2");
    return std::max({0.5 * double(beta - 1), 1.0, double(beta - 2)});
}

// beta/2
inline double classical_exponent(int beta) {
    if (beta < 2) throw domain_error("classical_exponent: beta must be >= 2");
    return 0.5 * double(beta);
}

inline ScalingFit fit_exponent(std::vector<std::pair<double, double>> points) {
    if (points.size() < 4) throw domain_error("fit_exponent: need at least 4 points");
    for (const auto& [delta, value] : points) {
        if (!(delta > 0.0)) throw domain_error("fit_exponent: deltas must be positive");
        if (!(value > 0.0)) throw domain_error("fit_exponent: values must be positive");
    }
    std::sort(points.begin(), points.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t i = 0; i + 1 < points.size(); ++i)
        if (points[i].first == points[i + 1].first)
            throw domain_error("fit_exponent: deltas must be distinct");

    const double n = double(points.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [delta, value] : points) {
        const double x = std::log(1.0 / delta);
        const double y = std::log(value);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    ScalingFit fit;
    fit.points = std::move(points);
    const double denom = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double rss = 0.0;
    for (const auto& [delta, value] : fit.points) {
        const double r = std::log(value) - (fit.intercept + fit.slope * std::log(1.0 / delta));
        rss += r * r;
    }
    fit.residual_rms = std::sqrt(rss / n);
    return fit;
}

// Runs j_moment over the delta grid and fits the scaling exponent; reference
// exponents attached for comparison.
inline ScalingFit scaling_campaign(int beta, const std::vector<double>& deltas, double tol) {
    if (beta != 2 && beta != 3) throw domain_error("scaling_campaign: beta must be 2 or 3");
    if (deltas.size() < 4) throw domain_error("scaling_campaign: need at least 4 deltas");
    std::vector<std::pair<double, double>> points;
    points.reserve(deltas.size());
    for (double delta : deltas)
        points.emplace_back(delta, j_moment(beta, delta, tol).value.real());
    ScalingFit fit = fit_exponent(std::move(points));
    fit.theorem_exponent = theorem_exponent(beta);
    fit.classical_exponent = classical_exponent(beta);
    return fit;
}

inline const std::vector<double>& default_delta_grid() {
    static const std::vector<double> grid{0.4, 0.2, 0.1, 0.05, 0.025};
    return grid;
}

}  // namespace zml

#endif  // ZML_SCALING_HPP
