#ifndef ZML_OSCILLATORY_HPP
#define ZML_OSCILLATORY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "zml/common.hpp"
#include "zml/quadrature.hpp"

namespace zml {

// The model integrand of the negative-line analysis:
//   F(t) = t (log t - 1 - beta log t + beta log 2pi + beta - log(n x))
//   G(t) = t^{(beta-1)(alpha+1/2)} e^{-delta t}
struct PhaseSpec {
    int beta = 2;
    std::int64_t n = 1;
    double x = 1.0;
    double alpha = 0.25;
    double delta = 0.1;

    void validate() const {
        if (beta < 1) throw domain_error("PhaseSpec: beta must be >= 1");
        if (n < 1) throw domain_error("PhaseSpec: n must be >= 1");
        if (!(x > 0.0)) throw domain_error("PhaseSpec: x must be positive");
        if (!(alpha > 0.0 && alpha < 1.0)) throw domain_error("PhaseSpec: alpha outside (0, 1)");
        if (!(delta > 0.0 && delta < half_pi))
            throw domain_error("PhaseSpec: delta outside (0, pi/2)");
    }
    // the constant c in F(t) = t ((1-beta) log t + c)
    double phase_constant() const {
        return double(beta) * std::log(two_pi) + double(beta) - 1.0 -
               std::log(double(n) * x);
    }
    double amplitude_exponent() const { return double(beta - 1) * (alpha + 0.5); }
    double amplitude(double t) const {
        return std::pow(t, amplitude_exponent()) * std::exp(-delta * t);
    }
    // argmax of G: (beta-1)(alpha+1/2) / delta
    double amplitude_extremum() const { return amplitude_exponent() / delta; }
};

struct PhaseEval {
    double f;
    double f1;
    double f2;
};

inline PhaseEval phase_eval(const PhaseSpec& spec, double t) {
    spec.validate();
    if (!(t > 0.0)) throw domain_error("phase_eval: t must be positive");
    const double c = spec.phase_constant();
    const double one_mb = 1.0 - double(spec.beta);
    const double logt = std::log(t);
    return {t * (one_mb * logt + c), one_mb * logt + one_mb + c, one_mb / t};
}

// Unique root of F' on (0, inf): F' is strictly decreasing for beta >= 2 and
// runs from +inf to -inf.  Bisection to relative 1e-12 (the closed form
// exp((c + 1 - beta)/(beta - 1)) seeds the bracket).
inline double stationary_point(const PhaseSpec& spec) {
    spec.validate();
    if (spec.beta < 2) throw domain_error("stationary_point: beta must be >= 2");
    const double c = spec.phase_constant();
    const double seed = std::exp((c + 1.0 - double(spec.beta)) / double(spec.beta - 1));
    double lo = seed / 4.0, hi = seed * 4.0;
    auto f1 = [&](double t) { return phase_eval(spec, t).f1; };
    while (f1(lo) < 0.0) lo /= 2.0;
    while (f1(hi) > 0.0) hi *= 2.0;
    while ((hi - lo) > 1e-12 * hi) {
        const double mid = 0.5 * (lo + hi);
        (f1(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

namespace detail {

// Break [a, b] so the phase advances by at most ~pi/2 per panel; F' is
// monotone, so the endpoint slopes bound the advance.
inline std::vector<double> phase_breaks(const PhaseSpec& spec, double a, double b,
                                        double max_advance) {
    std::vector<double> breaks{a};
    double t = a;
    int guard = 0;
    while (t < b) {
        const double slope = std::abs(phase_eval(spec, t).f1) + 1e-3;
        const double step = std::clamp(max_advance / slope, 1e-4 * (b - a), 2.0);
        t = std::min(b, t + step);
        breaks.push_back(t);
        if (++guard > 4'000'000) throw budget_error("phase_breaks: panelization too fine");
    }
    return breaks;
}

}  // namespace detail

// Integral_a^b G(t) e^{i F(t)} dt with panels seeded by the phase advance.
// zero_phase forces F = 0 (amplitude-only diagnostic mode).
inline IntegralEstimate oscillatory_integral(const PhaseSpec& spec, double a, double b, double tol,
                                             bool zero_phase = false, double max_advance = half_pi) {
    spec.validate();
    if (!(0.0 < a && a < b)) throw domain_error("oscillatory_integral: need 0 < a < b");
    auto f = [&](double t) -> Complex {
        const PhaseEval ph = phase_eval(spec, t);
        const double g = spec.amplitude(t);
        if (zero_phase) return Complex(g, 0.0);
        return std::polar(g, ph.f);
    };
    QuadratureOptions opt;
    opt.abs_tol = 0.5 * tol;
    opt.rel_tol = 0.5 * tol;
    auto breaks = zero_phase ? uniform_breaks(a, b, std::max((b - a) / 64.0, 1e-6))
                             : detail::phase_breaks(spec, a, b, max_advance);
    return adaptive_integrate(f, a, b, opt, std::move(breaks));
}

// Second-derivative-test certificate K (max G) (min |F''|)^{-1/2} with K = 8,
// valid when G is monotonic on [a, b]; the G-extremum strictly inside the
// interval is rejected.
inline double second_derivative_bound(const PhaseSpec& spec, double a, double b) {
    spec.validate();
    if (spec.beta < 2) throw domain_error("second_derivative_bound: beta must be >= 2");
    if (!(0.0 < a && a < b)) throw domain_error("second_derivative_bound: need 0 < a < b");
    const double extremum = spec.amplitude_extremum();
    if (extremum > a && extremum < b)
        throw domain_error("second_derivative_bound: G-extremum inside (a, b): G not monotonic");
    constexpr double certificate_k = 8.0;
    const double g_max = std::max(spec.amplitude(a), spec.amplitude(b));
    const double min_f2 = double(spec.beta - 1) / b;  // |F''| = (beta-1)/t
    return certificate_k * g_max / std::sqrt(min_f2);
}

// Certificate for an arbitrary interval: split at the G-extremum and the
// stationary point, sum the per-piece bounds.  Dominates |Integral G e^{iF}|
// by the triangle inequality.
inline double certificate_bound(const PhaseSpec& spec, double a, double b) {
    spec.validate();
    std::vector<double> cuts{a, b};
    const double extremum = spec.amplitude_extremum();
    const double tstar = stationary_point(spec);
    if (extremum > a && extremum < b) cuts.push_back(extremum);
    if (tstar > a && tstar < b) cuts.push_back(tstar);
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        total += second_derivative_bound(spec, cuts[i], cuts[i + 1]);
    return total;
}

}  // namespace zml

#endif  // ZML_OSCILLATORY_HPP
