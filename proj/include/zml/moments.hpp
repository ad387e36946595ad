#ifndef ZML_MOMENTS_HPP
#define ZML_MOMENTS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "zml/common.hpp"
#include "zml/laurent.hpp"
#include "zml/phi.hpp"
#include "zml/quadrature.hpp"
#include "zml/special_functions.hpp"

namespace zml {

// Joint report for the Parseval bridge and the J1/J3/J4 decomposition of
// Integral |Phi_beta|^2 dx.  parseval_check fills the parseval_* fields with
// the two sides of the identity; j_decomposition fills the j* fields and
// carries the t-side value j_moment(beta, 2 delta) in parseval_lhs.
// o1_correction holds the bounded leftover of whichever bridge was computed
// (the negative-half-line part for parseval_check, lhs - total for the
// decomposition).
struct DecompositionReport {
    double j1 = 0.0;
    double j3 = 0.0;
    double j4 = 0.0;
    double total = 0.0;
    double parseval_lhs = 0.0;
    double parseval_rhs = 0.0;
    double o1_correction = 0.0;
    double j6_residue = 0.0;

    // quadrature error estimates (not part of the exported report)
    double j1_err = 0.0, j3_err = 0.0, j4_err = 0.0, total_err = 0.0;
};

// |zeta(1/2 + i t)|^{2 beta}
inline double zeta_abs_power(int beta, double t) {
    if (beta == 0) return 1.0;
    const double n = std::norm(zeta_complex(Complex(0.5, t)));
    double p = 1.0;
    for (int k = 0; k < beta; ++k) p *= n;
    return p;
}

namespace detail {

// Smallest T with  c^{2 beta} T^{beta/2} e^{-delta T} / delta < tail_target,
// using |zeta(1/2+it)| <= c t^{1/4} with c = 3 as the truncation envelope.
inline double laplace_cutoff(int beta, double delta, double tail_target) {
    const double c = 3.0;
    const double log_c = 2.0 * double(beta) * std::log(c);
    double t = 10.0 / delta;
    for (int it = 0; it < 64; ++it) {
        const double next = (std::log(2.0 / (delta * tail_target)) + log_c +
                             0.5 * double(beta) * std::log(std::max(t, 2.0))) /
                            delta;
        if (std::abs(next - t) < 1e-6 * t) return next;
        t = next;
    }
    return t;
}

}  // namespace detail

// J_beta(delta) = Integral_0^inf |zeta(1/2+it)|^{2 beta} e^{-delta t} dt.
// tol is a relative target; the tail beyond the solved cutoff is bounded by
// the t^{1/4} envelope and folded into abs_err.
inline IntegralEstimate j_moment(int beta, double delta, double tol) {
    if (beta < 0) throw domain_error("j_moment: beta must be >= 0");
    if (!(tol > 0.0)) throw domain_error("j_moment: tol must be positive");
    if (delta < config().delta_min)
        throw budget_error("j_moment: delta below delta_min budget (" +
                           std::to_string(config().delta_min) + "); raise --delta-min");

    const double tail_target = 0.25 * tol * std::max(1.0, 1.0 / delta);
    const double t_cut = detail::laplace_cutoff(beta, delta, tail_target);

    auto f = [&](double t) { return zeta_abs_power(beta, t) * std::exp(-delta * t); };
    QuadratureOptions opt;
    opt.rel_tol = 0.5 * tol;
    opt.abs_tol = 0.1 * tol;
    auto est = adaptive_integrate_real(f, 0.0, t_cut, opt, uniform_breaks(0.0, t_cut, 0.5));
    est.abs_err += tail_target;
    return est;
}

// M_beta(T) = Integral_0^T |zeta(1/2+it)|^{2 beta} dt.
inline IntegralEstimate m_moment(int beta, double T, double tol) {
    if (beta < 0) throw domain_error("m_moment: beta must be >= 0");
    if (!(T > 0.0)) throw domain_error("m_moment: T must be positive");
    if (!(tol > 0.0)) throw domain_error("m_moment: tol must be positive");
    auto f = [&](double t) { return zeta_abs_power(beta, t); };
    QuadratureOptions opt;
    opt.rel_tol = tol;
    return adaptive_integrate_real(f, 0.0, T, opt,
                                   uniform_breaks(0.0, T, std::min(0.5, T / 8.0)));
}

namespace detail {

// Graded x-grid for Integral |Phi|^2 dx: geometric toward 0 with ratio 0.9
// below 1, geometric expansion above.
inline std::vector<double> phi_square_breaks(double x_min, double x_max) {
    std::vector<double> breaks;
    for (double x = x_min; x < std::min(1.0, x_max); x /= 0.9) breaks.push_back(x);
    if (x_max >= 1.0) {
        for (double x = 1.0; x < x_max; x /= 0.9) breaks.push_back(x);
        breaks.push_back(x_max);
    } else {
        breaks.push_back(x_max);
    }
    return breaks;
}

// Integral_a^b |Phi_beta(x e^{i theta})|^2 dx over panel breaks.
inline IntegralEstimate phi_square_integral(int beta, double delta, double a, double b,
                                            double tol_abs, double phi_tol) {
    const double theta = half_pi - delta;
    // Warm the divisor cache before the parallel panel sweep.
    (void)phi_direct(beta, PolarArgument{a, theta}, phi_tol);
    auto f = [&](double x) {
        const auto phi = phi_direct(beta, PolarArgument{x, theta}, phi_tol);
        return std::norm(phi.value);
    };
    QuadratureOptions opt;
    opt.abs_tol = tol_abs;
    return adaptive_integrate_real(f, a, b, opt, phi_square_breaks(a, b));
}

// Tail cutoff X with Integral_X^inf |Phi|^2 <~ 2 X PsiBound(X)^2 < target
// (beyond X the residue polynomial dominates the exponentially dead sum).
inline double phi_square_upper_cutoff(int beta, double target) {
    const auto exp_data = shared_laurent(beta);
    double x = 16.0;
    while (2.0 * x * std::pow(psi_modulus_bound(*exp_data, x), 2.0) * 4.0 > target) {
        x *= 2.0;
        if (x > 1e12) throw budget_error("phi_square_upper_cutoff: no feasible cutoff");
    }
    return x;
}

}  // namespace detail

// Parseval bridge: left side (1/2pi) Integral |Gamma zeta^beta(1/2+it)|^2
// e^{(pi-2delta)t} dt, right side Integral_0^inf |Phi_beta(x e^{i(pi/2-delta)})|^2 dx,
// computed independently.
inline DecompositionReport parseval_check(int beta, double delta, double tol) {
    if (beta < 1) throw domain_error("parseval_check: beta must be >= 1");
    if (!(delta > 0.0 && delta < half_pi))
        throw domain_error("parseval_check: delta outside (0, pi/2)");
    if (delta < config().delta_min)
        throw budget_error("parseval_check: delta below delta_min budget (slow decay)");

    // ---- left side, in log space: 2 Re lgamma - pi t cancels analytically.
    auto w = [&](double t) {
        const Complex s(0.5, t);
        const double log_mag = 2.0 * lgamma_complex(s).real() + (pi - 2.0 * delta) * t;
        return std::exp(log_mag) * zeta_abs_power(beta, t);
    };
    const double tail = 1e-4 * tol;
    double t_up = 10.0 / delta;
    for (int it = 0; it < 64; ++it)
        t_up = (std::log(two_pi / tail) +
                0.5 * double(beta) * std::log(std::max(t_up, 2.0))) /
               (2.0 * delta);
    QuadratureOptions opt;
    opt.rel_tol = 0.1 * tol;
    auto pos = adaptive_integrate_real(w, 0.0, t_up, opt, uniform_breaks(0.0, t_up, 0.5));
    auto neg = adaptive_integrate_real(w, -40.0, 0.0, opt, uniform_breaks(-40.0, 0.0, 0.5));
    const double lhs = (pos.value.real() + neg.value.real()) / two_pi;

    // ---- right side.
    const double x_min = 1e-4;
    const double head_scale = std::norm(phi_direct(beta, PolarArgument::on_ray(x_min, delta), 1e-8).value);
    const double target_abs = 0.05 * tol * std::max(lhs, 1.0);
    const double x_max = detail::phi_square_upper_cutoff(beta, target_abs);
    auto rhs = detail::phi_square_integral(beta, delta, x_min, x_max, target_abs, 1e-8);

    DecompositionReport report;
    report.parseval_lhs = lhs;
    report.parseval_rhs = rhs.value.real();
    report.total = rhs.value.real();
    report.total_err = rhs.abs_err + head_scale * x_min + target_abs;
    report.o1_correction = neg.value.real() / two_pi;
    return report;
}

// Decomposition of Integral_0^inf |Phi_beta|^2 dx at the split points
// x = delta^{(beta-1)/2} and x = 1, with the residue-part integral computed
// separately and the J-bridge leftover j_moment(beta, 2 delta) - total.
inline DecompositionReport j_decomposition(int beta, double delta, double tol) {
    if (beta < 1) throw domain_error("j_decomposition: beta must be >= 1");
    if (!(delta > 0.0 && delta < half_pi))
        throw domain_error("j_decomposition: delta outside (0, pi/2)");
    if (delta < config().delta_min)
        throw budget_error("j_decomposition: delta below delta_min budget");

    const double split = std::pow(delta, 0.5 * double(beta - 1));
    const double theta = half_pi - delta;
    const double x_min = std::min(1e-4, 0.25 * split);
    const double j_ref = j_moment(beta, 2.0 * delta, tol).value.real();
    const double scale = std::max(1.0, j_ref);
    const double target_abs = 0.1 * tol * scale;
    const double x_max = detail::phi_square_upper_cutoff(beta, target_abs);

    DecompositionReport report;
    const double head =
        std::norm(phi_direct(beta, PolarArgument::on_ray(x_min, delta), 1e-8).value) * x_min;

    auto j3 = detail::phi_square_integral(beta, delta, x_min, split, target_abs, 1e-8);
    report.j3 = j3.value.real();
    report.j3_err = j3.abs_err + head;
    if (split < 1.0) {
        auto j4 = detail::phi_square_integral(beta, delta, split, 1.0, target_abs, 1e-8);
        report.j4 = j4.value.real();
        report.j4_err = j4.abs_err;
    }
    auto j1 = detail::phi_square_integral(beta, delta, 1.0, x_max, target_abs, 1e-8);
    report.j1 = j1.value.real();
    report.j1_err = j1.abs_err + target_abs;

    auto total = detail::phi_square_integral(beta, delta, x_min, x_max, target_abs, 1e-8);
    report.total = total.value.real();
    report.total_err = total.abs_err + head + target_abs;

    if (split < 1.0) {
        auto exp_data = shared_laurent(beta);
        auto psi2 = [&](double x) {
            return std::norm(psi_beta(*exp_data, std::polar(x, theta)));
        };
        QuadratureOptions opt;
        opt.abs_tol = target_abs;
        report.j6_residue =
            adaptive_integrate_real(psi2, split, 1.0, opt, geometric_breaks(split, 1.0, 0.9))
                .value.real();
    }

    report.parseval_rhs = report.total;
    report.parseval_lhs = j_ref;
    report.o1_correction = j_ref - report.total;
    return report;
}

// Catalog for the Laplace-to-Cesaro lemma Int_0^T f <= e Int_0^inf f e^{-t/T}:
//   0: f = 1,  1: f = t,  2: f = |zeta(1/2+it)|^2.
// Returns e * Int_0^inf f e^{-t/T} - Int_0^T f (>= 0 up to quadrature error).
inline double laplace_cesaro_check(int sample_id, double T) {
    if (!(T > 0.0)) throw domain_error("laplace_cesaro_check: T must be positive");
    const double tol = 1e-8;
    switch (sample_id) {
        case 0: {
            auto f = [](double) { return 1.0; };
            const double cut = T * std::log(1e12);
            QuadratureOptions opt;
            opt.rel_tol = tol;
            auto damped = adaptive_integrate_real([&](double t) { return f(t) * std::exp(-t / T); },
                                                  0.0, cut, opt, uniform_breaks(0.0, cut, T / 2.0));
            auto plain = adaptive_integrate_real(f, 0.0, T, opt);
            return std::exp(1.0) * damped.value.real() - plain.value.real();
        }
        case 1: {
            auto f = [](double t) { return t; };
            const double cut = T * (std::log(1e12) + 2.0 * std::log(std::max(T, 2.0)));
            QuadratureOptions opt;
            opt.rel_tol = tol;
            auto damped = adaptive_integrate_real([&](double t) { return f(t) * std::exp(-t / T); },
                                                  0.0, cut, opt, uniform_breaks(0.0, cut, T / 2.0));
            auto plain = adaptive_integrate_real(f, 0.0, T, opt);
            return std::exp(1.0) * damped.value.real() - plain.value.real();
        }
        case 2: {
            const double rel = 1e-4;
            auto damped = j_moment(1, 1.0 / T, rel);
            auto plain = m_moment(1, T, rel);
            return std::exp(1.0) * damped.value.real() - plain.value.real();
        }
        default:
            throw domain_error("laplace_cesaro_check: sample_id must be 0, 1 or 2");
    }
}

}  // namespace zml

#endif  // ZML_MOMENTS_HPP
