#ifndef ZML_PHI_HPP
#define ZML_PHI_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <vector>

#include "zml/common.hpp"
#include "zml/divisor_sums.hpp"
#include "zml/laurent.hpp"
#include "zml/quadrature.hpp"
#include "zml/special_functions.hpp"

namespace zml {

// z = modulus * e^{i angle}; the regularized sum is evaluated on rays
// angle = pi/2 - delta, 0 < delta < pi/2.
struct PolarArgument {
    double modulus = 1.0;
    double angle = 0.0;

    Complex to_complex() const { return std::polar(modulus, angle); }
    static PolarArgument on_ray(double x, double delta) { return {x, half_pi - delta}; }
};

// A truncated vertical contour Re s = abscissa.  t_max = 0 asks the operation
// to solve the truncation height from the Stirling envelope itself.
struct ContourSpec {
    double abscissa = 0.5;
    double t_max = 0.0;
    double tol = 1e-8;
};

namespace detail {

inline void check_polar(const PolarArgument& z, const char* where) {
    if (!(z.modulus > 0.0)) throw domain_error(std::string(where) + ": modulus must be positive");
    if (!(std::abs(z.angle) < half_pi))
        throw domain_error(std::string(where) + ": |Arg z| must be < pi/2");
}

// Smallest t with envelope(sigma,t) * (1+t)^growth * e^{linear * t} < target,
// solved in logs by doubling + bisection.  linear must leave net decay.
inline double truncation_height(double sigma, double growth, double linear, double log_target) {
    auto log_mag = [&](double t) {
        return log_gamma_envelope(sigma, t) + growth * std::log1p(t) + linear * t;
    };
    if (!(linear < half_pi)) throw domain_error("truncation_height: contour does not decay");
    double hi = 8.0;
    while (log_mag(hi) > log_target) {
        hi *= 2.0;
        if (hi > 1e9) throw budget_error("truncation_height: no feasible truncation found");
    }
    double lo = hi / 2.0;
    for (int it = 0; it < 48; ++it) {
        const double mid = 0.5 * (lo + hi);
        (log_mag(mid) > log_target ? lo : hi) = mid;
    }
    return hi;
}

// (1/2 pi) Integral of exp(lgamma(s) + s*mult + extra_zeta_power(s)) dt over
// the truncated line s = sigma + i t.  All magnitudes are assembled in log
// space before the exp, so Gamma decay and |z|^{-s} growth cancel without
// intermediate under/overflow.
template <class ZetaPow>
IntegralEstimate line_integral(double sigma, const Complex& mult, int zeta_power, double growth,
                               double tol, ZetaPow&& zeta_pow, double t_cap = 0.0) {
    // |exp(s mult)| = e^{sigma Re(mult)} e^{-t Im(mult)} on s = sigma + it.
    const double mi = mult.imag();
    if (half_pi - std::abs(mi) < 0.01)
        throw budget_error("line integral: decay angle below 0.01 (slow-decay)");
    // log(2) head-room per zeta factor on top of the power-law growth model
    const double log_target =
        std::log(tol / 10.0) - sigma * mult.real() - 0.69 * double(zeta_power);
    double t_up = truncation_height(sigma, growth, -mi, log_target);
    double t_down = truncation_height(sigma, growth, +mi, log_target);
    if (t_cap > 0.0) t_up = t_down = t_cap;  // caller-asserted truncation height

    auto f = [&](double t) -> Complex {
        const Complex s(sigma, t);
        return std::exp(lgamma_complex(s) + s * mult) * zeta_pow(s);
    };
    // Panels sized by the t-phase rate Re(mult) of exp(s mult); the slower
    // Gamma phase is left to adaptive refinement.
    const double width =
        std::clamp(half_pi / (std::abs(mult.real()) + std::abs(mi) + 0.2), 0.25, 1.5);
    QuadratureOptions opt;
    opt.abs_tol = 0.45 * tol;
    auto est = adaptive_integrate(f, -t_down, t_up, opt, uniform_breaks(-t_down, t_up, width));
    est.value /= two_pi;
    est.abs_err = est.abs_err / two_pi + 2.0 * tol / 10.0;
    return est;
}

// Truncation point for sum d_beta(n) e^{-n r}: majorant C n^{1/4} e^{-n r}
// with C validated on the sieved range, geometric tail closed form.
inline std::uint64_t phi_series_cutoff(int beta, double r, double tol,
                                       std::shared_ptr<const DivisorTable>& table) {
    std::uint64_t n_cut = std::uint64_t(std::max(32.0, 0.5 / r));
    for (;;) {
        table = shared_dbeta(beta, n_cut);
        const double c = table->growth_coefficient;
        const double tail = c * std::pow(double(n_cut + 1), 0.25) *
                            std::exp(-double(n_cut + 1) * r) / (-std::expm1(-0.5 * r));
        if (tail < tol) break;
        if (n_cut >= config().table_capacity)
            throw tolerance_error("phi series truncation exceeds table capacity (Re z = " +
                                  std::to_string(r) + ")");
        n_cut *= 2;
    }
    return n_cut;
}

// sum_{n<=N} d_beta(n) e^{-n z}, exponentials refreshed exactly every block so
// the recurrence error stays near machine precision.  abs_mass accumulates
// sum d(n) e^{-n Re z}, the scale of the cancellation the rounding rides on.
inline Complex divisor_exp_sum(const DivisorTable& table, std::uint64_t n_cut, const Complex& z,
                               double& abs_mass) {
    constexpr std::uint64_t block = 64;
    const Complex step = std::exp(-z);
    KahanSumComplex sum;
    KahanSum mass;
    Complex e(0.0, 0.0);
    for (std::uint64_t n = 1; n <= n_cut; ++n) {
        e = (n % block == 1 || block == 1) ? std::exp(-double(n) * z) : e * step;
        const double d = double(table.values[n]);
        sum.add(d * e);
        mass.add(d * (std::abs(e.real()) + std::abs(e.imag())));
        if (double(n) * z.real() > 745.0) break;
    }
    abs_mass = mass.value();
    return sum.value();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Phi_beta(z) = sum_n d_beta(n) e^{-nz} - Psi_beta(z), by direct summation.
// ---------------------------------------------------------------------------
inline IntegralEstimate phi_direct(int beta, const PolarArgument& z, double tol) {
    detail::check_polar(z, "phi_direct");
    if (!(tol > 0.0)) throw domain_error("phi_direct: tol must be positive");
    const Complex zc = z.to_complex();
    const double r = zc.real();

    std::shared_ptr<const DivisorTable> table;
    const std::uint64_t n_cut = detail::phi_series_cutoff(beta, r, tol, table);
    double abs_mass = 0.0;
    const Complex sum = detail::divisor_exp_sum(*table, n_cut, zc, abs_mass);
    const Complex value = sum - psi_beta(beta, zc);
    // truncation tail plus the rounding floor of the cancelling summation
    const double abs_err = tol + 1e-15 * (abs_mass + std::abs(value));
    return {require_finite(value, "phi_direct"), abs_err, std::int64_t(n_cut), 0};
}

// ---------------------------------------------------------------------------
// Phi_beta(z) = (1/2 pi i) Integral_{(sigma)} Gamma(s) zeta^beta(s) z^{-s} ds,
// sigma in (0, 1); the horizontal segments vanish under the Stirling decay.
// ---------------------------------------------------------------------------
inline IntegralEstimate phi_halfline(int beta, const PolarArgument& z,
                                     const ContourSpec& spec = {}) {
    detail::check_polar(z, "phi_halfline");
    const double sigma = spec.abscissa;
    if (!(sigma > 0.0 && sigma < 1.0))
        throw domain_error("phi_halfline: abscissa must lie in (0, 1)");
    // z^{-s} = exp(-s log z): mult = -Log z.
    const Complex mult = -std::log(z.to_complex());
    const double growth = double(beta) * std::max(zeta_growth_exponent(sigma), 0.5);
    return detail::line_integral(
        sigma, mult, beta, growth, spec.tol,
        [&](const Complex& s) {
            Complex zp = zeta_complex(s);
            Complex p(1.0, 0.0);
            for (int k = 0; k < beta; ++k) p *= zp;
            return p;
        },
        spec.t_max);
}

// ---------------------------------------------------------------------------
// Phi_beta evaluated at w = 1/conj(z) through the reflected contour:
//   Phi_beta(1/zbar) = (1/2 pi i) Integral_{(-alpha)} Gamma zeta^beta zbar^s ds
//                      + Res_{s=0} Gamma(s) zeta^beta(s) zbar^s.
// ---------------------------------------------------------------------------
inline IntegralEstimate phi_reflected(int beta, const PolarArgument& zbar_inv, double alpha,
                                      const ContourSpec& spec = {}) {
    detail::check_polar(zbar_inv, "phi_reflected");
    if (!(alpha > 0.0 && alpha < 1.0)) throw domain_error("phi_reflected: alpha outside (0, 1)");
    const Complex w = zbar_inv.to_complex();
    const Complex zbar = 1.0 / w;
    // zbar^s = exp(s log zbar): mult = +Log zbar = -Log w.
    const Complex mult = std::log(zbar);
    const double growth = double(beta) * std::max(zeta_growth_exponent(-alpha), 0.5);
    auto est = detail::line_integral(
        -alpha, mult, beta, growth, spec.tol,
        [&](const Complex& s) {
            Complex zp = zeta_complex(s);
            Complex p(1.0, 0.0);
            for (int k = 0; k < beta; ++k) p *= zp;
            return p;
        },
        spec.t_max);
    est.value += residue_at_zero(beta, w);
    return est;
}

// ---------------------------------------------------------------------------
// Cahen-Mellin line integral (1/2 pi i) Integral_{(c)} Gamma(w) u^{-w} dw,
// which equals exp(-u) for Re u > 0.
// ---------------------------------------------------------------------------
inline IntegralEstimate cahen_mellin_line(const Complex& u, double abscissa, double tol = 1e-9) {
    if (!(abscissa > 0.0)) throw domain_error("cahen_mellin_line: abscissa must be positive");
    if (!(u.real() > 0.0) || std::abs(std::arg(u)) >= half_pi)
        throw domain_error("cahen_mellin_line: Re u must be positive (decay violated)");
    const Complex mult = -std::log(u);
    return detail::line_integral(abscissa, mult, 0, 0.0, tol,
                                 [](const Complex&) { return Complex(1.0, 0.0); });
}

// ---------------------------------------------------------------------------
// Shifted Cahen-Mellin identity from the reflected-ray analysis: after the
// substitution w = (beta-1) s - beta/2 + 1 the inner integral collapses to
//   exp( - ((2 pi)^beta n zbar e^{-+ i (beta-2) pi/2})^{1/(beta-1)} ).
// Returns the larger absolute difference between the two numerically
// integrated branches and their closed forms.
// ---------------------------------------------------------------------------
inline double shifted_cahen_mellin_check(int beta, std::int64_t n, const PolarArgument& z,
                                         double alpha) {
    if (beta < 2) throw domain_error("shifted_cahen_mellin_check: beta must be >= 2");
    if (n < 1) throw domain_error("shifted_cahen_mellin_check: n must be >= 1");
    detail::check_polar(z, "shifted_cahen_mellin_check");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw domain_error("shifted_cahen_mellin_check: alpha outside (0, 1)");

    const double y = z.modulus;
    const double arg_zbar = -z.angle;
    const double p = double(beta - 1);
    const double abscissa = p * (1.0 + alpha) - 0.5 * double(beta) + 1.0;
    const double log_mod_u = (double(beta) * std::log(two_pi) + std::log(double(n)) + std::log(y)) / p;

    double worst = 0.0;
    for (int sign : {-1, +1}) {
        // Phase carried unreduced: the (beta-1)-th root follows the branch the
        // contour analysis picks, not the principal one.
        const double phase = (arg_zbar + double(sign) * double(beta - 2) * half_pi) / p;
        const Complex u = std::polar(std::exp(log_mod_u), phase);
        if (!(u.real() > 0.0))
            throw domain_error("shifted_cahen_mellin_check: root has nonpositive real part");
        const Complex numeric = cahen_mellin_line(u, abscissa, 1e-9).value;
        const Complex closed = std::exp(-u);
        worst = std::max(worst, std::abs(numeric - closed));
    }
    return worst;
}

// ---------------------------------------------------------------------------
// The reflected three-term expansion at w = (1/y) e^{i(pi/2-delta)}:
//   T1 = y^{-alpha} sum d(n) n^{-1-alpha}            (= y^{-alpha} zeta^beta(1+alpha))
//   T2 = y^{1-k} sum d(n) n^{-k} exp(i c n^{1/p} e^{i delta/p})     (oscillatory)
//   T3 = y^{1-k} sum d(n) n^{-k} exp(-c n^{1/p} sin((pi-delta)/p))  (decaying)
// with k = (beta/2-1)/(beta-1), p = beta-1, c = (2 pi)^{beta/p} y^{1/p}.
// ---------------------------------------------------------------------------
struct TsumResult {
    double t1 = 0.0;
    Complex t2{0.0, 0.0};
    double t3 = 0.0;
};

namespace detail {

// Tail bound sum_{n>N} C n^q e^{-a n^{1/p}} via the u = x^{1/p} substitution
// and Integral_M^inf u^m e^{-au} du <= M^m e^{-aM} / (a - m/M) for aM > m.
inline double stretched_exp_tail(double coeff, double q, double a, int p, double n_from) {
    const double m = double(p) * (q + 1.0) - 1.0;
    const double big_m = std::pow(n_from, 1.0 / double(p));
    if (a * big_m <= m + 1.0) return std::numeric_limits<double>::infinity();
    const double log_int = m * std::log(big_m) - a * big_m - std::log(a - m / big_m);
    const double head = std::pow(n_from, q) * std::exp(-a * big_m);
    return coeff * (double(p) * std::exp(log_int) + head);
}

}  // namespace detail

inline TsumResult phi_tsum(int beta, double y, double delta, double alpha, double tol) {
    if (beta < 2) throw domain_error("phi_tsum: beta must be >= 2");
    if (!(y > 1.0)) throw domain_error("phi_tsum: y must exceed 1");
    if (!(delta > 0.0 && delta < half_pi)) throw domain_error("phi_tsum: delta outside (0, pi/2)");
    if (!(alpha > 0.0 && alpha < 1.0)) throw domain_error("phi_tsum: alpha outside (0, 1)");

    const int p = beta - 1;
    const double kappa = (0.5 * double(beta) - 1.0) / double(p);
    const double c = std::pow(two_pi, double(beta) / double(p)) * std::pow(y, 1.0 / double(p));
    const double decay2 = c * std::sin(delta / double(p));
    const double decay3 = c * std::sin((pi - delta) / double(p));
    const double osc = c * std::cos(delta / double(p));

    TsumResult out;
    // T1: the Dirichlet series identity sum d_beta(n) n^{-1-alpha} =
    // zeta^beta(1+alpha); a power-law tail cannot be truncated below tol at
    // any feasible N, the closed form is exact.
    out.t1 = std::pow(y, -alpha) *
             std::pow(zeta_complex(Complex(1.0 + alpha, 0.0)).real(), double(beta));

    const double prefactor = std::pow(y, 1.0 - kappa);
    auto table = shared_dbeta(beta, 64);
    KahanSumComplex s2;
    KahanSum s3;
    const double min_decay = std::min(decay2, decay3);
    std::uint64_t n = 1;
    for (;; ++n) {
        if (n > table->limit) table = shared_dbeta(beta, n);
        const double root = std::pow(double(n), 1.0 / double(p));
        const double amp = double(table->values[n]) * std::pow(double(n), -kappa);
        s2.add(amp * std::polar(std::exp(-decay2 * root), osc * root));
        s3.add(amp * std::exp(-decay3 * root));
        const double tail = detail::stretched_exp_tail(table->growth_coefficient, 0.25 - kappa,
                                                       min_decay, p, double(n + 1));
        if (tail * prefactor < tol) break;
        if (n >= config().table_capacity)
            throw tolerance_error("phi_tsum: series needs more terms than table capacity");
    }
    out.t2 = prefactor * s2.value();
    out.t3 = prefactor * s3.value();
    return out;
}

}  // namespace zml

#endif  // ZML_PHI_HPP
