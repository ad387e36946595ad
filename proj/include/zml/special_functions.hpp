#ifndef ZML_SPECIAL_FUNCTIONS_HPP
#define ZML_SPECIAL_FUNCTIONS_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "zml/common.hpp"

namespace zml {

// Vertical-strip bookkeeping for asymptotic envelopes: the envelope contracts
// below are only claimed for sigma in [sigma_low, sigma_high] and
// |t| >= t_threshold.
struct StripBound {
    double sigma_low = -5.0;
    double sigma_high = 10.0;
    double t_threshold = 10.0;
};

inline const StripBound& default_strip() {
    static const StripBound strip{};
    return strip;
}

namespace detail {

// ---------------------------------------------------------------------------
// log(sin z) and log(cos z), stable for large |Im z| where sin/cos overflow.
// Only exp() and Re() of the results are consumed downstream, so the branch
// of the log is irrelevant.
// ---------------------------------------------------------------------------
inline Complex log_sin(const Complex& z) {
    const double v = z.imag();
    if (std::abs(v) <= 20.0) {
        Complex s = std::sin(z);
        if (s == Complex(0.0, 0.0)) throw pole_error("log_sin: sin(z) = 0");
        return std::log(s);
    }
    const Complex iz(-z.imag(), z.real());  // i*z
    if (v > 0.0) {
        // sin z = (i/2) e^{-iz} (1 - e^{2iz}),  |e^{2iz}| = e^{-2v} << 1
        return Complex(-std::log(2.0), half_pi) - iz + std::log(1.0 - std::exp(2.0 * iz));
    }
    // sin z = -(i/2) e^{iz} (1 - e^{-2iz}),  |e^{-2iz}| = e^{2v} << 1
    return Complex(-std::log(2.0), -half_pi) + iz + std::log(1.0 - std::exp(-2.0 * iz));
}

inline Complex log_cos(const Complex& z) { return log_sin(z + Complex(half_pi, 0.0)); }

// ---------------------------------------------------------------------------
// Lanczos rational approximation, 13-term double-precision coefficient set
// (g = 6.024680040776729583740234375, relative error ~1e-17 on Re z >= 0.5).
// The denominator is z(z+1)...(z+11) expanded in ascending powers.
// ---------------------------------------------------------------------------
inline constexpr double lanczos_g = 6.024680040776729583740234375;

inline Complex lanczos_sum(const Complex& z) {
    static constexpr std::array<double, 13> num = {
        23531376880.410759688572007674451636754734,
        42919803642.649098768957899047001988850926,
        35711959237.355668049440185451547166705960,
        17921034426.037209699919755754458931112671,
        6039542586.3520280050642916443072979210699,
        1439720407.3117216736632230727949123939715,
        248874557.86205415651146038641322942321632,
        31426415.585400194380614231628318205362874,
        2876370.6289353724412254090516208496135991,
        186056.26539522349504029498971604569928220,
        8071.6720023658162106380029022722506138218,
        210.82427775157934587250973392071336271166,
        2.5066282746310002701649081771338373386264,
    };
    static constexpr std::array<double, 13> den = {
        0.0,        39916800.0, 120543840.0, 150917976.0, 105258076.0,
        45995730.0, 13339535.0, 2637558.0,   357423.0,    32670.0,
        1925.0,     66.0,       1.0,
    };
    // Evaluate in 1/z when |z| is large to keep the Horner intermediates tame.
    if (std::abs(z) <= 10.0) {
        Complex p(0.0, 0.0), q(0.0, 0.0);
        for (int k = 12; k >= 0; --k) {
            p = p * z + num[std::size_t(k)];
            q = q * z + den[std::size_t(k)];
        }
        return p / q;
    }
    const Complex w = 1.0 / z;
    Complex p(0.0, 0.0), q(0.0, 0.0);
    for (int k = 0; k <= 12; ++k) {
        p = p * w + num[std::size_t(k)];
        q = q * w + den[std::size_t(k)];
    }
    return p / q;
}

inline void check_gamma_pole(const Complex& s) {
    if (s.real() <= 0.5 && std::abs(s.imag()) < 0.5) {
        const double k = std::round(s.real());
        if (k <= 0.0 && std::abs(s - Complex(k, 0.0)) < 1e-14)
            throw pole_error("gamma: pole at nonpositive integer");
    }
}

// B_{2k} for 2k = 2..30 (the Euler-Maclaurin correction order cap).
inline constexpr std::array<double, 15> bernoulli_2k = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
};

// Thread-local cache of log n (and 1/sqrt(n) for the sigma = 1/2 hot path).
struct ZetaTables {
    std::vector<double> logn{0.0, 0.0};   // logn[n], n >= 1
    std::vector<double> rsqrt{0.0, 1.0};  // 1/sqrt(n)
    void ensure(std::size_t n) {
        if (logn.size() > n) return;
        std::size_t cap = logn.size();
        while (cap <= n) cap *= 2;
        logn.reserve(cap);
        rsqrt.reserve(cap);
        for (std::size_t k = logn.size(); k < cap; ++k) {
            logn.push_back(std::log(double(k)));
            rsqrt.push_back(1.0 / std::sqrt(double(k)));
        }
    }
};

inline ZetaTables& zeta_tables() {
    thread_local ZetaTables tables;
    return tables;
}

// Euler-Maclaurin evaluation, valid for Re s >= 0 (used for Re s >= 0 here;
// the functional equation covers the left half plane).
inline Complex zeta_euler_maclaurin(const Complex& s) {
    const double at = std::abs(s.imag());
    const std::size_t n_cut = std::size_t(std::max(20.0, std::ceil(1.3 * at)));
    auto& tables = zeta_tables();
    tables.ensure(n_cut);
    const double* logn = tables.logn.data();
    const double* rsqrt = tables.rsqrt.data();

    const bool half_line = (s.real() == 0.5);
    const double sigma = s.real();
    const double t = s.imag();

    KahanSumComplex sum;
    for (std::size_t n = 1; n < n_cut; ++n) {
        const double mag = half_line ? rsqrt[n] : std::exp(-sigma * logn[n]);
        const double ph = -t * logn[n];
        sum.add(Complex(mag * std::cos(ph), mag * std::sin(ph)));
    }

    const double logN = logn[n_cut];
    const Complex n_pow_ms = std::exp(-s * logN);  // N^{-s}
    const double N = double(n_cut);

    Complex result = sum.value();
    result += N * n_pow_ms / (s - 1.0);  // N^{1-s}/(s-1)
    result += 0.5 * n_pow_ms;

    // Correction terms B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{1-s-2k}
    Complex poch = s;                      // rising factorial, 2k-1 factors
    Complex npow = n_pow_ms / N;           // N^{-s-2k+1}
    double fact = 2.0;                     // (2k)!
    const double target = 1e-16 * (1.0 + std::abs(result));
    for (std::size_t k = 1; k <= bernoulli_2k.size(); ++k) {
        const Complex term = (bernoulli_2k[k - 1] / fact) * poch * npow;
        result += term;
        if (std::abs(term) < target) break;
        if (k == bernoulli_2k.size()) break;
        poch *= (s + double(2 * k - 1)) * (s + double(2 * k));
        npow /= N * N;
        fact *= double(2 * k + 1) * double(2 * k + 2);
    }
    return result;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// log Gamma(s).  Branch is unspecified (only exp() and Re() are meaningful);
// Lanczos on Re s >= 0.5, reflection in log space otherwise.
// ---------------------------------------------------------------------------
inline Complex lgamma_complex(const Complex& s) {
    detail::check_gamma_pole(s);
    if (s.real() >= 0.5) {
        // Gamma(z) = L(z) (z+g-1/2)^{z-1/2} e^{-(z+g-1/2)}; sqrt(2 pi) lives
        // inside the rational sum's leading coefficient.
        const Complex base = s + (detail::lanczos_g - 0.5);
        return (s - 0.5) * std::log(base) - base + std::log(detail::lanczos_sum(s));
    }
    // Gamma(s) Gamma(1-s) = pi / sin(pi s)
    return std::log(pi) - detail::log_sin(pi * s) - lgamma_complex(1.0 - s);
}

inline Complex gamma_complex(const Complex& s) {
    const Complex g = std::exp(lgamma_complex(s));
    return require_finite(g, "gamma_complex");
}

// ---------------------------------------------------------------------------
// zeta(s): Euler-Maclaurin for Re s >= 0, functional equation otherwise.
// ---------------------------------------------------------------------------
inline Complex chi_factor(const Complex& s);  // forward

inline Complex zeta_complex(const Complex& s) {
    if (std::abs(s - Complex(1.0, 0.0)) < 1e-14) throw pole_error("zeta: pole at s = 1");
    if (s.real() >= 0.0) return require_finite(detail::zeta_euler_maclaurin(s), "zeta_complex");
    const Complex value = chi_factor(s) * detail::zeta_euler_maclaurin(1.0 - s);
    return require_finite(value, "zeta_complex");
}

// chi(s) = (2 pi)^s / (2 Gamma(s) cos(pi s / 2)), the factor in
// zeta(s) = chi(s) zeta(1-s).  Computed in log space so that the Gamma decay
// and the cosh growth cancel analytically instead of over/underflowing.
inline Complex chi_factor(const Complex& s) {
    const Complex w = half_pi * s;
    if (std::abs(s.imag()) <= 20.0) {
        // guard the zeros of cos(pi s / 2) at odd integers
        if (std::abs(std::cos(w)) < 1e-14)
            throw pole_error("chi_factor: cos(pi s/2) = 0 (odd integer s)");
    }
    const Complex log_chi =
        s * std::log(two_pi) - std::log(2.0) - lgamma_complex(s) - detail::log_cos(w);
    return require_finite(std::exp(log_chi), "chi_factor");
}

// ---------------------------------------------------------------------------
// Stirling modulus envelope |Gamma(sigma+it)| ~ sqrt(2 pi) |t|^{sigma-1/2}
// e^{-pi |t| / 2}.  The log form is what contour-truncation solvers use;
// the plain form underflows for |t| beyond ~440, as Gamma itself does.
// ---------------------------------------------------------------------------
inline double log_gamma_envelope(double sigma, double t) {
    const double at = std::abs(t);
    return 0.5 * std::log(two_pi) + (sigma - 0.5) * std::log(at) - half_pi * at;
}

inline double gamma_envelope(double sigma, double t, const StripBound& strip = default_strip()) {
    if (std::abs(t) < strip.t_threshold)
        throw domain_error("gamma_envelope: |t| below strip threshold");
    if (sigma < strip.sigma_low || sigma > strip.sigma_high)
        throw domain_error("gamma_envelope: sigma outside strip");
    return std::exp(log_gamma_envelope(sigma, t));
}

// Crude growth exponent for |zeta(sigma+it)| <= c (1+|t|)^e log-ish factors;
// used only to size contour truncations (a log factor is absorbed by the
// safety margin of the solve).
inline double zeta_growth_exponent(double sigma) {
    if (sigma >= 1.0) return 0.1;
    if (sigma >= 0.0) return 0.5 * (1.0 - sigma) + 0.1;
    return 0.5 - sigma + 0.1;
}

}  // namespace zml

#endif  // ZML_SPECIAL_FUNCTIONS_HPP
