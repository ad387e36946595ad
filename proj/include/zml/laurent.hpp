#ifndef ZML_LAURENT_HPP
#define ZML_LAURENT_HPP

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <vector>

#include "zml/common.hpp"
#include "zml/special_functions.hpp"

namespace zml {

// Laurent data of Gamma(s) zeta^beta(s) at s = 1:
//   Gamma(s) zeta^beta(s) = sum_{n=0}^{beta-1} lambda_n / (s-1)^{n+1}
//                         + sum_{n>=0} a_n (s-1)^n.
struct LaurentExpansion {
    int beta = 1;
    std::vector<double> principal;  // lambda_0 .. lambda_{beta-1}
    std::vector<double> analytic;   // a_0 .. a_depth
    double radius = 0.25;
};

namespace detail {

inline Complex gamma_zeta_pow(int beta, const Complex& s) {
    Complex z = zeta_complex(s);
    Complex p(1.0, 0.0);
    for (int k = 0; k < beta; ++k) p *= z;
    return gamma_complex(s) * p;
}

// Cauchy coefficients of Gamma zeta^beta around s = 1 on a circle of the given
// radius: c_m = (1/2 pi i) oint f(s) (s-1)^{-m-1} ds, trapezoid with M nodes.
inline std::vector<Complex> circle_coefficients(int beta, int lo, int hi, double radius,
                                                int nodes) {
    std::vector<Complex> f(static_cast<std::size_t>(nodes));
    for (int j = 0; j < nodes; ++j) {
        const double phi = two_pi * double(j) / double(nodes);
        f[std::size_t(j)] = gamma_zeta_pow(beta, 1.0 + std::polar(radius, phi));
    }
    std::vector<Complex> coeffs;
    coeffs.reserve(std::size_t(hi - lo + 1));
    for (int m = lo; m <= hi; ++m) {
        KahanSumComplex sum;
        for (int j = 0; j < nodes; ++j) {
            const double phi = two_pi * double(j) / double(nodes);
            sum.add(f[std::size_t(j)] * std::polar(std::pow(radius, -m), -m * phi));
        }
        coeffs.push_back(sum.value() / double(nodes));
    }
    return coeffs;
}

}  // namespace detail

inline LaurentExpansion laurent_extract(int beta, int depth, double radius = 0.25,
                                        int nodes = 512) {
    if (beta < 1) throw domain_error("laurent_extract: beta must be >= 1");
    if (depth < 0 || depth > 8) throw domain_error("laurent_extract: depth must be in [0, 8]");
    if (!(radius > 0.0 && radius < 1.0))
        throw domain_error("laurent_extract: radius must lie in (0, 1)");

    const int lo = -beta, hi = depth;
    const auto coarse = detail::circle_coefficients(beta, lo, hi, radius, nodes / 2);
    const auto fine = detail::circle_coefficients(beta, lo, hi, radius, nodes);
    for (std::size_t k = 0; k < fine.size(); ++k) {
        if (std::abs(fine[k] - coarse[k]) > 1e-8)
            throw validation_error("laurent_extract: node counts disagree beyond 1e-8");
    }

    LaurentExpansion exp;
    exp.beta = beta;
    exp.radius = radius;
    // fine[k] holds c_{lo+k}; lambda_n = c_{-(n+1)}, a_n = c_n.
    for (int n = 0; n < beta; ++n) {
        const Complex c = fine[std::size_t(beta - 1 - n)];
        if (std::abs(c.imag()) > 1e-10)
            throw validation_error("laurent_extract: principal coefficient not real");
        exp.principal.push_back(c.real());
    }
    for (int n = 0; n <= depth; ++n) {
        const Complex c = fine[std::size_t(beta + n)];
        if (std::abs(c.imag()) > 1e-10)
            throw validation_error("laurent_extract: analytic coefficient not real");
        exp.analytic.push_back(c.real());
    }
    if (std::abs(exp.principal.back() - 1.0) > 1e-9)
        throw validation_error("laurent_extract: leading singular coefficient differs from 1");
    return exp;
}

inline std::shared_ptr<const LaurentExpansion> shared_laurent(int beta) {
    static std::mutex mutex;
    static std::map<int, std::shared_ptr<const LaurentExpansion>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(beta);
    if (it != cache.end()) return it->second;
    auto exp = std::make_shared<const LaurentExpansion>(laurent_extract(beta, 4));
    cache[beta] = exp;
    return exp;
}

// Psi_beta(z) = Res_{s=1} Gamma(s) zeta^beta(s) z^{-s}
//            = (1/z) { lambda_0 - lambda_1 log z + ...
//                      + (-1)^{beta-1} lambda_{beta-1} log^{beta-1} z / (beta-1)! }.
inline Complex psi_beta(const LaurentExpansion& exp, const Complex& z) {
    if (std::abs(std::arg(z)) >= half_pi)
        throw domain_error("psi_beta: |Arg z| >= pi/2 (off the principal branch domain)");
    const Complex logz = std::log(z);
    Complex sum(0.0, 0.0);
    Complex logpow(1.0, 0.0);
    double factorial = 1.0;
    double sign = 1.0;
    for (std::size_t m = 0; m < exp.principal.size(); ++m) {
        if (m > 0) {
            logpow *= logz;
            factorial *= double(m);
            sign = -sign;
        }
        sum += sign * exp.principal[m] * logpow / factorial;
    }
    return sum / z;
}

inline Complex psi_beta(int beta, const Complex& z) { return psi_beta(*shared_laurent(beta), z); }

// Res_{s=0} Gamma(s) zeta^beta(s) z^{-s}: Gamma has a simple pole of residue 1
// at 0 and z^{-0} = 1, so the residue is zeta(0)^beta = (-1/2)^beta.
inline Complex residue_at_zero(int beta, const Complex& z) {
    if (std::abs(std::arg(z)) >= half_pi)
        throw domain_error("residue_at_zero: |Arg z| >= pi/2");
    (void)z;
    return Complex(std::pow(-0.5, beta), 0.0);
}

// Explicit upper bound for |Psi_beta(x e^{i(pi/2-delta)})| on x >= 1:
//   (1/x) sum_{m=1}^{beta} |lambda_{m-1}| (log x + pi/2)^{m-1} / (m-1)!.
inline double psi_modulus_bound(const LaurentExpansion& exp, double x) {
    const double u = std::log(x) + half_pi;
    double sum = 0.0;
    double upow = 1.0;
    double factorial = 1.0;
    for (std::size_t m = 0; m < exp.principal.size(); ++m) {
        if (m > 0) {
            upow *= u;
            factorial *= double(m);
        }
        sum += std::abs(exp.principal[m]) * upow / factorial;
    }
    return sum / x;
}

}  // namespace zml

#endif  // ZML_LAURENT_HPP
