#ifndef ZML_IDENTITIES_HPP
#define ZML_IDENTITIES_HPP

#include <cmath>
#include <string>
#include <vector>

#include "zml/common.hpp"
#include "zml/special_functions.hpp"

namespace zml {

// One row of the seeded identity suite: the worst relative residual of an
// analytic identity over `count` random points.
struct IdentityResult {
    std::string name;
    double max_residual = 0.0;
    double threshold = 0.0;
    bool pass() const { return max_residual < threshold; }
};

// Functional equation, Gamma recurrence and reflection, chi(s) chi(1-s) = 1,
// and conjugation symmetry, each over seeded random points in the strips the
// contracts name.
inline std::vector<IdentityResult> run_identity_suite(std::uint64_t seed, int count,
                                                      double threshold = 1e-9) {
    std::vector<IdentityResult> results;

    {
        SplitMix64 rng(seed);
        IdentityResult r{"gamma_recurrence", 0.0, threshold};
        for (int i = 0; i < count; ++i) {
            const Complex s(rng.uniform(-2.0, 8.0), rng.uniform(-100.0, 100.0));
            if (s.real() <= 0.5 && std::abs(s.imag()) < 0.3) continue;
            const Complex lhs = gamma_complex(s + 1.0);
            const Complex rhs = s * gamma_complex(s);
            r.max_residual = std::max(r.max_residual, std::abs(lhs - rhs) / std::abs(lhs));
        }
        results.push_back(r);
    }
    {
        SplitMix64 rng(seed + 1);
        IdentityResult r{"gamma_reflection", 0.0, threshold};
        for (int i = 0; i < count; ++i) {
            const Complex s(rng.uniform(-2.0, 3.0), rng.uniform(-40.0, 40.0));
            if (std::abs(s.imag()) < 0.2 &&
                std::abs(s.real() - std::round(s.real())) < 0.1)
                continue;  // keep clear of the poles of 1/sin
            const Complex ref = pi / std::sin(pi * s);
            const Complex lhs = gamma_complex(s) * gamma_complex(1.0 - s);
            r.max_residual = std::max(r.max_residual, std::abs(lhs - ref) / std::abs(ref));
        }
        results.push_back(r);
    }
    {
        SplitMix64 rng(seed + 2);
        IdentityResult r{"zeta_functional_equation", 0.0, threshold};
        for (int i = 0; i < count; ++i) {
            const Complex s(rng.uniform(0.02, 0.98),
                            (rng.next_double() < 0.5 ? -1.0 : 1.0) * rng.uniform(1.0, 500.0));
            const Complex lhs = zeta_complex(s);
            const Complex rhs = chi_factor(s) * zeta_complex(1.0 - s);
            r.max_residual =
                std::max(r.max_residual, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
        }
        results.push_back(r);
    }
    {
        SplitMix64 rng(seed + 3);
        IdentityResult r{"chi_inverse_product", 0.0, threshold};
        for (int i = 0; i < count; ++i) {
            const Complex s(rng.uniform(0.02, 0.98),
                            (rng.next_double() < 0.5 ? -1.0 : 1.0) * rng.uniform(1.0, 500.0));
            const Complex prod = chi_factor(s) * chi_factor(1.0 - s);
            r.max_residual = std::max(r.max_residual, std::abs(prod - 1.0));
        }
        results.push_back(r);
    }
    {
        SplitMix64 rng(seed + 4);
        IdentityResult r{"zeta_conjugation", 0.0, threshold};
        for (int i = 0; i < count; ++i) {
            const Complex s(rng.uniform(-1.0, 3.0), rng.uniform(0.5, 200.0));
            const Complex lhs = zeta_complex(std::conj(s));
            const Complex rhs = std::conj(zeta_complex(s));
            r.max_residual =
                std::max(r.max_residual, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
        }
        results.push_back(r);
    }
    return results;
}

}  // namespace zml

#endif  // ZML_IDENTITIES_HPP
