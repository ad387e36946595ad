#ifndef ZML_COMMON_HPP
#define ZML_COMMON_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace zml {

using Complex = std::complex<double>;

inline constexpr double pi      = 3.141592653589793238462643383279502884;
inline constexpr double two_pi  = 6.283185307179586476925286766559005768;
inline constexpr double half_pi = 1.570796326794896619231321691639751442;
// Euler-Mascheroni constant
inline constexpr double euler_gamma = 0.577215664901532860606512090082402431;

// ---------------------------------------------------------------------------
// Error taxonomy.  The CLI maps these onto exit codes:
//   domain_error / pole_error        -> 2 (usage / precondition violation)
//   budget_error / tolerance_error   -> 3 (node budget, truncation capacity)
//   validation_error                 -> 4 (cross-check disagreement)
// ---------------------------------------------------------------------------
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct pole_error : domain_error {
    using domain_error::domain_error;
};
struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct tolerance_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline bool is_finite(double x) { return std::isfinite(x); }
inline bool is_finite(const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline Complex require_finite(const Complex& z, const char* what) {
    if (!is_finite(z)) throw validation_error(std::string(what) + ": non-finite result");
    return z;
}

// ---------------------------------------------------------------------------
// Compensated (Kahan-Neumaier) accumulators for long sums.
// ---------------------------------------------------------------------------
class KahanSum {
  public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class KahanSumComplex {
  public:
    void add(const Complex& z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    Complex value() const { return {re_.value(), im_.value()}; }

  private:
    KahanSum re_, im_;
};

// ---------------------------------------------------------------------------
// Global run configuration (set once by the CLI or a test before heavy work;
// read concurrently afterwards).
// ---------------------------------------------------------------------------
struct Config {
    double tol = 1e-6;
    double delta_min = 1e-3;
    std::int64_t node_budget = 50'000'000;
    int threads = 0;  // 0 = auto
    std::uint64_t table_capacity = 8'000'000;
};

inline Config& config() {
    static Config cfg;
    return cfg;
}

// Deterministic xorshift-based generator: identical streams on every platform,
// unlike std::uniform_real_distribution.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in [0, 1)
    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }
    // uniform in [lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  private:
    std::uint64_t state_;
};

}  // namespace zml

#endif  // ZML_COMMON_HPP
