#ifndef ZML_DIVISOR_SUMS_HPP
#define ZML_DIVISOR_SUMS_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <vector>

#include "zml/common.hpp"

namespace zml {

// d_beta(n) = number of ordered beta-tuples (n_1, ..., n_beta) with product n,
// sieved exactly over 1..limit.
struct DivisorTable {
    int beta = 1;
    std::uint64_t limit = 0;
    std::vector<std::uint64_t> values;  // values[n] for n in 1..limit; [0] unused

    std::uint64_t operator()(std::uint64_t n) const { return values[n]; }

    // max d_beta(n) / n^{1/4} over the sieved range; tail-bound majorant
    // validated at build time (heuristic beyond the table).
    double growth_coefficient = 1.0;
    std::uint64_t max_value = 1;
};

inline DivisorTable sieve_dbeta(int beta, std::uint64_t limit) {
    if (beta < 1) throw domain_error("sieve_dbeta: beta must be >= 1");
    if (limit < 1) throw domain_error("sieve_dbeta: limit must be >= 1");
    if (limit > config().table_capacity)
        throw tolerance_error("sieve_dbeta: limit " + std::to_string(limit) +
                              " exceeds table capacity " +
                              std::to_string(config().table_capacity));

    DivisorTable table;
    table.beta = beta;
    table.limit = limit;
    table.values.assign(limit + 1, 1);
    table.values[0] = 0;

    // beta-1 Dirichlet convolutions with the constant-one function:
    // next[n] = sum_{d | n} cur[d].
    std::vector<std::uint64_t> next(limit + 1);
    for (int pass = 1; pass < beta; ++pass) {
        std::fill(next.begin(), next.end(), 0);
        for (std::uint64_t d = 1; d <= limit; ++d) {
            const std::uint64_t v = table.values[d];
            if (v == 0) continue;
            for (std::uint64_t m = d; m <= limit; m += d) {
                if (__builtin_add_overflow(next[m], v, &next[m]))
                    throw tolerance_error("sieve_dbeta: d_beta(n) overflows 64-bit range");
            }
        }
        table.values.swap(next);
    }

    double coeff = 1.0;
    std::uint64_t max_v = 1;
    for (std::uint64_t n = 1; n <= limit; ++n) {
        const double c = double(table.values[n]) / std::pow(double(n), 0.25);
        if (c > coeff) coeff = c;
        if (table.values[n] > max_v) max_v = table.values[n];
    }
    table.growth_coefficient = coeff;
    table.max_value = max_v;
    return table;
}

// Shared immutable tables, grown on demand.  Completed tables are never
// mutated, so handing out shared_ptr<const ...> is thread-safe.
inline std::shared_ptr<const DivisorTable> shared_dbeta(int beta, std::uint64_t min_limit) {
    static std::mutex mutex;
    static std::map<int, std::shared_ptr<const DivisorTable>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(beta);
    if (it != cache.end() && it->second->limit >= min_limit) return it->second;
    std::uint64_t limit = std::max<std::uint64_t>(min_limit, 1 << 16);
    if (it != cache.end()) limit = std::max(limit, it->second->limit * 2);
    limit = std::min<std::uint64_t>(limit, config().table_capacity);
    if (limit < min_limit)
        throw tolerance_error("shared_dbeta: required table size exceeds capacity");
    auto table = std::make_shared<const DivisorTable>(sieve_dbeta(beta, limit));
    cache[beta] = table;
    return table;
}

inline void write_csv(const DivisorTable& table, std::ostream& os) {
    os << "n,d_beta\n";
    for (std::uint64_t n = 1; n <= table.limit; ++n) os << n << ',' << table.values[n] << '\n';
}

namespace detail {

// Truncation rule for exp-weighted divisor sums: smallest power-of-two-ish N
// with (max_{n<=N} d^2(n)) e^{-N r} / (N r) < tol, then doubled once.
inline std::uint64_t sigma_truncation(int beta, double r, double tol,
                                      std::shared_ptr<const DivisorTable>& table) {
    std::uint64_t n_cut = std::uint64_t(std::max(64.0, 8.0 / r));
    for (;;) {
        table = shared_dbeta(beta, n_cut);
        std::uint64_t max_d = 1;
        for (std::uint64_t n = 1; n <= n_cut; ++n) max_d = std::max(max_d, table->values[n]);
        const double bound =
            double(max_d) * double(max_d) * std::exp(-double(n_cut) * r) / (double(n_cut) * r);
        if (bound < tol) break;
        if (n_cut >= config().table_capacity)
            throw tolerance_error("sigma truncation exceeds table capacity");
        n_cut *= 2;
    }
    n_cut = std::min<std::uint64_t>(n_cut * 2, config().table_capacity);
    table = shared_dbeta(beta, n_cut);
    return n_cut;
}

}  // namespace detail

// Sigma_1 = (1 / (2 sin delta)) sum_n d_beta^2(n) n^{-1} e^{-2 n sin delta}.
inline double sigma1(int beta, double delta, double tol) {
    if (!(delta > 0.0 && delta < half_pi)) throw domain_error("sigma1: delta outside (0, pi/2)");
    if (!(tol > 0.0)) throw domain_error("sigma1: tol must be positive");
    const double sd = std::sin(delta);
    std::shared_ptr<const DivisorTable> table;
    const std::uint64_t n_cut = detail::sigma_truncation(beta, sd, tol, table);

    KahanSum sum;
    for (std::uint64_t n = 1; n <= n_cut; ++n) {
        const double d = double(table->values[n]);
        const double term = d * d / double(n) * std::exp(-2.0 * double(n) * sd);
        if (term == 0.0 && double(n) * sd > 400.0) break;
        sum.add(term);
    }
    return sum.value() / (2.0 * sd);
}

// Exact truncated off-diagonal sum
//   Sigma_2(limit) = sum_{n != m <= limit} d(n) d(m) Int_1^inf e^{c x} dx
// with c = -(n+m) sin delta + i (n-m) cos delta, using Int = -e^c / c.
inline Complex sigma2_exact(int beta, double delta, std::uint64_t limit) {
    if (!(delta > 0.0 && delta < half_pi))
        throw domain_error("sigma2_exact: delta outside (0, pi/2)");
    auto table = shared_dbeta(beta, std::max<std::uint64_t>(limit, 1));
    const double sd = std::sin(delta);
    const double cd = std::cos(delta);

    // Pair (n, m) and (m, n) are conjugates, so the sum is real; both orders
    // are accumulated anyway to keep the operation literally symmetric.
    KahanSumComplex sum;
    for (std::uint64_t n = 2; n <= limit; ++n) {
        if (double(n + 1) * sd > 745.0) break;  // every remaining term underflows
        const double dn = double(table->values[n]);
        for (std::uint64_t m = 1; m < n; ++m) {
            const double re_c = -double(n + m) * sd;
            if (re_c < -745.0) break;  // larger m only drives e^{re_c} further under
            const Complex c(re_c, double(n - m) * cd);
            const Complex term = -std::exp(c) / c * (dn * double(table->values[m]));
            sum.add(term);
            sum.add(std::conj(term));
        }
    }
    return sum.value();
}

// Computable majorant  (1/cos delta) [sum_k e^{-k sin(delta)/2} / k]
//                                    [sum_n d^2(n) e^{-n sin delta}],
// the first factor in closed form  -log(1 - e^{-sin(delta)/2}).
inline double sigma2_bound(int beta, double delta) {
    if (!(delta > 0.0 && delta < half_pi))
        throw domain_error("sigma2_bound: delta outside (0, pi/2)");
    const double sd = std::sin(delta);
    const double log_factor = -std::log(-std::expm1(-0.5 * sd));

    std::shared_ptr<const DivisorTable> table;
    const std::uint64_t n_cut = detail::sigma_truncation(beta, sd, 1e-10, table);
    KahanSum sum;
    for (std::uint64_t n = 1; n <= n_cut; ++n) {
        const double d = double(table->values[n]);
        const double term = d * d * std::exp(-double(n) * sd);
        if (term == 0.0 && double(n) * sd > 400.0) break;
        sum.add(term);
    }
    return log_factor * sum.value() / std::cos(delta);
}

}  // namespace zml

#endif  // ZML_DIVISOR_SUMS_HPP
