#ifndef ZML_QUADRATURE_HPP
#define ZML_QUADRATURE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "zml/common.hpp"
#include "zml/parallel.hpp"

namespace zml {

// One quadrature result: value, an error estimate, and the work it took.
struct IntegralEstimate {
    Complex value{0.0, 0.0};
    double abs_err = 0.0;
    std::int64_t nodes = 0;
    int panels = 0;

    double real_value() const { return value.real(); }
};

struct QuadratureOptions {
    double abs_tol = 1e-10;
    double rel_tol = 0.0;
    std::int64_t max_nodes = 0;  // 0 = use config().node_budget
    int threads = 0;             // 0 = use config().threads
};

namespace detail {

// Gauss-Kronrod 7-15 nodes and weights (QUADPACK dqk15 constants).
inline constexpr std::array<double, 8> gk15_x = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
inline constexpr std::array<double, 8> gk15_wk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421036,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
inline constexpr std::array<double, 4> gk15_wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Panel {
    double a, b;
    Complex value;
    double err;
};

template <class F>
Panel gk15_panel(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    std::array<Complex, 15> fv;
    fv[7] = f(c);
    for (int j = 0; j < 7; ++j) {
        const double dx = h * gk15_x[std::size_t(j)];
        fv[std::size_t(j)] = f(c - dx);
        fv[std::size_t(14 - j)] = f(c + dx);
    }
    Complex kron(0.0, 0.0), gauss(0.0, 0.0);
    for (int j = 0; j < 7; ++j)
        kron += gk15_wk[std::size_t(j)] * (fv[std::size_t(j)] + fv[std::size_t(14 - j)]);
    kron += gk15_wk[7] * fv[7];
    for (int j = 0; j < 3; ++j)
        gauss += gk15_wg[std::size_t(j)] * (fv[std::size_t(2 * j + 1)] + fv[std::size_t(13 - 2 * j)]);
    gauss += gk15_wg[3] * fv[7];
    return Panel{a, b, h * kron, std::abs(h * (kron - gauss))};
}

}  // namespace detail

// Deterministic adaptive quadrature: round-based refinement over an ordered
// panel list.  Panel selection depends only on computed values, and the final
// sum is taken in position order, so the result is identical for every thread
// count.
template <class F>
IntegralEstimate adaptive_integrate(F&& f, double a, double b, const QuadratureOptions& opt,
                                    std::vector<double> breaks = {}) {
    if (!(a < b)) throw domain_error("adaptive_integrate: need a < b");
    const std::int64_t budget = opt.max_nodes > 0 ? opt.max_nodes : config().node_budget;

    if (breaks.empty()) breaks = {a, b};
    breaks.front() = a;
    breaks.back() = b;

    std::vector<detail::Panel> panels;
    panels.reserve(breaks.size() - 1);
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
        panels.push_back({breaks[i], breaks[i + 1], Complex{}, 0.0});

    std::int64_t nodes = 0;
    auto evaluate = [&](std::vector<detail::Panel>& list) {
        nodes += std::int64_t(list.size()) * 15;
        if (nodes > budget)
            throw budget_error("adaptive_integrate: node budget exhausted (" +
                               std::to_string(budget) + " nodes)");
        parallel_for(
            list.size(),
            [&](std::size_t i) { list[i] = detail::gk15_panel(f, list[i].a, list[i].b); },
            opt.threads);
    };
    evaluate(panels);

    const double min_width = 1e-13 * (b - a);
    for (;;) {
        KahanSumComplex total;
        KahanSum err_sum;
        for (const auto& p : panels) {
            total.add(p.value);
            err_sum.add(p.err);
        }
        const double target =
            std::max(opt.abs_tol, opt.rel_tol * std::abs(total.value()));
        if (err_sum.value() <= target) {
            return {total.value(), err_sum.value(), nodes, int(panels.size())};
        }

        // Split every panel holding more than its share of the error budget.
        const double share = target / (2.0 * double(panels.size()));
        std::vector<detail::Panel> next;
        std::vector<detail::Panel> fresh;
        next.reserve(panels.size() * 2);
        bool split_any = false;
        for (const auto& p : panels) {
            if (p.err > share && (p.b - p.a) > min_width) {
                const double mid = 0.5 * (p.a + p.b);
                next.push_back({p.a, mid, Complex{}, -1.0});
                next.push_back({mid, p.b, Complex{}, -1.0});
                split_any = true;
            } else {
                next.push_back(p);
            }
        }
        if (!split_any) {
            // Panels can shrink no further; report what we have.
            return {total.value(), err_sum.value(), nodes, int(panels.size())};
        }
        fresh.clear();
        for (auto& p : next)
            if (p.err < 0.0) fresh.push_back(p);
        parallel_for(
            fresh.size(), [&](std::size_t i) { fresh[i] = detail::gk15_panel(f, fresh[i].a, fresh[i].b); },
            opt.threads);
        nodes += std::int64_t(fresh.size()) * 15;
        std::size_t k = 0;
        for (auto& p : next)
            if (p.err < 0.0) p = fresh[k++];
        panels.swap(next);
    }
}

// Real-valued convenience wrapper.
template <class F>
IntegralEstimate adaptive_integrate_real(F&& f, double a, double b, const QuadratureOptions& opt,
                                         std::vector<double> breaks = {}) {
    return adaptive_integrate([&](double t) { return Complex(f(t), 0.0); }, a, b, opt,
                              std::move(breaks));
}

inline std::vector<double> uniform_breaks(double a, double b, double width) {
    const int n = std::max(1, int(std::ceil((b - a) / width)));
    std::vector<double> breaks(std::size_t(n) + 1);
    for (int i = 0; i <= n; ++i) breaks[std::size_t(i)] = a + (b - a) * double(i) / double(n);
    return breaks;
}

// Geometric grading from a toward b (ratio < 1 packs points near a).
inline std::vector<double> geometric_breaks(double a, double b, double ratio) {
    std::vector<double> breaks{b};
    double x = b;
    while (x * ratio > a) {
        x *= ratio;
        breaks.push_back(x);
    }
    breaks.push_back(a);
    std::reverse(breaks.begin(), breaks.end());
    return breaks;
}

}  // namespace zml

#endif  // ZML_QUADRATURE_HPP
