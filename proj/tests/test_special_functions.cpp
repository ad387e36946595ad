#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "zml/common.hpp"
#include "zml/special_functions.hpp"

using zml::Complex;

TEST_CASE("gamma at classical points") {
    CHECK(std::abs(zml::gamma_complex({1.0, 0.0}) - Complex(1.0, 0.0)) < 1e-14);
    CHECK(std::abs(zml::gamma_complex({0.5, 0.0}) - Complex(std::sqrt(zml::pi), 0.0)) < 1e-13);
    CHECK(std::abs(zml::gamma_complex({5.0, 0.0}) - Complex(24.0, 0.0)) < 24.0 * 1e-13);
}

TEST_CASE("gamma matches the limit-definition oracle") {
    const Complex s(-0.3, 5.0);
    const Complex lib = zml::gamma_complex(s);
    const Complex ref = oracles::gamma_limit_oracle(s);
    CHECK(std::abs(lib - ref) / std::abs(ref) < 1e-10);

    const Complex s2(2.7, -14.0);
    CHECK(std::abs(zml::gamma_complex(s2) - oracles::gamma_limit_oracle(s2)) /
              std::abs(oracles::gamma_limit_oracle(s2)) <
          1e-10);
}

TEST_CASE("gamma pole errors at nonpositive integers") {
    CHECK_THROWS_AS(zml::gamma_complex({0.0, 0.0}), zml::pole_error);
    CHECK_THROWS_AS(zml::gamma_complex({-3.0, 0.0}), zml::pole_error);
    CHECK_THROWS_AS(zml::gamma_complex({-1.0 + 5e-15, 0.0}), zml::pole_error);
    CHECK_NOTHROW(zml::gamma_complex({-1.5, 0.0}));
}

TEST_CASE("gamma recurrence over the strip") {
    zml::SplitMix64 rng(20240901);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Complex s(rng.uniform(-2.0, 8.0), rng.uniform(-100.0, 100.0));
        if (s.real() <= 0.5 && std::abs(s.imag()) < 0.3) continue;
        const Complex lhs = zml::gamma_complex(s + 1.0);
        const Complex rhs = s * zml::gamma_complex(s);
        worst = std::max(worst, std::abs(lhs - rhs) / std::abs(lhs));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("gamma reflection formula") {
    zml::SplitMix64 rng(77);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Complex s(rng.uniform(-2.0, 3.0), rng.uniform(-40.0, 40.0));
        if (std::abs(s.imag()) < 0.2 && std::abs(s.real() - std::round(s.real())) < 0.1) continue;
        const Complex ref = zml::pi / std::sin(zml::pi * s);
        const Complex lhs = zml::gamma_complex(s) * zml::gamma_complex(1.0 - s);
        worst = std::max(worst, std::abs(lhs - ref) / std::abs(ref));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("zeta at classical points") {
    CHECK(std::abs(zml::zeta_complex({2.0, 0.0}) - Complex(zml::pi * zml::pi / 6.0, 0.0)) < 1e-12);
    CHECK(std::abs(zml::zeta_complex({0.0, 0.0}) - Complex(-0.5, 0.0)) < 1e-12);
    // frozen from the accelerated eta-series oracle
    CHECK(std::abs(zml::zeta_complex({0.5, 0.0}) - Complex(-1.4603545088095868, 0.0)) < 1e-10);
}

TEST_CASE("zeta agrees with the eta-series oracle off the real axis") {
    for (const Complex s : {Complex(0.5, 14.0), Complex(1.5, -3.0), Complex(0.25, 32.5)}) {
        const Complex lib = zml::zeta_complex(s);
        const Complex ref = oracles::zeta_eta_oracle(s);
        CHECK(std::abs(lib - ref) <= 1e-10 * (1.0 + std::abs(ref)));
    }
}

TEST_CASE("zeta holds its accuracy at the top of the contract strip") {
    // frozen from an independent multiprecision evaluation (30 digits)
    struct Point {
        Complex s, expected;
    };
    const Point pts[] = {
        {{0.5, 10000.0}, {-0.33937380263883446, -0.037091505973206031}},
        {{0.5, 9999.5}, {1.3969480586180371, -3.4856084940897479}},
        {{2.0, 10000.0}, {0.92231553990021107, -0.25836255532538142}},
        {{-0.5, 5000.0}, {-282.46020571637544, -505.06729099596665}},
        {{3.0, 1000.0}, {0.96616475103459262, -0.077949065695269886}},
    };
    for (const auto& [s, expected] : pts) {
        const Complex v = zml::zeta_complex(s);
        CHECK(std::abs(v - expected) <= 1e-10 * std::abs(expected));
    }
}

TEST_CASE("log gamma holds its accuracy across the contract strip") {
    // frozen multiprecision values; imaginary parts compared modulo 2 pi
    // (the branch is unspecified, only exp and Re are consumed)
    struct Point {
        Complex s, expected;
    };
    const Point pts[] = {
        {{-4.5, 437.0}, {-715.91883024932301, 2212.048316462485}},
        {{10.0, 10000.0}, {-15619.546094456988, 82118.321776533721}},
        {{0.5, 10000.0}, {-15707.044329415762, 82103.403723928494}},
        {{-5.0, 800.0}, {-1292.4835303730387, 4539.0311483167795}},
    };
    for (const auto& [s, expected] : pts) {
        const Complex lg = zml::lgamma_complex(s);
        CHECK(lg.real() == Catch::Approx(expected.real()).epsilon(1e-13));
        const double dphi =
            std::remainder(lg.imag() - expected.imag(), zml::two_pi);
        CHECK(std::abs(dphi) < 1e-9);
    }
}

TEST_CASE("zeta pole error near s = 1") {
    CHECK_THROWS_AS(zml::zeta_complex({1.0, 0.0}), zml::pole_error);
    CHECK_THROWS_AS(zml::zeta_complex({1.0 + 5e-15, 0.0}), zml::pole_error);
    CHECK_NOTHROW(zml::zeta_complex({1.0 + 1e-8, 0.0}));
}

TEST_CASE("zeta functional equation residual") {
    zml::SplitMix64 rng(424242);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Complex s(rng.uniform(0.02, 0.98),
                        (rng.next_double() < 0.5 ? -1.0 : 1.0) * rng.uniform(1.0, 500.0));
        const Complex lhs = zml::zeta_complex(s);
        const Complex rhs = zml::chi_factor(s) * zml::zeta_complex(1.0 - s);
        worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("zeta conjugation symmetry") {
    zml::SplitMix64 rng(5150);
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
        const Complex s(rng.uniform(-1.0, 3.0), rng.uniform(0.5, 300.0));
        const Complex lhs = zml::zeta_complex(std::conj(s));
        const Complex rhs = std::conj(zml::zeta_complex(s));
        worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("chi factor values and unitarity on the critical line") {
    CHECK(std::abs(zml::chi_factor({0.5, 0.0}) - Complex(1.0, 0.0)) < 1e-12);
    CHECK(std::abs(std::abs(zml::chi_factor({0.5, 10.0})) - 1.0) < 1e-10);
    CHECK(std::abs(std::abs(zml::chi_factor({0.5, 321.5})) - 1.0) < 1e-10);
}

TEST_CASE("chi matches its large-t asymptotic form") {
    // chi(s) ~ (2 pi / t)^{sigma + it - 1/2} e^{i(t + pi/4)} for t -> +inf
    const Complex s(-0.25, 30.0);
    const double t = s.imag();
    const Complex asym = std::exp((s - 0.5) * std::log(zml::two_pi / t)) *
                         std::polar(1.0, t + zml::pi / 4.0);
    const Complex lib = zml::chi_factor(s);
    CHECK(std::abs(lib - asym) / std::abs(asym) < 0.05);
}

TEST_CASE("chi(s) chi(1-s) = 1") {
    zml::SplitMix64 rng(999);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Complex s(rng.uniform(0.02, 0.98),
                        (rng.next_double() < 0.5 ? -1.0 : 1.0) * rng.uniform(1.0, 500.0));
        worst = std::max(worst, std::abs(zml::chi_factor(s) * zml::chi_factor(1.0 - s) - 1.0));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("chi division-by-zero at odd integers") {
    CHECK_THROWS_AS(zml::chi_factor({3.0, 0.0}), zml::pole_error);
    CHECK_THROWS_AS(zml::chi_factor({-1.0, 0.0}), zml::pole_error);
}

TEST_CASE("gamma envelope brackets |Gamma| in the strip") {
    const double e50 = zml::gamma_envelope(0.5, 50.0);
    CHECK(std::abs(zml::gamma_complex({0.5, 50.0})) / e50 == Catch::Approx(1.0).margin(0.01));

    const double e10 = zml::gamma_envelope(2.0, 10.0);
    const double ratio = std::abs(zml::gamma_complex({2.0, 10.0})) / e10;
    CHECK(ratio > 0.9);
    CHECK(ratio < 1.1);

    zml::SplitMix64 rng(31337);
    for (int i = 0; i < 200; ++i) {
        const double sigma = rng.uniform(-1.0, 3.0);
        const double t = rng.uniform(10.0, 300.0);
        const double r = std::abs(zml::gamma_complex({sigma, t})) / zml::gamma_envelope(sigma, t);
        CHECK(r > 0.5);
        CHECK(r < 2.0);
    }
}

TEST_CASE("gamma envelope log-slope is -pi/2 in t") {
    // e^{-pi t / 2} forces the log-envelope to drop by pi/2 per unit t
    const double t = 1e4;
    const double slope =
        zml::log_gamma_envelope(0.5, t + 1.0) - zml::log_gamma_envelope(0.5, t);
    CHECK(slope == Catch::Approx(-zml::half_pi).margin(1e-4));
}

TEST_CASE("gamma envelope domain error below the strip threshold") {
    CHECK_THROWS_AS(zml::gamma_envelope(0.5, 5.0), zml::domain_error);
    zml::StripBound strip{-1.0, 3.0, 2.0};
    CHECK_NOTHROW(zml::gamma_envelope(0.5, 5.0, strip));
    CHECK_THROWS_AS(zml::gamma_envelope(8.0, 5.0, strip), zml::domain_error);
}
