#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "zetawalk/trend.hpp"

using zetawalk::ProductParams;

namespace {

constexpr double pi = 3.14159265358979323846;

// Independent evaluation of the B series with explicit lgamma binomials in
// long double; no incremental recurrences shared with the implementation.
double b_series_oracle(double p, double s) {
    const long double q = static_cast<long double>(p) / (1.0L - p);
    long double acc = 0.0L;
    for (int n = 0; n < 400; ++n) {
        long double inner = 0.0L;
        for (int k = 0; k <= n / 2; ++k) {
            const long double binom = expl(lgammal(n + 1.0L) - lgammal(k + 1.0L) -
                                           lgammal(n - k + 1.0L));
            inner += binom * powl(1.0L + n - 2.0L * k, 1.0L / s) / (1.0L + n - k);
        }
        const long double term =
            powl(q, n + 1.0L) * powl(0.5L, static_cast<long double>(n)) * inner;
        acc += (n % 2 == 0) ? term : -term;
        if (n > 10 && term < 1e-17L) break;
    }
    return static_cast<double>(acc);
}

} // namespace

TEST_CASE("b_ps matches an independent long double series") {
    for (double p : {0.1, 0.3, 0.45}) {
        for (double s : {0.75, 1.0, 2.0, 3.0}) {
            const double got = zetawalk::b_ps(p, s, 1e-12);
            const double oracle = b_series_oracle(p, s);
            REQUIRE(std::fabs(got - oracle) < 1e-11);
        }
    }
}

TEST_CASE("b_ps at s=1 hits the closed form 1 - sqrt(1-2p)") {
    for (int i = 1; i <= 9; ++i) {
        const double p = 0.05 * i;
        const double closed = 1.0 - std::sqrt(1.0 - 2.0 * p);
        REQUIRE(std::fabs(zetawalk::b_ps(p, 1.0, 1e-12) - closed) < 1e-10);
    }
}

TEST_CASE("a_s special values") {
    REQUIRE(zetawalk::a_s(1.0) == Catch::Approx(0.5 * pi).epsilon(1e-15));
    REQUIRE(zetawalk::a_s(2.0) == Catch::Approx(std::sqrt(0.5 * pi)).epsilon(1e-14));
    // s = 3/4: e = -1/3, Gamma(2/3) sin(-pi/6)/(-1/3) = 1.5 Gamma(2/3)
    REQUIRE(zetawalk::a_s(0.75) ==
            Catch::Approx(1.5 * std::tgamma(2.0 / 3.0)).epsilon(1e-14));
    REQUIRE_THROWS_AS(zetawalk::a_s(0.5), zetawalk::domain_error);
}

TEST_CASE("quadrature route agrees with the series route") {
    struct Case {
        double p, s;
    };
    for (Case c : {Case{1.0 / 3.0, 2.0}, Case{0.3, 1.0}, Case{0.25, 0.75}, Case{0.4, 3.0}}) {
        const double series = zetawalk::a_s(c.s) * zetawalk::b_ps(c.p, c.s, 1e-11);
        const double quad = zetawalk::c_ps_quadrature(c.p, c.s, 1e-9);
        REQUIRE(std::fabs(quad - series) < 1e-6 * series);
    }
}

TEST_CASE("closed form at s=1 agrees with quadrature") {
    for (double p : {0.1, 0.3, 0.45}) {
        const double closed = zetawalk::c_p1_closed(p);
        const double quad = zetawalk::c_ps_quadrature(p, 1.0, 1e-9);
        REQUIRE(std::fabs(quad - closed) < 1e-6 * closed);
    }
}

TEST_CASE("harmonic full-coin constant is pi/2") {
    // All cosines, s=1: the constant is pi/2; p=1/2 shares it by Remark 2.
    REQUIRE(zetawalk::c_ps_quadrature(1.0, 1.0, 1e-9) ==
            Catch::Approx(0.5 * pi).epsilon(1e-7));
    REQUIRE(zetawalk::c_ps_quadrature(0.5, 1.0, 1e-9) ==
            Catch::Approx(0.5 * pi).epsilon(1e-7));
}

TEST_CASE("halving identity links p=1 and p=1/2 constants") {
    for (double s : {0.75, 1.0, 2.0, 3.0}) {
        const double c_full = zetawalk::c_ps_quadrature(1.0, s, 1e-9);
        const double c_half = zetawalk::c_ps_quadrature(0.5, s, 1e-9);
        const double predicted = std::pow(2.0, -1.0 + 1.0 / s) * c_half;
        REQUIRE(std::fabs(c_full - predicted) < 1e-6 * c_full);
    }
}

TEST_CASE("reference constant for p=1/3, s=2") {
    const double expected = 0.319905585 * std::sqrt(pi);
    const double series = zetawalk::a_s(2.0) * zetawalk::b_ps(1.0 / 3.0, 2.0, 1e-11);
    const double quad = zetawalk::c_ps_quadrature(1.0 / 3.0, 2.0, 1e-9);
    REQUIRE(std::fabs(series - expected) < 1e-6 * expected);
    REQUIRE(std::fabs(quad - expected) < 1e-6 * expected);
}

TEST_CASE("trend_constants picks the right method per region") {
    using zetawalk::TrendMethod;
    const auto closed = zetawalk::trend_constants(ProductParams(0.3, 1.0), 1e-9);
    REQUIRE(closed.method == TrendMethod::closed_form_s1);
    REQUIRE(closed.c_ps == Catch::Approx(zetawalk::c_p1_closed(0.3)).epsilon(1e-12));

    const auto series = zetawalk::trend_constants(ProductParams(0.3, 2.0), 1e-9);
    REQUIRE(series.method == TrendMethod::series);
    REQUIRE(series.c_ps > 0.0);
    REQUIRE(series.c_ps == Catch::Approx(series.a_s * series.b_ps).epsilon(1e-12));

    for (double p : {0.5, 0.75, 1.0}) {
        const auto quad = zetawalk::trend_constants(ProductParams(p, 2.0), 1e-9);
        REQUIRE(quad.method == TrendMethod::quadrature);
        REQUIRE(quad.c_ps > 0.0);
    }
}

TEST_CASE("trend constant increases with p") {
    double prev = 0.0;
    for (int i = 1; i <= 9; ++i) {
        const double c = zetawalk::trend_constants(ProductParams(0.05 * i, 1.0), 1e-9).c_ps;
        REQUIRE(c > prev);
        prev = c;
    }
    REQUIRE(zetawalk::c_ps_quadrature(0.6, 1.0, 1e-9) > prev);
}

TEST_CASE("trend_factor basics") {
    REQUIRE(zetawalk::trend_factor(2.0, 2.0, 0.0) == 1.0);
    REQUIRE(zetawalk::trend_factor(2.0, 2.0, 1.0) == Catch::Approx(std::exp(-2.0)));
    REQUIRE(zetawalk::trend_factor(0.5, 1.0, 4.0) < zetawalk::trend_factor(0.5, 1.0, 3.0));
    REQUIRE_THROWS_AS(zetawalk::trend_factor(0.0, 1.0, 1.0), zetawalk::domain_error);
}

TEST_CASE("fit_k skips product zeros and stays finite") {
    const ProductParams params(1.0, 1.0);
    const auto trend = zetawalk::trend_constants(params, 1e-9);
    std::vector<double> grid;
    for (int i = 0; i <= 40; ++i) grid.push_back(0.25 * i); // includes pi/2 within 1e-2
    grid.push_back(0.5 * pi);                               // exact zero
    const double k = zetawalk::fit_k(params, trend, grid);
    REQUIRE(std::isfinite(k));
    REQUIRE_THROWS_AS(zetawalk::fit_k(params, trend, {}), zetawalk::domain_error);
}

TEST_CASE("fitted envelope dominates the fluctuation factor on its grid") {
    const ProductParams params(1.0 / 3.0, 2.0);
    const auto trend = zetawalk::trend_constants(params, 1e-9);
    std::vector<double> grid;
    for (int i = 0; i <= 50; ++i) grid.push_back(10.0 * std::pow(1.1, i));
    const double k = zetawalk::fit_k(params, trend, grid);
    REQUIRE(std::isfinite(k));
    for (double t : grid) {
        const double lf = zetawalk::eval_log_cl(params, t, 1e-10) +
                          trend.c_ps * std::sqrt(t);
        REQUIRE(lf <= k * std::pow(t, 1.0 / 3.0) + 1e-12);
    }
}

TEST_CASE("binomial midpoint identity holds exactly") {
    for (int n = 0; n <= 30; ++n) {
        const auto [lhs, rhs] = zetawalk::binom_midpoint_identity(n);
        REQUIRE(lhs == rhs);
    }
    const auto [lhs61, rhs61] = zetawalk::binom_midpoint_identity(61);
    REQUIRE(lhs61 == rhs61);
    REQUIRE_THROWS_AS(zetawalk::binom_midpoint_identity(62), zetawalk::capacity_error);
    REQUIRE_THROWS_AS(zetawalk::binom_midpoint_identity(-1), zetawalk::domain_error);
}

TEST_CASE("series and quadrature input validation") {
    REQUIRE_THROWS_AS(zetawalk::b_ps(0.5, 2.0, 1e-9), zetawalk::domain_error);
    REQUIRE_THROWS_AS(zetawalk::b_ps(0.3, 2.0, 0.0), zetawalk::domain_error);
    REQUIRE_THROWS_AS(zetawalk::b_ps(0.3, 0.4, 1e-9), zetawalk::domain_error);
    REQUIRE_THROWS_AS(zetawalk::c_p1_closed(0.6), zetawalk::domain_error);
}
