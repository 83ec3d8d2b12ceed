#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>

#include "zetawalk/arithmetic.hpp"
#include "zetawalk/montecarlo.hpp"

using zetawalk::CoefficientSequence;
using zetawalk::ProductParams;

TEST_CASE("sampled coefficients are deterministic in seed and lie in {-1,0,1}") {
    const auto a = zetawalk::sample_coefficients(1.0 / 3.0, 5000, 42);
    const auto b = zetawalk::sample_coefficients(1.0 / 3.0, 5000, 42);
    REQUIRE(a.values == b.values);
    const auto c = zetawalk::sample_coefficients(1.0 / 3.0, 5000, 43);
    REQUIRE(a.values != c.values);
    for (auto v : a.values) REQUIRE((v == -1 || v == 0 || v == 1));
    REQUIRE(a.origin == zetawalk::CoeffOrigin::sampled);
    REQUIRE(a.p == 1.0 / 3.0);
    REQUIRE(a.seed == 42);
}

TEST_CASE("sampled sign frequencies match the three-point law") {
    const double p = 1.0 / 3.0;
    const std::size_t n = 1000000;
    const auto cs = zetawalk::sample_coefficients(p, n, 20260819);
    std::uint64_t nonzero = 0;
    long long sum = 0;
    for (auto v : cs.values) {
        if (v != 0) ++nonzero;
        sum += v;
    }
    const double freq = static_cast<double>(nonzero) / static_cast<double>(n);
    const double mean = static_cast<double>(sum) / static_cast<double>(n);
    // 4-sigma windows for the fixed seed
    REQUIRE(std::fabs(freq - p) < 4.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n)));
    REQUIRE(std::fabs(mean) < 4.0 * std::sqrt(p / static_cast<double>(n)));
}

TEST_CASE("trajectory accumulates signed steps in ascending order") {
    const auto cs = zetawalk::all_ones_sequence(3);
    const auto traj = zetawalk::walk_trajectory(cs, 2.0);
    REQUIRE(traj.size() == 3);
    REQUIRE(traj[0] == 1.0);
    REQUIRE(traj[1] == 1.0 + std::pow(2.0, -2.0));
    REQUIRE(traj[2] == (1.0 + std::pow(2.0, -2.0)) + std::pow(3.0, -2.0));

    CoefficientSequence mixed;
    mixed.values = {1, -1, 0, -1};
    const auto tm = zetawalk::walk_trajectory(mixed, 1.0);
    REQUIRE(tm[1] == 1.0 - 0.5);
    REQUIRE(tm[2] == tm[1]);
    REQUIRE(tm[3] == tm[2] - std::pow(4.0, -1.0));
}

TEST_CASE("mobius walk endpoint approaches the reciprocal zeta value") {
    const auto cs = zetawalk::mobius_sieve(1000000);
    const auto traj = zetawalk::walk_trajectory(cs, 2.0);
    const double pi = 3.14159265358979323846;
    REQUIRE(std::fabs(traj.back() - 6.0 / (pi * pi)) < 2e-6);
}

TEST_CASE("ensemble endpoints are seed-deterministic and slot 0 matches the sampler") {
    const ProductParams params(1.0 / 3.0, 2.0);
    const auto e1 = zetawalk::run_ensemble(params, 50, 200, 7);
    const auto e2 = zetawalk::run_ensemble(params, 50, 200, 7);
    REQUIRE(e1.endpoints == e2.endpoints);
    const auto e3 = zetawalk::run_ensemble(params, 50, 200, 8);
    REQUIRE(e1.endpoints != e3.endpoints);

    const auto cs = zetawalk::sample_coefficients(params.p, 50, 7);
    const auto traj = zetawalk::walk_trajectory(cs, params.s);
    REQUIRE(e1.endpoints[0] == traj.back());
}

TEST_CASE("endpoints never exceed the all-plus partial sum") {
    const ProductParams params(0.5, 1.0);
    const int n_steps = 100;
    double bound = 0.0;
    for (int n = 1; n <= n_steps; ++n) bound += std::pow(static_cast<double>(n), -1.0);
    const auto ens = zetawalk::run_ensemble(params, n_steps, 1000, 99);
    for (double e : ens.endpoints) REQUIRE(std::fabs(e) <= bound + 1e-12);

    const auto ones = zetawalk::all_ones_sequence(n_steps);
    const auto traj = zetawalk::walk_trajectory(ones, 1.0);
    REQUIRE(traj.back() <= bound + 1e-12);
    REQUIRE(traj.back() >= bound - 1e-12);
}

TEST_CASE("histogram counts are conserved and centers are bin multiples") {
    const ProductParams params(1.0, 2.0);
    const auto ens = zetawalk::run_ensemble(params, 1, 1000, 5);
    const auto hist = zetawalk::histogram(ens, 0.5);
    REQUIRE(hist.size() == 2);
    REQUIRE(hist[0].first == -1.0);
    REQUIRE(hist[1].first == 1.0);
    REQUIRE(hist[0].second + hist[1].second == 1000);

    const auto wide = zetawalk::run_ensemble(ProductParams(1.0 / 3.0, 2.0), 12, 5000, 5);
    const auto h2 = zetawalk::histogram(wide, 0.05);
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < h2.size(); ++i) {
        total += h2[i].second;
        if (i > 0) REQUIRE(h2[i - 1].first < h2[i].first);
        REQUIRE(h2[i].second > 0);
    }
    REQUIRE(total == 5000);
    REQUIRE_THROWS_AS(zetawalk::histogram(wide, 0.0), zetawalk::domain_error);
}

TEST_CASE("law-of-iterated-logarithm band counts on an all-ones sequence") {
    const auto ones = zetawalk::all_ones_sequence(100);
    const auto [lower, upper] = zetawalk::lil_statistic(ones, 0.05);
    // S_N = N dominates the sqrt(2 N lnln N) band at every N in [10, 100].
    REQUIRE(lower == 91);
    REQUIRE(upper == 91);
    REQUIRE_THROWS_AS(zetawalk::lil_statistic(ones, 0.0), zetawalk::domain_error);
    REQUIRE_THROWS_AS(zetawalk::lil_statistic(ones, 1.0), zetawalk::domain_error);
    REQUIRE_THROWS_AS(zetawalk::lil_statistic(zetawalk::all_ones_sequence(9), 0.05),
                      zetawalk::domain_error);
}

TEST_CASE("growth checkpoints follow the eighth-decade ladder") {
    const auto ones = zetawalk::all_ones_sequence(1000000);
    const auto curve = zetawalk::denjoy_statistic(ones, 0.05);
    REQUIRE(curve.size() == 47);
    REQUIRE(curve.front().first == 1);
    REQUIRE(curve.back().first == 1000000);
    for (std::size_t i = 1; i < curve.size(); ++i)
        REQUIRE(curve[i - 1].first < curve[i].first);
    // all-ones: value at N is N^{1/2 - eps}
    const double expected = std::pow(1e6, 0.45);
    REQUIRE(std::fabs(curve.back().second - expected) < 1e-9 * expected);

    const auto short_curve = zetawalk::denjoy_statistic(zetawalk::all_ones_sequence(13), 0.25);
    REQUIRE(short_curve.back().first == 13);
    CoefficientSequence empty;
    REQUIRE_THROWS_AS(zetawalk::denjoy_statistic(empty, 0.05), zetawalk::domain_error);
    REQUIRE_THROWS_AS(zetawalk::denjoy_statistic(ones, 0.0), zetawalk::domain_error);
}

TEST_CASE("ensemble and sampler input validation") {
    REQUIRE_THROWS_AS(zetawalk::sample_coefficients(0.0, 10, 1), zetawalk::domain_error);
    REQUIRE_THROWS_AS(zetawalk::sample_coefficients(1.5, 10, 1), zetawalk::domain_error);
    REQUIRE_THROWS_AS(zetawalk::walk_trajectory(zetawalk::all_ones_sequence(4), 0.5),
                      zetawalk::domain_error);
    REQUIRE_THROWS_AS(zetawalk::run_ensemble(ProductParams(0.5, 2.0), -1, 10, 1),
                      zetawalk::domain_error);
    REQUIRE_THROWS_AS(zetawalk::run_ensemble(ProductParams(0.5, 2.0), 1, 100000001, 1),
                      zetawalk::capacity_error);
}
