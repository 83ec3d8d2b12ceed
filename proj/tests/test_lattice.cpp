#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "zetawalk/lattice.hpp"

using zetawalk::ProductParams;
using zetawalk::convolve_lattice;

namespace {

// Finite product over n <= n_steps: the characteristic function of the exact
// N-step law, evaluated directly.
double finite_product(const ProductParams& params, int n_steps, double t) {
    double out = 1.0;
    for (int n = 1; n <= n_steps; ++n)
        out *= 1.0 - params.p + params.p * std::cos(t / std::pow(n, params.s));
    return out;
}

} // namespace

TEST_CASE("zero steps leave the unit mass at the origin") {
    const auto dist = convolve_lattice(ProductParams(0.5, 2.0), 0);
    REQUIRE(dist.atoms.size() == 1);
    REQUIRE(dist.atoms[0].omega == 0.0);
    REQUIRE(dist.atoms[0].prob == 1.0);
    REQUIRE(!dist.collision_merged);
}

TEST_CASE("one step gives the three-point law with exact weights") {
    const double p = 1.0 / 3.0;
    const auto dist = convolve_lattice(ProductParams(p, 2.0), 1);
    REQUIRE(dist.atoms.size() == 3);
    REQUIRE(dist.atoms[0].omega == -1.0);
    REQUIRE(dist.atoms[1].omega == 0.0);
    REQUIRE(dist.atoms[2].omega == 1.0);
    REQUIRE(dist.atoms[0].prob == 0.5 * p);
    REQUIRE(dist.atoms[1].prob == 1.0 - p);
    REQUIRE(dist.atoms[2].prob == 0.5 * p);
}

TEST_CASE("two steps give the nine-atom law with exact weights") {
    const double p = 1.0 / 3.0;
    const auto dist = convolve_lattice(ProductParams(p, 2.0), 2);
    REQUIRE(dist.atoms.size() == 9);
    const double q = 0.25; // 2^{-s} at s=2
    const double expected_omega[9] = {-1.0 - q, -1.0, -1.0 + q, -q, 0.0,
                                      q,        1.0 - q, 1.0,  1.0 + q};
    const double corner = (0.5 * p) * (0.5 * p);
    const double edge = (0.5 * p) * (1.0 - p);
    const double center = (1.0 - p) * (1.0 - p);
    const double expected_prob[9] = {corner, edge, corner, edge, center,
                                     edge,   corner, edge, corner};
    for (int i = 0; i < 9; ++i) {
        REQUIRE(dist.atoms[i].omega == expected_omega[i]);
        REQUIRE(dist.atoms[i].prob == expected_prob[i]);
    }
    REQUIRE(!dist.collision_merged);
}

TEST_CASE("atom probabilities follow the convolution multiplication order") {
    const ProductParams params(1.0 / 3.0, 2.0);
    const auto dist = convolve_lattice(params, 2);
    REQUIRE(dist.atoms[4].prob == zetawalk::atom_probability(params, 2, 0));
    REQUIRE(dist.atoms[0].prob == zetawalk::atom_probability(params, 2, 2));
    REQUIRE(dist.atoms[1].prob == zetawalk::atom_probability(params, 2, 1));
    REQUIRE(zetawalk::atom_probability(params, 0, 0) == 1.0);
    REQUIRE_THROWS_AS(zetawalk::atom_probability(params, 2, 3), zetawalk::domain_error);
    REQUIRE_THROWS_AS(zetawalk::atom_probability(params, 2, -1), zetawalk::domain_error);
}

TEST_CASE("mass, symmetry, and sorting invariants") {
    for (double p : {0.3, 0.5, 1.0}) {
        for (int n : {1, 4, 8}) {
            const auto dist = convolve_lattice(ProductParams(p, 2.0), n);
            double mass = 0.0;
            for (const auto& a : dist.atoms) mass += a.prob;
            REQUIRE(std::fabs(mass - 1.0) < 1e-12);
            for (std::size_t i = 0; i + 1 < dist.atoms.size(); ++i)
                REQUIRE(dist.atoms[i].omega < dist.atoms[i + 1].omega);
            const std::size_t count = dist.atoms.size();
            for (std::size_t i = 0; i < count; ++i) {
                const auto& a = dist.atoms[i];
                const auto& b = dist.atoms[count - 1 - i];
                REQUIRE(std::fabs(a.omega + b.omega) <= 1e-12);
                REQUIRE(std::fabs(a.prob - b.prob) <= 1e-14);
            }
        }
    }
}

TEST_CASE("atom count is 3^N for generic exponents") {
    const auto dist = convolve_lattice(ProductParams(1.0 / 3.0, 2.0001), 8);
    REQUIRE(dist.atoms.size() == 6561);
    REQUIRE(!dist.collision_merged);
}

TEST_CASE("s=2 produces genuine collisions (1/4 = 2/9 + 1/36)") {
    const auto dist = convolve_lattice(ProductParams(1.0 / 3.0, 2.0), 6);
    REQUIRE(dist.collision_merged);
    REQUIRE(dist.atoms.size() < 729);
    double mass = 0.0;
    for (const auto& a : dist.atoms) mass += a.prob;
    REQUIRE(std::fabs(mass - 1.0) < 1e-12);
}

TEST_CASE("two-point law at p=1") {
    const auto dist = convolve_lattice(ProductParams(1.0, 1.0), 3);
    REQUIRE(dist.atoms.size() == 8);
    for (const auto& a : dist.atoms) REQUIRE(a.prob == 0.125);
}

TEST_CASE("step caps raise capacity errors") {
    REQUIRE_THROWS_AS(convolve_lattice(ProductParams(0.5, 2.0), 15), zetawalk::capacity_error);
    REQUIRE_NOTHROW(convolve_lattice(ProductParams(1.0, 2.0), 15));
    REQUIRE_THROWS_AS(convolve_lattice(ProductParams(1.0, 2.0), 21), zetawalk::capacity_error);
    REQUIRE_THROWS_AS(convolve_lattice(ProductParams(0.5, 2.0), -1), zetawalk::domain_error);
}

TEST_CASE("coarse merge_eps coalesces everything and sets the flag") {
    const auto dist = convolve_lattice(ProductParams(0.5, 2.0), 3, 10.0);
    REQUIRE(dist.atoms.size() == 1);
    REQUIRE(dist.collision_merged);
    REQUIRE(std::fabs(dist.atoms[0].prob - 1.0) < 1e-12);
    REQUIRE_THROWS_AS(convolve_lattice(ProductParams(0.5, 2.0), 3, -1.0),
                      zetawalk::domain_error);
}

TEST_CASE("single-step characteristic function is 1-p+p cos t") {
    const double p = 1.0 / 3.0;
    const auto dist = convolve_lattice(ProductParams(p, 2.0), 1);
    for (double t : {0.0, 0.7, 2.0, -3.3}) {
        const auto cf = zetawalk::lattice_char_fn(dist, t);
        REQUIRE(std::fabs(cf.real() - (1.0 - p + p * std::cos(t))) < 1e-15);
        REQUIRE(std::fabs(cf.imag()) < 1e-15);
    }
}

TEST_CASE("characteristic function equals the finite product up to N=10") {
    const ProductParams params(1.0 / 3.0, 2.0);
    const auto dist = convolve_lattice(params, 10);
    for (int i = 0; i <= 100; ++i) {
        const double t = -20.0 + 40.0 * i / 100.0;
        const auto cf = zetawalk::lattice_char_fn(dist, t);
        REQUIRE(std::fabs(cf.real() - finite_product(params, 10, t)) < 1e-12);
        REQUIRE(std::fabs(cf.imag()) < 1e-12);
    }
}

TEST_CASE("merged collisions preserve the characteristic function") {
    const ProductParams params(1.0 / 3.0, 2.0);
    const auto dist = convolve_lattice(params, 6);
    REQUIRE(dist.collision_merged);
    for (double t : {0.5, 4.0, 17.0}) {
        const auto cf = zetawalk::lattice_char_fn(dist, t);
        REQUIRE(std::fabs(cf.real() - finite_product(params, 6, t)) < 1e-12);
    }
}

TEST_CASE("lattice moments match the step-variance sum") {
    const double p = 1.0 / 3.0;
    const double s = 2.0;
    const auto dist = convolve_lattice(ProductParams(p, s), 8);
    double mean = 0.0, var = 0.0, expected_var = 0.0;
    for (const auto& a : dist.atoms) {
        mean += a.prob * a.omega;
        var += a.prob * a.omega * a.omega;
    }
    for (int n = 1; n <= 8; ++n) expected_var += p * std::pow(n, -2.0 * s);
    REQUIRE(std::fabs(mean) < 1e-14);
    REQUIRE(std::fabs(var - expected_var) < 1e-12);
}
