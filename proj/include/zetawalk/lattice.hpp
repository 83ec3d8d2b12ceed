#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "zetawalk/errors.hpp"
#include "zetawalk/product.hpp"
#include "zetawalk/summation.hpp"

namespace zetawalk {

struct lattice_atom {
    double omega = 0.0;
    double prob = 0.0;
};

// Exact law of the N-step walk: atoms sorted by position, probabilities
// summing to 1.  collision_merged records whether any two support points
// landed within merge_eps of each other and were coalesced.
struct LatticeDistribution {
    std::vector<lattice_atom> atoms;
    int n_steps = 0;
    ProductParams params;
    bool collision_merged = false;
};

namespace detail {

// Atom counts grow like 3^N (2^N when p=1); caps keep memory under ~100 MB.
inline constexpr int lattice_cap_three = 14;
inline constexpr int lattice_cap_two = 20;

} // namespace detail

// Convolves the N three-point step measures (p/2, 1-p, p/2) at spacings
// 1/n^s in ascending n order.  Positions closer than merge_eps coalesce.
inline LatticeDistribution convolve_lattice(const ProductParams& params, int n_steps,
                                            double merge_eps = 1e-12) {
    if (n_steps < 0) throw domain_error("convolve_lattice: n_steps must be nonnegative");
    if (!(merge_eps >= 0.0)) throw domain_error("convolve_lattice: merge_eps must be nonnegative");
    const bool two_point = params.p == 1.0;
    const int cap = two_point ? detail::lattice_cap_two : detail::lattice_cap_three;
    if (n_steps > cap)
        throw capacity_error("convolve_lattice: n_steps exceeds atom-count cap",
                             static_cast<std::uint64_t>(cap));

    std::vector<lattice_atom> cur{{0.0, 1.0}};
    bool collided = false;
    const double inf = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= n_steps; ++n) {
        const double step = std::pow(static_cast<double>(n), -params.s);
        const double p_half = 0.5 * params.p;
        const double p_zero = 1.0 - params.p;
        std::vector<lattice_atom> next;
        next.reserve(cur.size() * 3);
        auto push = [&](double pos, double pr) {
            if (!next.empty() && pos - next.back().omega < merge_eps) {
                next.back().prob += pr;
                collided = true;
            } else {
                next.push_back({pos, pr});
            }
        };
        // Three-way merge of the sorted shifted copies keeps next sorted.
        // The zero-shift stream is absent when p = 1.
        std::size_t im = 0, iz = two_point ? cur.size() : 0, ip = 0;
        while (im < cur.size() || iz < cur.size() || ip < cur.size()) {
            const double vm = im < cur.size() ? cur[im].omega - step : inf;
            const double vz = iz < cur.size() ? cur[iz].omega : inf;
            const double vp = ip < cur.size() ? cur[ip].omega + step : inf;
            if (vm <= vz && vm <= vp) {
                push(vm, p_half * cur[im].prob);
                ++im;
            } else if (vz <= vp) {
                push(vz, p_zero * cur[iz].prob);
                ++iz;
            } else {
                push(vp, p_half * cur[ip].prob);
                ++ip;
            }
        }
        cur = std::move(next);
    }
    return LatticeDistribution{std::move(cur), n_steps, params, collided};
}

// Probability of any fixed coefficient pattern with m nonzero entries among
// n_steps.  Multiplication order matches the convolution path, so small-N
// atom weights agree bit for bit.
inline double atom_probability(const ProductParams& params, int n_steps, int m_nonzero) {
    if (n_steps < 0) throw domain_error("atom_probability: n_steps must be nonnegative");
    if (m_nonzero < 0 || m_nonzero > n_steps)
        throw domain_error("atom_probability: m_nonzero must lie in [0, n_steps]");
    const double p_half = 0.5 * params.p;
    const double p_zero = 1.0 - params.p;
    double out = 1.0;
    for (int k = 0; k < m_nonzero; ++k) out *= p_half;
    for (int k = m_nonzero; k < n_steps; ++k) out *= p_zero;
    return out;
}

// Characteristic function sum(prob * exp(i t omega)).  Compensated
// accumulation keeps the imaginary part of symmetric laws below 1e-12
// even at 3^14 atoms.
inline std::complex<double> lattice_char_fn(const LatticeDistribution& dist, double t) {
    if (!std::isfinite(t)) throw domain_error("lattice_char_fn: t must be finite");
    kahan_sum re;
    kahan_sum im;
    for (const auto& a : dist.atoms) {
        const double phase = t * a.omega;
        re.add(a.prob * std::cos(phase));
        im.add(a.prob * std::sin(phase));
    }
    return {re.value(), im.value()};
}

} // namespace zetawalk
