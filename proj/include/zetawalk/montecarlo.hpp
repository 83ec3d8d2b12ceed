#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "zetawalk/coefficients.hpp"
#include "zetawalk/errors.hpp"
#include "zetawalk/product.hpp"
#include "zetawalk/rng.hpp"
#include "zetawalk/threads.hpp"

namespace zetawalk {

// Endpoint sample of n_walks independent N-step walks.  Endpoint w is fully
// determined by (seed, w), independent of thread count.
struct WalkEnsemble {
    std::vector<double> endpoints;
    int n_steps = 0;
    std::uint64_t n_walks = 0;
    ProductParams params;
    std::uint64_t seed = 0;
};

namespace detail {

inline constexpr std::uint64_t walk_cap = 100000000;

inline std::int8_t draw_sign(double u, double p) {
    if (u < 0.5 * p) return -1;
    if (u < p) return 1;
    return 0;
}

// Step weights 1/n^s for n = 1..n_steps.
inline std::vector<double> step_weights(double s, int n_steps) {
    std::vector<double> w(static_cast<std::size_t>(n_steps));
    for (int n = 1; n <= n_steps; ++n)
        w[static_cast<std::size_t>(n - 1)] = std::pow(static_cast<double>(n), -s);
    return w;
}

} // namespace detail

// Draws r(1..n) i.i.d. with P(+1) = P(-1) = p/2, P(0) = 1-p.  Uses the same
// stream construction as run_ensemble, so this equals walk 0 of that seed.
inline CoefficientSequence sample_coefficients(double p, std::size_t n, std::uint64_t seed) {
    if (!(p > 0.0) || p > 1.0) throw domain_error("sample_coefficients: p must lie in (0, 1]");
    CoefficientSequence out;
    out.values.resize(n);
    out.origin = CoeffOrigin::sampled;
    out.p = p;
    out.seed = seed;
    splitmix64 rng = splitmix64::stream(seed, 0);
    for (std::size_t k = 0; k < n; ++k) out.values[k] = detail::draw_sign(rng.uniform(), p);
    return out;
}

// Partial sums S_k = sum_{n<=k} r(n)/n^s, k = 1..length.  Ascending plain
// accumulation: an all-ones sequence reproduces the lattice atom positions
// bit for bit, so |endpoint| <= sum n^{-s} holds exactly.
inline std::vector<double> walk_trajectory(const CoefficientSequence& coeffs, double s) {
    if (!(s > 0.5)) throw domain_error("walk_trajectory: s must exceed 1/2");
    std::vector<double> out(coeffs.values.size());
    double x = 0.0;
    for (std::size_t k = 0; k < coeffs.values.size(); ++k) {
        const double step = std::pow(static_cast<double>(k + 1), -s);
        const int r = coeffs.values[k];
        if (r > 0)
            x += step;
        else if (r < 0)
            x -= step;
        out[k] = x;
    }
    return out;
}

// Simulates n_walks endpoints.  Walk w consumes exactly n_steps uniforms from
// splitmix64::stream(seed, w) in ascending n order; the accumulation order
// matches walk_trajectory and convolve_lattice.
inline WalkEnsemble run_ensemble(const ProductParams& params, int n_steps,
                                 std::uint64_t n_walks, std::uint64_t seed) {
    if (n_steps < 0) throw domain_error("run_ensemble: n_steps must be nonnegative");
    if (n_walks > detail::walk_cap)
        throw capacity_error("run_ensemble: n_walks exceeds cap", detail::walk_cap);
    const std::vector<double> steps = detail::step_weights(params.s, n_steps);
    WalkEnsemble out{std::vector<double>(n_walks), n_steps, n_walks, params, seed};
    const double p = params.p;
    parallel_for(n_walks, [&](std::uint64_t w) {
        splitmix64 rng = splitmix64::stream(seed, w);
        double x = 0.0;
        for (int n = 0; n < n_steps; ++n) {
            const double u = rng.uniform();
            if (u < 0.5 * p)
                x -= steps[static_cast<std::size_t>(n)];
            else if (u < p)
                x += steps[static_cast<std::size_t>(n)];
        }
        out.endpoints[w] = x;
    });
    return out;
}

// Bins endpoints at multiples of bin_width (index = llround(x / bin_width)).
// Returns (center, count) sorted by center; counts sum to n_walks.
inline std::vector<std::pair<double, std::uint64_t>> histogram(const WalkEnsemble& ensemble,
                                                               double bin_width) {
    if (!(bin_width > 0.0)) throw domain_error("histogram: bin_width must be positive");
    std::vector<long long> idx(ensemble.endpoints.size());
    for (std::size_t i = 0; i < ensemble.endpoints.size(); ++i)
        idx[i] = std::llround(ensemble.endpoints[i] / bin_width);
    std::sort(idx.begin(), idx.end());
    std::vector<std::pair<double, std::uint64_t>> out;
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j < idx.size() && idx[j] == idx[i]) ++j;
        out.emplace_back(static_cast<double>(idx[i]) * bin_width,
                         static_cast<std::uint64_t>(j - i));
        i = j;
    }
    return out;
}

// Counts N in [10, length] where |S_N| exceeds (1 -/+ eps) * sqrt(2 N lnln N),
// S_N the plain sign partial sum.  Returns (count_lower, count_upper).
inline std::pair<std::uint64_t, std::uint64_t> lil_statistic(const CoefficientSequence& coeffs,
                                                             double eps) {
    if (coeffs.values.size() < 10)
        throw domain_error("lil_statistic: need at least 10 coefficients");
    if (!(eps > 0.0) || eps >= 1.0) throw domain_error("lil_statistic: eps must lie in (0, 1)");
    std::uint64_t lower = 0, upper = 0;
    long long sum = 0;
    for (std::size_t k = 0; k < coeffs.values.size(); ++k) {
        sum += coeffs.values[k];
        const std::size_t n = k + 1;
        if (n < 10) continue;
        const double nn = static_cast<double>(n);
        const double band = std::sqrt(2.0 * nn * std::log(std::log(nn)));
        const double abs_sum = std::fabs(static_cast<double>(sum));
        if (abs_sum > (1.0 - eps) * band) ++lower;
        if (abs_sum > (1.0 + eps) * band) ++upper;
    }
    return {lower, upper};
}

// Values N^{-1/2-eps} |S_N| at checkpoints N = floor(10^{k/8}), deduplicated,
// up to the sequence length.
inline std::vector<std::pair<std::uint64_t, double>> denjoy_statistic(
    const CoefficientSequence& coeffs, double eps) {
    if (coeffs.values.empty()) throw domain_error("denjoy_statistic: empty sequence");
    if (!(eps > 0.0)) throw domain_error("denjoy_statistic: eps must be positive");
    const std::size_t len = coeffs.values.size();
    std::vector<std::uint64_t> checkpoints;
    for (int k = 0;; ++k) {
        const double nd = std::floor(std::pow(10.0, static_cast<double>(k) / 8.0));
        const auto n = static_cast<std::uint64_t>(nd);
        if (n > len) break;
        if (checkpoints.empty() || checkpoints.back() != n) checkpoints.push_back(n);
    }
    std::vector<std::pair<std::uint64_t, double>> out;
    out.reserve(checkpoints.size());
    long long sum = 0;
    std::size_t next = 0;
    for (std::size_t k = 0; k < len && next < checkpoints.size(); ++k) {
        sum += coeffs.values[k];
        if (k + 1 == checkpoints[next]) {
            const double nn = static_cast<double>(k + 1);
            out.emplace_back(checkpoints[next],
                             std::pow(nn, -0.5 - eps) * std::fabs(static_cast<double>(sum)));
            ++next;
        }
    }
    return out;
}

} // namespace zetawalk
