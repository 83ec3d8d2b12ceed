#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "zetawalk/coefficients.hpp"
#include "zetawalk/errors.hpp"
#include "zetawalk/montecarlo.hpp"
#include "zetawalk/summation.hpp"

namespace zetawalk {

// Typicality statistics of a coefficient sequence at full length:
// mean_coeff = S_N/N, nonzero_freq = #{r != 0}/N, partial_sum_at_s =
// sum r(n)/n^s, growth_curve = scaled partial sums at log-spaced N.
struct TypicalityReport {
    double mean_coeff = 0.0;
    double nonzero_freq = 0.0;
    double partial_sum_at_s = 0.0;
    std::vector<std::pair<std::uint64_t, double>> growth_curve;
    double p_ref = 0.0;
    double ref_gap = 0.0;
};

namespace detail {

inline constexpr std::uint64_t sieve_cap = 100000000;

enum class SieveKind { mobius, liouville };

// Linear sieve: each composite is struck once by its smallest prime factor,
// and values propagate multiplicatively.
inline CoefficientSequence run_sieve(std::uint64_t n, SieveKind kind) {
    if (n < 1) throw domain_error("sieve: n must be at least 1");
    if (n > sieve_cap) throw capacity_error("sieve: n exceeds cap", sieve_cap);
    const std::size_t sz = static_cast<std::size_t>(n) + 1;
    std::vector<std::int8_t> val(sz, 0);
    std::vector<bool> composite(sz, false);
    std::vector<std::uint32_t> primes;
    val[1] = 1;
    for (std::size_t i = 2; i < sz; ++i) {
        if (!composite[i]) {
            primes.push_back(static_cast<std::uint32_t>(i));
            val[i] = -1;
        }
        for (std::uint32_t pr : primes) {
            const std::uint64_t m = static_cast<std::uint64_t>(pr) * i;
            if (m > n) break;
            composite[static_cast<std::size_t>(m)] = true;
            if (i % pr == 0) {
                val[static_cast<std::size_t>(m)] =
                    kind == SieveKind::mobius ? std::int8_t{0}
                                              : static_cast<std::int8_t>(-val[i]);
                break;
            }
            val[static_cast<std::size_t>(m)] = static_cast<std::int8_t>(-val[i]);
        }
    }
    CoefficientSequence out;
    out.values.assign(val.begin() + 1, val.end());
    out.origin = kind == SieveKind::mobius ? CoeffOrigin::mobius : CoeffOrigin::liouville;
    return out;
}

} // namespace detail

// values[k] = mu(k+1): -1^(number of prime factors) on squarefree integers,
// 0 otherwise.
inline CoefficientSequence mobius_sieve(std::uint64_t n) {
    return detail::run_sieve(n, detail::SieveKind::mobius);
}

// values[k] = lambda(k+1) = (-1)^Omega(k+1), prime factors counted with
// multiplicity; never zero.
inline CoefficientSequence liouville_sieve(std::uint64_t n) {
    return detail::run_sieve(n, detail::SieveKind::liouville);
}

// Partial sum of zeta(s) over k <= n, smallest terms first.  Tail is bounded
// by n^{1-s}/(s-1).
inline double zeta_partial(double s, std::uint64_t n) {
    if (!(s > 1.0)) throw domain_error("zeta_partial: s must exceed 1");
    kahan_sum sum;
    for (std::uint64_t k = n; k >= 1; --k) sum.add(std::pow(static_cast<double>(k), -s));
    return sum.value();
}

inline TypicalityReport typicality_report(const CoefficientSequence& coeffs, double s,
                                          double p_ref, double growth_eps = 0.05) {
    if (coeffs.values.empty()) throw domain_error("typicality_report: empty sequence");
    long long sum = 0;
    std::uint64_t nonzero = 0;
    kahan_sum weighted;
    for (std::size_t k = 0; k < coeffs.values.size(); ++k) {
        const int r = coeffs.values[k];
        sum += r;
        if (r != 0) ++nonzero;
        if (r != 0)
            weighted.add(static_cast<double>(r) * std::pow(static_cast<double>(k + 1), -s));
    }
    TypicalityReport out;
    const double n = static_cast<double>(coeffs.values.size());
    out.mean_coeff = static_cast<double>(sum) / n;
    out.nonzero_freq = static_cast<double>(nonzero) / n;
    out.partial_sum_at_s = weighted.value();
    out.growth_curve = denjoy_statistic(coeffs, growth_eps);
    out.p_ref = p_ref;
    out.ref_gap = out.nonzero_freq - p_ref;
    return out;
}

} // namespace zetawalk
