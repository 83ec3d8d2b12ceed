#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "summation.hpp"
#include "trend_types.hpp"

namespace zetawalk {

struct ProductParams {
    double p;
    double s;

    ProductParams(double p_, double s_) : p(p_), s(s_) {
        if (!(p > 0.0 && p <= 1.0))
            throw domain_error("p must lie in (0, 1]");
        if (!(s > 0.5))
            throw domain_error("s must exceed 1/2");
    }

    // Factors reach zero exactly when cos can hit -(1-p)/p.
    bool has_zeros() const noexcept { return p >= 0.5; }
};

struct TruncationPlan {
    std::uint64_t n_terms;
    double tail_bound; // rigorous absolute bound on the log-tail residual
};

namespace detail {

inline constexpr std::uint64_t factor_cap = 100000000; // 1e8 explicit factors

// Sum_{n>N} n^{-a}: forty explicit terms, then Euler-Maclaurin at N+40.
// The absolute remainder is below a^5 (N+40)^{-a-5}, which keeps every
// log-tail contribution under 1e-14 even at the N=10 truncation floor.
inline double zeta_tail(double a, double n) {
    const double m = n + 40.0;
    kahan_sum sum;
    for (double k = n + 1.0; k <= m; k += 1.0) sum.add(std::pow(k, -a));
    const double ma = std::pow(m, -a);
    sum.add(m * ma / (a - 1.0) - 0.5 * ma + a * ma / (12.0 * m)
          - a * (a + 1.0) * (a + 2.0) * ma / (720.0 * m * m * m));
    return sum.value();
}

// Maclaurin coefficients: -ln(1-p+p cos x) = c2 x^2 + c4 x^4 + c6 x^6 + c8 x^8 + ...
inline double log_factor_c2(double p) { return 0.5 * p; }
inline double log_factor_c4(double p) { return p * (-1.0 / 24.0 + p / 8.0); }
inline double log_factor_c6(double p) {
    return p * (1.0 / 720.0 + p * (-1.0 / 48.0 + p / 24.0));
}
inline double log_factor_c8(double p) {
    return p * (-1.0 / 40320.0 + p * (1.0 / 640.0 + p * (-1.0 / 96.0 + p / 64.0)));
}

// |ln(1-p+p cos x) + c2 x^2 + ... + c8 x^8| <= residual_c10 * p * x^10 on
// |x| <= 0.1; the exact x^10 coefficient is below 0.013 p, so 0.05 covers all
// higher orders too (validated against long-double brute force in the tests).
inline constexpr double residual_c10 = 0.05;

inline double tail_residual_bound(double p, double s, double t, double n) {
    double t2 = t * t;
    double t10 = t2 * t2 * t2 * t2 * t2;
    return residual_c10 * p * t10 * zeta_tail(10.0 * s, n);
}

// Analytic log-tail over factors n > N, valid while t/(N+1)^s < 0.1.
inline double log_tail(double p, double s, double t, double n) {
    double t2 = t * t;
    double t4 = t2 * t2;
    return -(log_factor_c2(p) * t2 * zeta_tail(2.0 * s, n)
           + log_factor_c4(p) * t4 * zeta_tail(4.0 * s, n)
           + log_factor_c6(p) * t4 * t2 * zeta_tail(6.0 * s, n)
           + log_factor_c8(p) * t4 * t4 * zeta_tail(8.0 * s, n));
}

} // namespace detail

inline TruncationPlan plan_truncation(const ProductParams& params, double t, double tol) {
    if (!(tol > 0.0)) throw domain_error("tolerance must be positive");
    if (!std::isfinite(t)) throw domain_error("t must be finite");
    t = std::abs(t);
    std::uint64_t n = 10;
    double want = std::ceil(std::pow(t / 0.1, 1.0 / params.s));
    if (want > static_cast<double>(n)) {
        if (want > static_cast<double>(detail::factor_cap))
            throw capacity_error("truncation plan would need " +
                                     std::to_string(static_cast<std::uint64_t>(want)) +
                                     " factors; cap is 1e8",
                                 detail::factor_cap);
        n = static_cast<std::uint64_t>(want);
    }
    double bound = detail::tail_residual_bound(params.p, params.s, t, static_cast<double>(n));
    while (bound > tol) {
        if (n >= detail::factor_cap)
            throw capacity_error("tolerance unreachable within the 1e8 factor cap",
                                 detail::factor_cap);
        n = std::min<std::uint64_t>(detail::factor_cap, n * 2);
        bound = detail::tail_residual_bound(params.p, params.s, t, static_cast<double>(n));
    }
    return {n, bound};
}

namespace detail {

struct cl_parts {
    double log_abs;  // sum of ln|factor| plus analytic tail
    double sign;     // product of factor signs; 0 if a factor vanished exactly
    double value;    // direct product times exp(tail), safe from log blowup
};

inline cl_parts eval_cl_parts(const ProductParams& params, double t, double tol) {
    t = std::abs(t);
    TruncationPlan plan = plan_truncation(params, t, 0.5 * tol);
    const double p = params.p;
    const double s = params.s;
    kahan_sum logs;
    double sign = 1.0;
    double prod = 1.0;
    for (std::uint64_t n = 1; n <= plan.n_terms; ++n) {
        double x = t / std::pow(static_cast<double>(n), s);
        double u = std::sin(0.5 * x);
        double g = -2.0 * p * u * u; // factor = 1 + g = 1 - p + p cos x
        if (p < 0.5) {
            logs.add(std::log1p(g)); // g > -1 here, factor strictly positive
        } else {
            double f = 1.0 + g;
            prod *= f;
            if (f == 0.0) {
                sign = 0.0;
            } else {
                if (f < 0.0) sign = -sign;
                logs.add(std::log(std::abs(f)));
            }
        }
    }
    double tail = detail::log_tail(p, s, t, static_cast<double>(plan.n_terms));
    double log_abs = logs.value() + tail;
    double value = (p < 0.5) ? std::exp(log_abs) : prod * std::exp(tail);
    return {log_abs, sign, value};
}

// Nearest product zero to t (p >= 1/2); returns {t*, distance}, or distance
// = +inf when no factor can vanish at or below this t scale.
inline std::pair<double, double> nearest_zero(const ProductParams& params, double t) {
    const double pi = 3.14159265358979323846;
    double alpha = std::acos(std::min(1.0, (1.0 - params.p) / params.p));
    double best_t = 0.0;
    double best_d = std::numeric_limits<double>::infinity();
    double first_phase = pi - alpha; // smallest positive zero phase
    for (double n = 1.0;; n += 1.0) {
        double ns = std::pow(n, params.s);
        double xi = t / ns;
        long j0 = std::lround((xi / pi + 1.0) * 0.5);
        for (long j = std::max(1L, j0 - 1); j <= j0 + 1; ++j) {
            double base = (2.0 * static_cast<double>(j) - 1.0) * pi;
            for (double sgn : {-1.0, 1.0}) {
                double tz = ns * (base + sgn * alpha);
                if (tz <= 0.0) continue;
                double d = std::abs(t - tz);
                if (d < best_d) {
                    best_d = d;
                    best_t = tz;
                }
            }
        }
        // Factors beyond this n have all their zeros further out than best_d.
        if (ns * first_phase > t + best_d) break;
    }
    return {best_t, best_d};
}

} // namespace detail

// Signed value of the infinite product.  Strictly positive for p < 1/2.
inline double eval_cl(const ProductParams& params, double t, double tol) {
    detail::cl_parts parts = detail::eval_cl_parts(params, t, tol);
    if (params.p < 0.5) return std::exp(parts.log_abs);
    return parts.value;
}

// ln|Cl|; rejects points within 1e-9 relative of a product zero (p >= 1/2),
// where the log is no longer conditioned.
inline double eval_log_cl(const ProductParams& params, double t, double tol) {
    t = std::abs(t);
    if (params.has_zeros() && t > 0.0) {
        auto [tz, dist] = detail::nearest_zero(params, t);
        if (dist <= 1e-9 * std::max(t, tz))
            throw singular_point_error("t lies within 1e-9 of the product zero at t=" +
                                           std::to_string(tz),
                                       tz);
    }
    return detail::eval_cl_parts(params, t, tol).log_abs;
}

// F = Cl(t) * exp(+C |t|^{1/s}); computed in the log domain so the huge
// decaying trend never underflows before it is cancelled.
inline double fluctuation_factor(const ProductParams& params, double t,
                                 const TrendConstants& trend, double tol) {
    t = std::abs(t);
    if (t == 0.0) return 1.0;
    detail::cl_parts parts = detail::eval_cl_parts(params, t, tol);
    if (parts.sign == 0.0) return 0.0;
    return parts.sign * std::exp(parts.log_abs + trend.c_ps * std::pow(t, 1.0 / params.s));
}

// All zeros in (0, t_max] contributed by factors n <= n_max, ascending and
// deduplicated.  Enumeration uses t = n^s [(2j-1)pi +- arccos((1-p)/p)], the
// sign convention fixed by the factor equation 1 - p + p cos(t/n^s) = 0
// itself (each root is Newton-polished against its factor).
inline std::vector<double> product_zeros(const ProductParams& params, int n_max,
                                         double t_max) {
    if (n_max < 1) throw domain_error("n_max must be at least 1");
    if (!(t_max > 0.0)) throw domain_error("t_max must be positive");
    std::vector<double> zeros;
    if (!params.has_zeros()) return zeros;
    const double pi = 3.14159265358979323846;
    const double p = params.p;
    const double s = params.s;
    double alpha = std::acos(std::min(1.0, (1.0 - p) / p));
    for (int n = 1; n <= n_max; ++n) {
        double ns = std::pow(static_cast<double>(n), s);
        if (ns * (pi - alpha) > t_max) break;
        for (long j = 1;; ++j) {
            double base = (2.0 * static_cast<double>(j) - 1.0) * pi;
            bool any = false;
            for (double sgn : {-1.0, 1.0}) {
                double tz = ns * (base + sgn * alpha);
                if (tz > t_max) continue;
                any = true;
                // One Newton polish unless the zero is (near-)double (p=1/2).
                for (int iter = 0; iter < 3; ++iter) {
                    double x = tz / ns;
                    double f = 1.0 - p + p * std::cos(x);
                    if (std::abs(f) < 1e-13) break;
                    double df = -p * std::sin(x) / ns;
                    if (std::abs(df) < 1e-8) break;
                    tz -= f / df;
                }
                zeros.push_back(tz);
            }
            if (!any) break;
        }
    }
    std::sort(zeros.begin(), zeros.end());
    std::vector<double> out;
    for (double z : zeros)
        if (out.empty() || z - out.back() > 1e-12 * std::max(1.0, z))
            out.push_back(z);
    return out;
}

// Power-scale products: base-b geometric frequency ladders.
enum class PowerKind { euler_sinc, cantor, morrison_p23, morrison_general };

namespace detail {

struct power_shape {
    double base;         // frequency ratio between consecutive factors
    std::vector<int> ms; // cosine multiples in one factor (m >= 0 half)
    double divisor;      // factor = sum_m cos(m y) / divisor, negatives implied
};

inline power_shape make_power_shape(PowerKind kind, int s_general) {
    switch (kind) {
        case PowerKind::euler_sinc:
            return {2.0, {1}, 2.0};
        case PowerKind::cantor:
            return {3.0, {1}, 2.0};
        case PowerKind::morrison_p23:
            return {3.0, {0, 1}, 3.0};
        case PowerKind::morrison_general: {
            if (s_general < 2)
                throw domain_error("morrison_general requires integer s >= 2");
            std::vector<int> ms;
            for (int m = 0; m <= s_general - 1; ++m)
                if ((s_general + m) % 2 == 1) ms.push_back(m);
            return {static_cast<double>(s_general), ms, static_cast<double>(s_general)};
        }
    }
    throw domain_error("unknown power product kind");
}

inline double power_factor(const power_shape& shape, double y) {
    double sum = 0.0;
    for (int m : shape.ms)
        sum += (m == 0) ? 1.0 : 2.0 * std::cos(m * y);
    return sum / shape.divisor;
}

} // namespace detail

inline double eval_power_product(PowerKind kind, double t, double tol, int s_general = 0) {
    if (!(tol > 0.0)) throw domain_error("tolerance must be positive");
    detail::power_shape shape = detail::make_power_shape(kind, s_general);
    t = std::abs(t);

    // Maclaurin data of ln(factor) for the analytic tail.
    double m2 = 0.0, m4 = 0.0, m6 = 0.0;
    for (int m : shape.ms) {
        double mult = (m == 0) ? 1.0 : 2.0;
        double mm = static_cast<double>(m);
        m2 += mult * mm * mm;
        m4 += mult * mm * mm * mm * mm;
        m6 += mult * mm * mm * mm * mm * mm * mm;
    }
    double a = m2 / (2.0 * shape.divisor);
    double beta = m4 / (24.0 * shape.divisor);
    double gamma = m6 / (720.0 * shape.divisor);
    double d1 = -a;
    double d2 = beta - 0.5 * a * a;
    double d3 = -gamma + a * beta - a * a * a / 3.0;
    double res_c = 2.0 * a * a * a * a + 1.0; // covers the y^8 log coefficient

    auto geo_tail = [&](double k, double n_terms) {
        // Sum_{n>N} base^{-k n}
        return std::pow(shape.base, -k * n_terms) / (std::pow(shape.base, k) - 1.0);
    };

    int n_terms = 1;
    if (t > 0.05)
        n_terms = static_cast<int>(std::ceil(std::log(t / 0.05) / std::log(shape.base)));
    n_terms = std::max(n_terms, 1);
    double t2 = t * t;
    double t8 = t2 * t2 * t2 * t2;
    while (res_c * t8 * geo_tail(8.0, n_terms) > 0.5 * tol && n_terms < 2000)
        ++n_terms;

    double prod = 1.0;
    double scale = 1.0;
    for (int n = 1; n <= n_terms; ++n) {
        scale /= shape.base;
        prod *= detail::power_factor(shape, t * scale);
    }
    double tail = d1 * t2 * geo_tail(2.0, n_terms) + d2 * t2 * t2 * geo_tail(4.0, n_terms)
                + d3 * t2 * t2 * t2 * geo_tail(6.0, n_terms);
    return prod * std::exp(tail);
}

} // namespace zetawalk
