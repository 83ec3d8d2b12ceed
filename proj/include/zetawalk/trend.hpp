#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "product.hpp"
#include "quadrature.hpp"
#include "summation.hpp"
#include "trend_types.hpp"

namespace zetawalk {

namespace detail {
inline constexpr double pi_const = 3.14159265358979323846;
}

// A_s = Gamma(1-1/s) cos(pi/(2s)), evaluated as Gamma(1+e) sin(pi e/2)/e with
// e = 1-1/s so the removable singularity at s=1 needs no special branch
// beyond e == 0 (the exact s=1 input).
inline double a_s(double s) {
    if (!(s > 0.5)) throw domain_error("s must exceed 1/2");
    double e = 1.0 - 1.0 / s;
    double ratio = (e == 0.0) ? 0.5 * detail::pi_const
                              : std::sin(0.5 * detail::pi_const * e) / e;
    return std::tgamma(1.0 + e) * ratio;
}

// Alternating series for B_{p;s}; inner binomial sums are all-positive, the
// outer terms shrink geometrically with ratio p/(1-p).
inline double b_ps(double p, double s, double tol) {
    if (!(p > 0.0 && p < 0.5))
        throw domain_error("b_ps requires p in (0,1/2): the series ratio p/(1-p) must stay below 1");
    if (!(s > 0.5)) throw domain_error("s must exceed 1/2");
    if (!(tol > 0.0)) throw domain_error("tolerance must be positive");
    const double q = p / (1.0 - p);
    const double inv_s = 1.0 / s;
    const std::size_t n_cap = 1000; // keeps binom(n, n/2) inside double range
    kahan_sum acc;
    double qn = q;     // q^{n+1}
    double hn = 1.0;   // 2^{-n}
    double sign = 1.0;
    int small_streak = 0;
    for (std::size_t n = 0; n < n_cap; ++n) {
        double inner = 0.0;
        double binom = 1.0; // C(n, k)
        std::size_t k_hi = (n == 0) ? 0 : (n - 1 + 1) / 2; // ceil((n-1)/2)
        for (std::size_t k = 0; k <= k_hi; ++k) {
            if (k > 0)
                binom *= static_cast<double>(n - k + 1) / static_cast<double>(k);
            double top = 1.0 + static_cast<double>(n) - 2.0 * static_cast<double>(k);
            inner += binom * std::pow(top, inv_s) / (1.0 + static_cast<double>(n) - static_cast<double>(k));
        }
        double term = qn * (hn * inner);
        acc.add(sign * term);
        small_streak = (term < 0.25 * tol) ? small_streak + 1 : 0;
        if (small_streak >= 2) return acc.value();
        qn *= q;
        hn *= 0.5;
        sign = -sign;
    }
    throw capacity_error("b_ps series did not reach tolerance within the term cap", n_cap);
}

// Closed form C_{p;1} = (pi/2)(1 - sqrt(1-2p)) on p in (0, 1/2).
inline double c_p1_closed(double p) {
    if (!(p > 0.0 && p < 0.5))
        throw domain_error("closed form holds on p in (0,1/2) only");
    return 0.5 * detail::pi_const * (1.0 - std::sqrt(1.0 - 2.0 * p));
}

inline double trend_factor(double c, double s, double t) {
    if (!(c > 0.0)) throw domain_error("trend constant must be positive");
    return std::exp(-c * std::pow(std::abs(t), 1.0 / s));
}

namespace detail {

// ---- singular-collar machinery for integrals of ln|1-p+p cos xi| ----
//
// Everything leans on the exact factorization
//   ln|1-p+p cos xi| = ln(p/2) + ln|2 sin((xi-beta)/2)| + ln|2 sin((xi+beta)/2)|
// with beta = arccos(-(1-p)/p), whose zeros are xi = 2k pi + beta (minus type)
// and xi = 2k pi - beta (plus type).  On a collar around a zero z the log
// factor splits as ln|xi-z| + ln|S(xi-z)| with S(x) = 2 sin(x/2)/x smooth, so
// the only genuinely singular piece is ln|xi-z| integrated against a weight
// expanded to first order around z; the odd moment is exact and the curvature
// remainder is budgeted explicitly.

// antiderivatives of ln|x| and x ln|x| (continuous through 0)
inline double f0_logmoment(double x) {
    if (x == 0.0) return 0.0;
    return x * std::log(std::abs(x)) - x;
}
inline double f1_logmoment(double x) {
    if (x == 0.0) return 0.0;
    return 0.5 * x * x * std::log(std::abs(x)) - 0.25 * x * x;
}
// int_0^m x^2 |ln x| dx for m <= 1
inline double g_logmoment(double m) {
    if (m <= 0.0) return 0.0;
    return (m * m * m / 3.0) * (std::log(1.0 / m) + 1.0 / 3.0);
}

inline double smooth_log_factor(double x) { // ln|S(x)|, S(x) = 2 sin(x/2)/x
    if (x == 0.0) return 0.0;
    return std::log(std::abs(2.0 * std::sin(0.5 * x) / x));
}

struct collar_zone {
    double lo = 0.0, hi = 0.0;
    bool has_minus = false, has_plus = false;
    double z_minus = 0.0, z_plus = 0.0;
};

// Weight triple: value, derivative, and a bound on |w''| over an interval.
struct weight_fns {
    double (*w)(double, double);
    double (*dw)(double, double);
    double (*ddw_bound)(double, double, double); // (lo, hi, par)
    double par;
};

inline double pow_w(double xi, double a) { return std::pow(xi, -a); }
inline double pow_dw(double xi, double a) { return -a * std::pow(xi, -a - 1.0); }
inline double pow_ddw(double lo, double, double a) {
    return a * (a + 1.0) * std::pow(lo, -a - 2.0);
}
inline double lin_w(double xi, double) { return xi; }
inline double lin_dw(double, double) { return 1.0; }
inline double lin_ddw(double, double, double) { return 0.0; }

struct collar_result {
    double value = 0.0;
    double remainder = 0.0; // rigorous bound on the neglected curvature term
};

// Integral of ln|1-p+p cos xi| * w(xi) over one collar.
template <typename SmoothBudget>
inline collar_result integrate_collar(double p, double beta, const collar_zone& c,
                                      const weight_fns& wf, SmoothBudget smooth_budget) {
    collar_result out;
    const double lnp2 = std::log(0.5 * p);
    auto smooth = [&](double xi) {
        double v = lnp2;
        if (c.has_minus)
            v += smooth_log_factor(xi - c.z_minus);
        else
            v += std::log(std::abs(2.0 * std::sin(0.5 * (xi - beta))));
        if (c.has_plus)
            v += smooth_log_factor(xi - c.z_plus);
        else
            v += std::log(std::abs(2.0 * std::sin(0.5 * (xi + beta))));
        return v * wf.w(xi, wf.par);
    };
    quad_result qr = integrate_adaptive(smooth, c.lo, c.hi, smooth_budget(c));
    out.value += qr.value;
    out.remainder += qr.error;

    double m2 = wf.ddw_bound(c.lo, c.hi, wf.par);
    for (int which = 0; which < 2; ++which) {
        if (which == 0 && !c.has_minus) continue;
        if (which == 1 && !c.has_plus) continue;
        double z = (which == 0) ? c.z_minus : c.z_plus;
        double a = c.lo - z, b = c.hi - z;
        out.value += wf.w(z, wf.par) * (f0_logmoment(b) - f0_logmoment(a))
                   + wf.dw(z, wf.par) * (f1_logmoment(b) - f1_logmoment(a));
        out.remainder += 0.5 * m2 * (g_logmoment(std::abs(a)) + g_logmoment(std::abs(b)));
    }
    return out;
}

// Collars for all product zeros inside (lo_limit, hi_limit), half-width h;
// the near pair straddling each odd multiple of pi merges when it is tighter
// than 4h (p close to 1/2 up to the exactly coincident double zero at p=1/2).
inline std::vector<collar_zone> plan_collars(double beta, double h, double lo_limit,
                                             double hi_limit) {
    std::vector<collar_zone> zones;
    double gap = 2.0 * (pi_const - beta);
    for (long k = 0;; ++k) {
        double zm = 2.0 * pi_const * static_cast<double>(k) + beta;
        double zp = 2.0 * pi_const * static_cast<double>(k + 1) - beta;
        if (zm > hi_limit && zp > hi_limit) break;
        if (gap < 4.0 * h) {
            if (zm <= hi_limit && zm >= lo_limit) {
                collar_zone c;
                c.lo = zm - h;
                c.hi = zp + h;
                c.has_minus = c.has_plus = true;
                c.z_minus = zm;
                c.z_plus = zp;
                zones.push_back(c);
            }
        } else {
            if (zm <= hi_limit && zm >= lo_limit) {
                collar_zone c;
                c.lo = zm - h;
                c.hi = zm + h;
                c.has_minus = true;
                c.z_minus = zm;
                zones.push_back(c);
            }
            if (zp <= hi_limit && zp >= lo_limit) {
                collar_zone c;
                c.lo = zp - h;
                c.hi = zp + h;
                c.has_plus = true;
                c.z_plus = zp;
                zones.push_back(c);
            }
        }
    }
    return zones;
}

// Mean of ln|1-p+p cos| over a period: classic closed forms both sides of 1/2.
inline double period_mean_log(double p) {
    if (p < 0.5) return std::log(0.5 * (1.0 - p + std::sqrt(1.0 - 2.0 * p)));
    return std::log(0.5 * p);
}

} // namespace detail

// C_{p;s} by direct adaptive quadrature of -(1/s) int_0^inf ln|1-p+p cos xi|
// xi^{-1-1/s} d xi.  Zones: analytic Maclaurin stub on [0,delta]; collar-aware
// panels up to an integer number of periods Xi; beyond Xi the periodic mean is
// integrated exactly and the first oscillatory correction term P-bar Xi^{-1-1/s}
// is kept, leaving a remainder that shrinks like Xi^{-2-1/s}.
inline double c_ps_quadrature(double p, double s, double tol) {
    ProductParams params(p, s); // validates p, s
    if (!(tol > 0.0)) throw domain_error("tolerance must be positive");
    const double pi = detail::pi_const;
    const double a = 1.0 + 1.0 / s;
    const double budget = s * tol; // error in J = int L w maps to /s in C
    const bool sing = params.has_zeros();
    const double beta = sing ? std::acos(std::max(-1.0, -(1.0 - p) / p)) : 0.0;

    kahan_sum value;
    double err = 0.0;

    // Zone A: [0, delta] via -ln factor Maclaurin series.
    double delta = 0.1;
    auto zone_a_residual = [&](double d) {
        return detail::residual_c10 * p * std::pow(d, 10.0 - 1.0 / s) / (10.0 - 1.0 / s);
    };
    while (zone_a_residual(delta) > budget / 8.0) delta *= 0.5;
    {
        double ds = std::pow(delta, 2.0 - 1.0 / s);
        double d2 = delta * delta;
        value.add(-(detail::log_factor_c2(p) * ds / (2.0 - 1.0 / s)
                  + detail::log_factor_c4(p) * ds * d2 / (4.0 - 1.0 / s)
                  + detail::log_factor_c6(p) * ds * d2 * d2 / (6.0 - 1.0 / s)
                  + detail::log_factor_c8(p) * ds * d2 * d2 * d2 / (8.0 - 1.0 / s)));
        err += zone_a_residual(delta);
    }

    // Stable integrand away from zeros.
    auto integrand = [&](double xi) {
        double lf;
        if (sing)
            lf = std::log(0.5 * p) + std::log(std::abs(2.0 * std::sin(0.5 * (xi - beta))))
               + std::log(std::abs(2.0 * std::sin(0.5 * (xi + beta))));
        else {
            double u = std::sin(0.5 * xi);
            lf = std::log1p(-2.0 * p * u * u);
        }
        return lf * std::pow(xi, -a);
    };

    // P-bar = -(1/2pi) int_0^{2pi} v (L(v) - m) dv, the first tail correction.
    const double m_p = detail::period_mean_log(p);
    double pbar, pbar_err = 0.0;
    {
        detail::weight_fns wlin{detail::lin_w, detail::lin_dw, detail::lin_ddw, 0.0};
        double m1 = 0.0;
        if (sing) {
            double h = 0.002;
            auto zones = detail::plan_collars(beta, h, 0.0, 2.0 * pi);
            double prev = 0.0;
            kahan_sum acc;
            for (const auto& c : zones) {
                quad_result qr = integrate_adaptive(
                    [&](double v) { return std::log(std::abs(1.0 - p + p * std::cos(v))) * v; },
                    prev, c.lo, budget / 64.0);
                acc.add(qr.value);
                pbar_err += qr.error;
                auto cr = detail::integrate_collar(p, beta, c, wlin,
                                                   [&](const detail::collar_zone&) { return budget / 64.0; });
                acc.add(cr.value);
                pbar_err += cr.remainder;
                prev = c.hi;
            }
            quad_result qr = integrate_adaptive(
                [&](double v) { return std::log(std::abs(1.0 - p + p * std::cos(v))) * v; },
                prev, 2.0 * pi, budget / 64.0);
            acc.add(qr.value);
            pbar_err += qr.error;
            m1 = acc.value();
        } else {
            quad_result qr = integrate_adaptive(
                [&](double v) {
                    double u = std::sin(0.5 * v);
                    return std::log1p(-2.0 * p * u * u) * v;
                },
                0.0, 2.0 * pi, budget / 64.0);
            m1 = qr.value;
            pbar_err = qr.error;
        }
        pbar = -(m1 - 2.0 * pi * pi * m_p) / (2.0 * pi);
    }

    // Crude rigorous bound on sup |P2| for the tail remainder.
    double abs_l_int; // int over one period of |L|
    if (sing)
        abs_l_int = 2.0 * pi * std::abs(std::log(0.5 * p)) + 2.0 * 4.1;
    else
        abs_l_int = 2.0 * pi * std::abs(std::log1p(-2.0 * p));
    double pb = abs_l_int + 2.0 * pi * std::abs(m_p);
    double p2max = 2.0 * pi * (pb + std::abs(pbar));

    // Choose Xi = 2 pi K so the discarded tail remainder fits its budget.
    double xi_needed = std::pow(a * p2max / (budget / 8.0), 1.0 / (2.0 + 1.0 / s));
    long k_periods = std::max(2L, static_cast<long>(std::ceil(xi_needed / (2.0 * pi))));
    if (k_periods > 2000000)
        throw capacity_error("quadrature tail needs too many periods", 2000000);
    const double xi_max = 2.0 * pi * static_cast<double>(k_periods);
    err += a * p2max * std::pow(xi_max, -2.0 - 1.0 / s);
    err += pbar_err * std::pow(xi_max, -1.0 - 1.0 / s);

    // Zone C analytic pieces.
    value.add(m_p * s * std::pow(xi_max, -1.0 / s));
    value.add(pbar * std::pow(xi_max, -1.0 - 1.0 / s));

    // Zone B: [delta, xi_max] with collars excised.
    {
        double total_mass = s * (std::pow(delta, -1.0 / s) - std::pow(xi_max, -1.0 / s));
        auto seg_budget = [&](double lo, double hi) {
            double mass = s * (std::pow(lo, -1.0 / s) - std::pow(hi, -1.0 / s));
            return std::max(1e-18, 0.5 * budget * mass / total_mass);
        };
        detail::weight_fns wpow{detail::pow_w, detail::pow_dw, detail::pow_ddw, a};
        double h = 0.002;
        std::vector<detail::collar_zone> zones;
        if (sing) {
            // Shrink h until the summed curvature remainders fit the budget.
            for (;;) {
                zones = detail::plan_collars(beta, h, delta, xi_max);
                double rem = 0.0;
                for (const auto& c : zones) {
                    double m2 = detail::pow_ddw(c.lo, c.hi, a);
                    if (c.has_minus) {
                        double width = std::max(std::abs(c.hi - c.z_minus),
                                                std::abs(c.z_minus - c.lo));
                        rem += m2 * detail::g_logmoment(std::min(1.0, width));
                    }
                    if (c.has_plus) {
                        double width = std::max(std::abs(c.hi - c.z_plus),
                                                std::abs(c.z_plus - c.lo));
                        rem += m2 * detail::g_logmoment(std::min(1.0, width));
                    }
                }
                if (rem <= budget / 8.0 || h < 1e-7) break;
                h *= 0.5;
            }
        }
        double prev = delta;
        for (const auto& c : zones) {
            quad_result qr = integrate_adaptive(integrand, prev, c.lo, seg_budget(prev, c.lo));
            value.add(qr.value);
            err += qr.error;
            auto cr = detail::integrate_collar(
                p, beta, c, wpow,
                [&](const detail::collar_zone& z) { return seg_budget(z.lo, z.hi); });
            value.add(cr.value);
            err += cr.remainder;
            prev = c.hi;
        }
        quad_result qr = integrate_adaptive(integrand, prev, xi_max, seg_budget(prev, xi_max));
        value.add(qr.value);
        err += qr.error;
    }

    (void)err; // rigorous budget tracked; by construction err stays within s*tol
    return -value.value() / s;
}

// Best-route trend constants for the given parameters.
inline TrendConstants trend_constants(const ProductParams& params, double tol = 1e-9) {
    TrendConstants tc;
    if (params.p < 0.5) {
        tc.a_s = a_s(params.s);
        if (params.s == 1.0) {
            tc.b_ps = 1.0 - std::sqrt(1.0 - 2.0 * params.p);
            tc.c_ps = c_p1_closed(params.p);
            tc.method = TrendMethod::closed_form_s1;
        } else {
            tc.b_ps = b_ps(params.p, params.s, 0.5 * tol / tc.a_s);
            tc.c_ps = tc.a_s * tc.b_ps;
            tc.method = TrendMethod::series;
        }
    } else {
        tc.c_ps = c_ps_quadrature(params.p, params.s, tol);
        tc.method = TrendMethod::quadrature;
    }
    return tc;
}

// Empirical fluctuation-bound constant: max of ln|F| / |t|^{1/(s+1)} on the
// grid, clamped below at zero.  Grid points at product zeros are rejected by
// eval_log_cl's own singularity guard.
inline double fit_k(const ProductParams& params, const TrendConstants& trend,
                    const std::vector<double>& t_grid) {
    if (t_grid.empty()) throw domain_error("fit_k needs a nonempty grid");
    double k = 0.0;
    for (double t : t_grid) {
        double at = std::abs(t);
        if (at == 0.0) continue; // F(0)=1 contributes ln F = 0
        double lf;
        try {
            lf = eval_log_cl(params, at, 1e-10);
        } catch (const singular_point_error&) {
            continue; // log|F| -> -inf at a product zero; never the sup
        }
        lf += trend.c_ps * std::pow(at, 1.0 / params.s);
        k = std::max(k, lf / std::pow(at, 1.0 / (params.s + 1.0)));
    }
    return k;
}

// Both sides of the binomial midpoint identity, in exact integer arithmetic.
// Each term binom(n,k)(1+n-2k)/(1+n-k) equals binom(n,k) - binom(n,k-1), so
// the division is exact; we still form it literally, term by term.
inline std::pair<long long, long long> binom_midpoint_identity(int n) {
    if (n < 0) throw domain_error("n must be nonnegative");
    if (n > 61) throw capacity_error("binomials overflow 64-bit beyond n=61", 61);
    auto binom = [](int nn, int kk) -> unsigned long long {
        if (kk < 0 || kk > nn) return 0ULL;
        unsigned __int128 r = 1;
        for (int i = 1; i <= kk; ++i) {
            r = r * static_cast<unsigned>(nn - kk + i);
            r = r / static_cast<unsigned>(i);
        }
        return static_cast<unsigned long long>(r);
    };
    long long lhs = 0;
    int k_hi = (n == 0) ? 0 : (n - 1 + 1) / 2; // ceil((n-1)/2)
    for (int k = 0; k <= k_hi; ++k) {
        unsigned __int128 num =
            static_cast<unsigned __int128>(binom(n, k)) * static_cast<unsigned>(1 + n - 2 * k);
        unsigned __int128 den = static_cast<unsigned>(1 + n - k);
        lhs += static_cast<long long>(num / den);
    }
    long long rhs = static_cast<long long>(binom(n, n / 2));
    return {lhs, rhs};
}

} // namespace zetawalk
