#pragma once

#include <cmath>
#include <utility>

#include "zetawalk/errors.hpp"
#include "zetawalk/quadrature.hpp"

namespace zetawalk {

namespace detail {

inline constexpr double fresnel_series_edge = 2.5;
inline constexpr double fresnel_asymptotic_edge = 4.5;

// Maclaurin sums in long double; at u = 2.5 the largest term is ~2e3, so
// extended precision keeps the alternating-series cancellation below 1e-15.
inline std::pair<double, double> fresnel_series(double u) {
    const long double ul = u;
    const long double half_pi_u2 = 1.57079632679489661923L * ul * ul;
    const long double ratio2 = half_pi_u2 * half_pi_u2;
    // C: term_k = (pi/2)^{2k} u^{4k+1} / (2k)!, summed with /(4k+1).
    long double term = ul;
    long double c = 0.0L;
    long double sign = 1.0L;
    for (int k = 0;; ++k) {
        const long double add = sign * term / (4 * k + 1);
        c += add;
        term *= ratio2 / ((2.0L * k + 1) * (2.0L * k + 2));
        sign = -sign;
        if (term / (4 * k + 5) < 1e-24L * (1.0L + (c < 0 ? -c : c)) || k > 80) break;
    }
    // S: term_k = (pi/2)^{2k+1} u^{4k+3} / (2k+1)!, summed with /(4k+3).
    term = half_pi_u2 * ul;
    long double s = 0.0L;
    sign = 1.0L;
    for (int k = 0;; ++k) {
        const long double add = sign * term / (4 * k + 3);
        s += add;
        term *= ratio2 / ((2.0L * k + 2) * (2.0L * k + 3));
        sign = -sign;
        if (term / (4 * k + 7) < 1e-24L * (1.0L + (s < 0 ? -s : s)) || k > 80) break;
    }
    return {static_cast<double>(c), static_cast<double>(s)};
}

// Auxiliary asymptotic sums: with x = pi u^2,
//   f(u) = (1/(pi u)) sum_m (-1)^m (4m-1)!!/x^{2m}
//   g(u) = (1/(pi u)) sum_m (-1)^m (4m+1)!!/x^{2m+1}
// truncated at the smallest term; beyond u = 4.5 that floor is below 1e-14.
inline std::pair<long double, long double> fresnel_aux(double u) {
    const long double ul = u;
    const long double x = 3.14159265358979323846L * ul * ul;
    const long double inv_x2 = 1.0L / (x * x);
    long double f = 0.0L, g = 0.0L;
    long double cf = 1.0L, cg = 1.0L / x;
    long double sign = 1.0L;
    for (int m = 0; m < 64; ++m) {
        f += sign * cf;
        g += sign * cg;
        const long double nf = cf * (4.0L * m + 1) * (4.0L * m + 3) * inv_x2;
        const long double ng = cg * (4.0L * m + 3) * (4.0L * m + 5) * inv_x2;
        if (nf >= cf || ng >= cg) break;
        cf = nf;
        cg = ng;
        sign = -sign;
        if (cf < 1e-26L && cg < 1e-26L) break;
    }
    const long double scale = 1.0L / (3.14159265358979323846L * ul);
    return {f * scale, g * scale};
}

inline std::pair<double, double> fresnel_asymptotic(double u) {
    const auto [f, g] = fresnel_aux(u);
    const long double ul = u;
    const long double theta = 1.57079632679489661923L * ul * ul;
    const long double st = sinl(theta);
    const long double ct = cosl(theta);
    return {static_cast<double>(0.5L + f * st - g * ct),
            static_cast<double>(0.5L - f * ct - g * st)};
}

} // namespace detail

// Fresnel integrals C(u) = int_0^u cos(pi x^2/2) dx, S(u) likewise with sin.
// Series for u <= 2.5, asymptotic auxiliary expansion for u >= 4.5, and a
// quadrature bridge anchored at 2.5 in between; absolute error < 1e-12.
inline std::pair<double, double> fresnel(double u) {
    if (!(u >= 0.0)) throw domain_error("fresnel: u must be nonnegative");
    if (u <= detail::fresnel_series_edge) return detail::fresnel_series(u);
    if (u >= detail::fresnel_asymptotic_edge) return detail::fresnel_asymptotic(u);
    static const std::pair<double, double> anchor =
        detail::fresnel_series(detail::fresnel_series_edge);
    const auto cosint = integrate_adaptive(
        [](double x) { return std::cos(1.5707963267948966 * x * x); },
        detail::fresnel_series_edge, u, 5e-14);
    const auto sinint = integrate_adaptive(
        [](double x) { return std::sin(1.5707963267948966 * x * x); },
        detail::fresnel_series_edge, u, 5e-14);
    return {anchor.first + cosint.value, anchor.second + sinint.value};
}

} // namespace zetawalk
