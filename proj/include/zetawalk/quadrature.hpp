#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"
#include "summation.hpp"

namespace zetawalk {

// Gauss-Kronrod 7-15 pair on [-1,1]; nonnegative abscissae only, the rest by
// symmetry.  Values are the classical QUADPACK constants.
inline constexpr std::array<double, 8> gk15_abscissae = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> gk15_weights = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr std::array<double, 4> gauss7_weights = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct quad_result {
    double value = 0.0;
    double error = 0.0; // |K15 - G7| based estimate
    std::size_t panels = 0;
};

template <typename Fn>
quad_result gk15(Fn&& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(mid - half * gk15_abscissae[static_cast<std::size_t>(i)]);
        fv[14 - i] = f(mid + half * gk15_abscissae[static_cast<std::size_t>(i)]);
    }
    fv[7] = f(mid);
    double k15 = 0.0;
    for (int i = 0; i < 7; ++i)
        k15 += gk15_weights[static_cast<std::size_t>(i)] * (fv[i] + fv[14 - i]);
    k15 += gk15_weights[7] * fv[7];
    double g7 = gauss7_weights[3] * fv[7];
    g7 += gauss7_weights[0] * (fv[1] + fv[13]);
    g7 += gauss7_weights[1] * (fv[3] + fv[11]);
    g7 += gauss7_weights[2] * (fv[5] + fv[9]);
    quad_result r;
    r.value = half * k15;
    r.error = std::abs(half * (k15 - g7));
    r.panels = 1;
    return r;
}

// Globally adaptive bisection: always split the panel with the largest
// |K-G| estimate until the summed estimate fits abs_tol.  A panel narrower
// than 1e-14 relative cannot be refined further and ends the loop; its
// residual error stays in the honest total.  The returned error is the sum
// of panel |K-G| gaps, which overestimates the true Kronrod error for
// smooth pieces.
template <typename Fn>
quad_result integrate_adaptive(Fn&& f, double a, double b, double abs_tol,
                               std::size_t max_panels = 200000) {
    struct segment {
        double a, b, value, error;
    };
    auto smaller_error = [](const segment& x, const segment& y) { return x.error < y.error; };
    quad_result first = gk15(f, a, b);
    std::vector<segment> heap{{a, b, first.value, first.error}};
    std::size_t used = 1;
    double err_sum = first.error;
    while (err_sum > abs_tol) {
        std::pop_heap(heap.begin(), heap.end(), smaller_error);
        segment s = heap.back();
        if ((s.b - s.a) < 1e-14 * (std::abs(s.a) + 1.0)) {
            std::push_heap(heap.begin(), heap.end(), smaller_error);
            break;
        }
        heap.pop_back();
        if (used + 2 > max_panels)
            throw capacity_error("adaptive quadrature exceeded panel cap on [" +
                                     std::to_string(a) + ", " + std::to_string(b) +
                                     "] at abs_tol " + std::to_string(abs_tol),
                                 max_panels);
        const double m = 0.5 * (s.a + s.b);
        quad_result left = gk15(f, s.a, m);
        quad_result right = gk15(f, m, s.b);
        used += 2;
        err_sum += left.error + right.error - s.error;
        heap.push_back({s.a, m, left.value, left.error});
        std::push_heap(heap.begin(), heap.end(), smaller_error);
        heap.push_back({m, s.b, right.value, right.error});
        std::push_heap(heap.begin(), heap.end(), smaller_error);
    }
    kahan_sum total;
    kahan_sum err;
    for (const segment& s : heap) {
        total.add(s.value);
        err.add(s.error);
    }
    return {total.value(), err.value(), used};
}

} // namespace zetawalk
