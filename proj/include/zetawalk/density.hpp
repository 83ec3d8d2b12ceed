#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "zetawalk/errors.hpp"
#include "zetawalk/fresnel.hpp"
#include "zetawalk/product.hpp"
#include "zetawalk/quadrature.hpp"
#include "zetawalk/summation.hpp"
#include "zetawalk/threads.hpp"
#include "zetawalk/trend.hpp"

namespace zetawalk {

struct DensityMeta {
    double p = 0.0;
    double s = 0.0;
    double tol = 0.0;
    double t_max = 0.0;
    std::size_t n_nodes = 0;
    double trend_constant = 0.0;
    std::uint64_t clamp_count = 0;
    double min_raw_value = 0.0;
};

// Sampled density curve: values are clamped at zero (negative quadrature
// noise is recorded in meta), mass is the trapezoid integral over the grid.
struct DensityCurve {
    std::vector<double> grid;
    std::vector<double> values;
    double mass = 0.0;
    bool symmetric_grid = false;
    DensityMeta meta;
};

namespace detail {

inline constexpr std::size_t density_node_cap = 50000000;

inline bool grid_is_symmetric(const std::vector<double>& grid) {
    const std::size_t n = grid.size();
    for (std::size_t i = 0; i < n / 2 + 1; ++i)
        if (grid[i] + grid[n - 1 - i] != 0.0) return false;
    return true;
}

inline double trapezoid_mass(const std::vector<double>& grid, const std::vector<double>& v) {
    kahan_sum m;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        m.add(0.5 * (v[i] + v[i + 1]) * (grid[i + 1] - grid[i]));
    return m.value();
}

// Gauss-Kronrod nodes and weights for the panel [a, b].
inline void append_panel_nodes(double a, double b, std::vector<double>& t,
                               std::vector<double>& w) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (std::size_t i = 0; i < 7; ++i) {
        t.push_back(mid - half * gk15_abscissae[i]);
        w.push_back(half * gk15_weights[i]);
    }
    t.push_back(mid);
    w.push_back(half * gk15_weights[7]);
    for (std::size_t i = 7; i-- > 0;) {
        t.push_back(mid + half * gk15_abscissae[i]);
        w.push_back(half * gk15_weights[i]);
    }
}

} // namespace detail

inline DensityCurve curve_from_values(std::vector<double> grid, std::vector<double> values) {
    if (grid.size() != values.size()) throw domain_error("curve_from_values: size mismatch");
    DensityCurve out;
    out.grid = std::move(grid);
    out.values = std::move(values);
    out.mass = detail::trapezoid_mass(out.grid, out.values);
    out.symmetric_grid = detail::grid_is_symmetric(out.grid);
    return out;
}

// Recovers f(omega) = (1/pi) int_0^T cos(omega t) Cl(t) dt on the given grid.
// T starts where the decay envelope exp(-C T^{1/s}) clears tol/10 and is
// extended block by block until the measured integral of |Cl| stays below
// tol/20 for three consecutive blocks.  Panel node spacing resolves the
// fastest oscillation (the n=1 factor plus the largest |omega| requested).
inline DensityCurve pdf_from_cf(const ProductParams& params, const std::vector<double>& grid,
                                double tol) {
    if (grid.empty()) throw domain_error("pdf_from_cf: empty grid");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i] < grid[i + 1])) throw domain_error("pdf_from_cf: grid must be increasing");
    if (!(tol > 0.0) || tol > 0.1) throw domain_error("pdf_from_cf: tol must lie in (0, 0.1]");

    TrendConstants trend;
    try {
        trend = trend_constants(params, 1e-9);
    } catch (const std::exception& e) {
        throw dependency_error(std::string("pdf_from_cf: trend constant unavailable: ") +
                               e.what());
    }
    const double c_ps = trend.c_ps;

    const double omega_max = std::max(std::fabs(grid.front()), std::fabs(grid.back()));
    // Highest frequency present: e^{i omega t} against the walk's own
    // spectrum.  The first 1000 factors contribute at most sum n^{-s}; the
    // rest enter through the tail's subgaussian law, covered by eight
    // standard deviations (p <= 1 bounds the tail variance).
    double band_head = 0.0;
    for (int n = 1000; n >= 1; --n) band_head += std::pow(static_cast<double>(n), -params.s);
    const double walk_band = band_head +
                             (params.s > 1.0 ? detail::zeta_tail(params.s, 1000.0) : 0.0) +
                             8.0 * std::sqrt(detail::zeta_tail(2.0 * params.s, 1000.0));
    const double freq = omega_max + walk_band;
    const double panel_width = 15.0 * 2.0 * detail::pi_const / (16.0 * freq);

    const double t0 = std::pow(std::log(10.0 / tol) / c_ps, params.s);
    const double block = std::max(2.0 * detail::pi_const, t0 / 4.0);
    const double t_cap = std::max(1e4, 400.0 * t0);
    const double scan_tol = std::min(1e-6, 0.05 * tol);

    // Block extension: integrate |Cl| over [T, T+block] until three quiet
    // blocks in a row.
    double t_max = t0;
    int quiet = 0;
    while (quiet < 3) {
        if (t_max > t_cap)
            throw capacity_error("pdf_from_cf: tolerance unreachable within truncation cap",
                                 static_cast<std::uint64_t>(t_cap));
        const int panels = std::max(1, static_cast<int>(std::ceil(block / panel_width)));
        const double h = block / panels;
        double abs_int = 0.0;
        for (int k = 0; k < panels; ++k) {
            std::vector<double> tn, wn;
            detail::append_panel_nodes(t_max + k * h, t_max + (k + 1) * h, tn, wn);
            for (std::size_t i = 0; i < tn.size(); ++i)
                abs_int += wn[i] * std::fabs(eval_cl(params, tn[i], scan_tol));
        }
        quiet = abs_int < tol / 20.0 ? quiet + 1 : 0;
        t_max += block;
    }
    // Per-node Cl accuracy: (1/pi) * t_max * cl_tol stays below tol/4.
    const double cl_tol = std::min(1e-6, 0.25 * detail::pi_const * tol / t_max);

    // Cache w_i * Cl(t_i) at all panel nodes once.
    const auto n_panels = static_cast<std::size_t>(std::ceil(t_max / panel_width));
    if (n_panels * 15 > detail::density_node_cap)
        throw capacity_error("pdf_from_cf: node count exceeds cap", detail::density_node_cap);
    const double h = t_max / static_cast<double>(n_panels);
    std::vector<double> node_t, node_w;
    node_t.reserve(n_panels * 15);
    node_w.reserve(n_panels * 15);
    for (std::size_t k = 0; k < n_panels; ++k)
        detail::append_panel_nodes(static_cast<double>(k) * h,
                                   static_cast<double>(k + 1) * h, node_t, node_w);
    std::vector<double> node_wcl(node_t.size());
    parallel_for(node_t.size(), [&](std::size_t i) {
        node_wcl[i] = node_w[i] * eval_cl(params, node_t[i], cl_tol);
    });

    DensityCurve out;
    out.grid = grid;
    out.values.assign(grid.size(), 0.0);
    parallel_for(grid.size(), [&](std::size_t gi) {
        const double omega = grid[gi];
        kahan_sum acc;
        for (std::size_t i = 0; i < node_t.size(); ++i)
            acc.add(node_wcl[i] * std::cos(omega * node_t[i]));
        out.values[gi] = acc.value() / detail::pi_const;
    });

    out.meta.p = params.p;
    out.meta.s = params.s;
    out.meta.tol = tol;
    out.meta.t_max = t_max;
    out.meta.n_nodes = node_t.size();
    out.meta.trend_constant = c_ps;
    double min_raw = 0.0;
    std::uint64_t clamped = 0;
    for (double& v : out.values) {
        if (v < 0.0) {
            min_raw = std::min(min_raw, v);
            v = 0.0;
            ++clamped;
        }
    }
    out.meta.clamp_count = clamped;
    out.meta.min_raw_value = min_raw;
    out.mass = detail::trapezoid_mass(out.grid, out.values);
    out.symmetric_grid = detail::grid_is_symmetric(out.grid);
    return out;
}

// Evaluates the half-line stable trend density in its Fresnel form,
//   f(omega) = (2 pi u^3 / c^2) [sin(theta)(1/2 - S(u)) + cos(theta)(1/2 - C(u))]
// with u = c/sqrt(2 pi |omega|), theta = pi u^2/2.  For large u the bracket
// equals the auxiliary g(u) exactly, which avoids catastrophic cancellation.
inline double levy_half_pdf(double c, double omega) {
    if (!(c > 0.0)) throw domain_error("levy_half_pdf: c must be positive");
    if (omega == 0.0)
        throw singular_point_error("levy_half_pdf: omega = 0 is a singular parameterization",
                                   0.0);
    if (!std::isfinite(omega)) throw domain_error("levy_half_pdf: omega must be finite");
    const double u = c / std::sqrt(2.0 * detail::pi_const * std::fabs(omega));
    if (u >= detail::fresnel_asymptotic_edge) {
        // 2 pi u^3 g(u) = (2/pi) sum_m (-1)^m (4m+1)!!/(pi u^2)^{2m}, which
        // stays finite as u grows (limit 2/(pi c^2) at omega -> 0).
        const long double x = detail::pi_const * static_cast<long double>(u) * u;
        const long double inv_x2 = 1.0L / (x * x);
        long double sum = 0.0L, term = 1.0L, sign = 1.0L;
        for (int m = 0; m < 64; ++m) {
            sum += sign * term;
            const long double next = term * (4.0L * m + 3) * (4.0L * m + 5) * inv_x2;
            if (next >= term || next < 1e-26L) break;
            term = next;
            sign = -sign;
        }
        return static_cast<double>(2.0L * sum / (detail::pi_const * c * c));
    }
    const auto [cf, sf] = fresnel(u);
    const double theta = 0.5 * detail::pi_const * u * u;
    const double bracket = std::sin(theta) * (0.5 - sf) + std::cos(theta) * (0.5 - cf);
    return 2.0 * detail::pi_const * u * u * u * bracket / (c * c);
}

inline double cauchy_pdf(double c, double omega) {
    if (!(c > 0.0)) throw domain_error("cauchy_pdf: c must be positive");
    return c / (detail::pi_const * (c * c + omega * omega));
}

// Pointwise sup distance and trapezoid L1 distance between curves sampled on
// the same grid.
inline std::pair<double, double> compare_curves(const DensityCurve& a, const DensityCurve& b) {
    if (a.grid.size() != b.grid.size())
        throw domain_error("compare_curves: grids differ in size");
    for (std::size_t i = 0; i < a.grid.size(); ++i)
        if (a.grid[i] != b.grid[i]) throw domain_error("compare_curves: grids differ");
    double sup = 0.0;
    std::vector<double> diff(a.grid.size());
    for (std::size_t i = 0; i < a.grid.size(); ++i) {
        diff[i] = std::fabs(a.values[i] - b.values[i]);
        sup = std::max(sup, diff[i]);
    }
    return {sup, detail::trapezoid_mass(a.grid, diff)};
}

} // namespace zetawalk
