#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "zetawalk/arithmetic.hpp"
#include "zetawalk/density.hpp"
#include "zetawalk/errors.hpp"
#include "zetawalk/lattice.hpp"
#include "zetawalk/montecarlo.hpp"
#include "zetawalk/product.hpp"
#include "zetawalk/trend.hpp"
#include "zetawalk/version.hpp"

namespace {

using zetawalk::ProductParams;

// One output column: exactly one of nums/ints/strs is populated.
struct output_column {
    std::string name;
    std::vector<double> nums;
    std::vector<std::uint64_t> ints;
    std::vector<std::string> strs;

    std::size_t size() const {
        return !strs.empty() ? strs.size() : (!ints.empty() ? ints.size() : nums.size());
    }
};

struct output_table {
    std::vector<output_column> cols;
    nlohmann::ordered_json meta;
};

std::string format_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(const output_table& table, std::ostream& os) {
    for (std::size_t c = 0; c < table.cols.size(); ++c)
        os << (c ? "," : "") << table.cols[c].name;
    os << "\n";
    const std::size_t rows = table.cols.empty() ? 0 : table.cols.front().size();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < table.cols.size(); ++c) {
            const output_column& col = table.cols[c];
            if (c) os << ",";
            if (!col.strs.empty())
                os << col.strs[r];
            else if (!col.ints.empty())
                os << col.ints[r];
            else
                os << format_num(col.nums[r]);
        }
        os << "\n";
    }
}

void write_json(const output_table& table, std::ostream& os) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json cols = nlohmann::ordered_json::object();
    for (const output_column& col : table.cols) {
        if (!col.strs.empty())
            cols[col.name] = col.strs;
        else if (!col.ints.empty())
            cols[col.name] = col.ints;
        else
            cols[col.name] = col.nums;
    }
    j["columns"] = std::move(cols);
    j["meta"] = table.meta;
    os << j.dump(2) << "\n";
}

void write_table(const output_table& table, const std::string& out_path,
                 const std::string& format) {
    const auto write = [&](std::ostream& os) {
        if (format == "json")
            write_json(table, os);
        else
            write_csv(table, os);
    };
    if (out_path.empty() || out_path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + out_path);
    write(os);
}

// Accepts decimals and exact fractions ("1/3").
double parse_p(const std::string& text) {
    try {
        const auto slash = text.find('/');
        std::size_t used = 0;
        if (slash == std::string::npos) {
            const double v = std::stod(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            return v;
        }
        const double num = std::stod(text.substr(0, slash), &used);
        if (used != slash) throw std::invalid_argument(text);
        const std::string den_text = text.substr(slash + 1);
        const double den = std::stod(den_text, &used);
        if (used != den_text.size() || den == 0.0) throw std::invalid_argument(text);
        return num / den;
    } catch (const std::exception&) {
        throw zetawalk::domain_error("cannot parse p value '" + text +
                                     "' (expected a decimal or fraction in (0, 1])");
    }
}

std::vector<double> linear_grid(double lo, double hi, int points) {
    if (points < 1) throw zetawalk::domain_error("points must be at least 1");
    if (points == 1) return {lo};
    std::vector<double> out(static_cast<std::size_t>(points));
    const double h = (hi - lo) / static_cast<double>(points - 1);
    for (int i = 0; i < points; ++i) out[static_cast<std::size_t>(i)] = lo + i * h;
    out.front() = lo;
    out.back() = hi;
    return out;
}

// Grid symmetric under negation bit for bit: points at (i - (n-1)/2) * h.
std::vector<double> symmetric_grid(double half_width, int points) {
    if (points < 2) throw zetawalk::domain_error("points must be at least 2");
    std::vector<double> out(static_cast<std::size_t>(points));
    const double h = 2.0 * half_width / static_cast<double>(points - 1);
    const double mid = static_cast<double>(points - 1) / 2.0;
    for (int i = 0; i < points; ++i)
        out[static_cast<std::size_t>(i)] = (static_cast<double>(i) - mid) * h;
    return out;
}

// "lo:hi:step" inclusive of hi up to rounding slack.
std::vector<double> parse_range(const std::string& text) {
    const auto c1 = text.find(':');
    const auto c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
    if (c2 == std::string::npos)
        throw zetawalk::domain_error("range must be lo:hi:step, got '" + text + "'");
    double lo, hi, step;
    try {
        lo = std::stod(text.substr(0, c1));
        hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
        step = std::stod(text.substr(c2 + 1));
    } catch (const std::exception&) {
        throw zetawalk::domain_error("range must be lo:hi:step, got '" + text + "'");
    }
    if (!(step > 0.0) || hi < lo) throw zetawalk::domain_error("range needs step > 0, hi >= lo");
    const int n = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out.push_back(lo + i * step);
    return out;
}

nlohmann::ordered_json base_meta(double p, double s) {
    nlohmann::ordered_json meta;
    meta["p"] = p;
    meta["s"] = s;
    meta["version"] = zetawalk::version_string;
    return meta;
}

struct eval_opts {
    std::string p_text;
    double s = 0.0;
    double t_min = 0.0;
    double t_max = 0.0;
    int points = 200;
    double tol = 1e-10;
};

output_table run_eval(const eval_opts& o) {
    const ProductParams params(parse_p(o.p_text), o.s);
    const std::vector<double> grid = linear_grid(o.t_min, o.t_max, o.points);
    const zetawalk::TrendConstants trend = zetawalk::trend_constants(params, 1e-9);
    const double k = zetawalk::fit_k(params, trend, grid);
    output_table table;
    table.cols = {{"t"}, {"cl"}, {"trend_factor"}, {"upper_envelope"}};
    for (double t : grid) {
        table.cols[0].nums.push_back(t);
        table.cols[1].nums.push_back(zetawalk::eval_cl(params, t, o.tol));
        table.cols[2].nums.push_back(zetawalk::trend_factor(trend.c_ps, params.s, t));
        const double at = std::fabs(t);
        table.cols[3].nums.push_back(std::exp(-trend.c_ps * std::pow(at, 1.0 / params.s) +
                                              k * std::pow(at, 1.0 / (params.s + 1.0))));
    }
    table.meta = base_meta(params.p, params.s);
    table.meta["tol"] = o.tol;
    table.meta["trend_constant"] = trend.c_ps;
    table.meta["trend_method"] = zetawalk::trend_method_name(trend.method);
    table.meta["k_fit"] = k;
    return table;
}

struct trend_opts {
    std::string p_text;
    std::string p_grid;
    double s = 0.0;
    double tol = 1e-9;
};

output_table run_trend(const trend_opts& o) {
    if (o.p_text.empty() == o.p_grid.empty())
        throw zetawalk::domain_error("trend needs exactly one of --p or --p-grid");
    std::vector<double> ps =
        o.p_grid.empty() ? std::vector<double>{parse_p(o.p_text)} : parse_range(o.p_grid);
    output_table table;
    table.cols = {{"p"}, {"c_ps"}, {"method"}};
    for (double p : ps) {
        const ProductParams params(p, o.s);
        const zetawalk::TrendConstants tc = zetawalk::trend_constants(params, o.tol);
        table.cols[0].nums.push_back(p);
        table.cols[1].nums.push_back(tc.c_ps);
        table.cols[2].strs.emplace_back(zetawalk::trend_method_name(tc.method));
    }
    table.meta["s"] = o.s;
    table.meta["tol"] = o.tol;
    table.meta["version"] = zetawalk::version_string;
    return table;
}

struct pdf_opts {
    std::string p_text;
    double s = 0.0;
    double omega_max = 0.0;
    int points = 401;
    double tol = 1e-3;
};

output_table run_pdf(const pdf_opts& o) {
    const ProductParams params(parse_p(o.p_text), o.s);
    if (!(o.omega_max > 0.0)) throw zetawalk::domain_error("omega-max must be positive");
    const zetawalk::DensityCurve curve =
        zetawalk::pdf_from_cf(params, symmetric_grid(o.omega_max, o.points), o.tol);
    output_table table;
    table.cols = {{"omega"}, {"f"}};
    table.cols[0].nums = curve.grid;
    table.cols[1].nums = curve.values;
    table.meta = base_meta(params.p, params.s);
    table.meta["tol"] = o.tol;
    table.meta["mass"] = curve.mass;
    table.meta["symmetric_grid"] = curve.symmetric_grid;
    table.meta["t_max"] = curve.meta.t_max;
    table.meta["n_nodes"] = curve.meta.n_nodes;
    table.meta["trend_constant"] = curve.meta.trend_constant;
    table.meta["clamp_count"] = curve.meta.clamp_count;
    table.meta["min_raw_value"] = curve.meta.min_raw_value;
    return table;
}

struct sample_opts {
    std::string p_text;
    double s = 0.0;
    int steps = 0;
    std::uint64_t walks = 0;
    std::uint64_t seed = 1;
    double bins = 0.05;
};

output_table run_sample(const sample_opts& o) {
    const ProductParams params(parse_p(o.p_text), o.s);
    const zetawalk::WalkEnsemble ensemble =
        zetawalk::run_ensemble(params, o.steps, o.walks, o.seed);
    const auto hist = zetawalk::histogram(ensemble, o.bins);
    output_table table;
    table.cols = {{"center"}, {"count"}};
    for (const auto& [center, count] : hist) {
        table.cols[0].nums.push_back(center);
        table.cols[1].ints.push_back(count);
    }
    table.meta = base_meta(params.p, params.s);
    table.meta["steps"] = o.steps;
    table.meta["walks"] = o.walks;
    table.meta["seed"] = o.seed;
    table.meta["bin_width"] = o.bins;
    return table;
}

struct lattice_opts {
    std::string p_text;
    double s = 0.0;
    int steps = 0;
};

output_table run_lattice(const lattice_opts& o) {
    const ProductParams params(parse_p(o.p_text), o.s);
    const zetawalk::LatticeDistribution dist = zetawalk::convolve_lattice(params, o.steps);
    output_table table;
    table.cols = {{"omega"}, {"prob"}};
    for (const auto& atom : dist.atoms) {
        table.cols[0].nums.push_back(atom.omega);
        table.cols[1].nums.push_back(atom.prob);
    }
    table.meta = base_meta(params.p, params.s);
    table.meta["steps"] = o.steps;
    table.meta["n_atoms"] = dist.atoms.size();
    table.meta["collision_merged"] = dist.collision_merged;
    return table;
}

struct typicality_opts {
    std::string kind;
    std::uint64_t n = 0;
    double s = 2.0;
    double p_ref = 0.0;
    std::string p_text = "0.5";
    std::uint64_t seed = 1;
    double eps = 0.05;
};

output_table run_typicality(const typicality_opts& o) {
    zetawalk::CoefficientSequence coeffs;
    if (o.kind == "mobius")
        coeffs = zetawalk::mobius_sieve(o.n);
    else if (o.kind == "liouville")
        coeffs = zetawalk::liouville_sieve(o.n);
    else if (o.kind == "all_ones")
        coeffs = zetawalk::all_ones_sequence(static_cast<std::size_t>(o.n));
    else if (o.kind == "sampled")
        coeffs = zetawalk::sample_coefficients(parse_p(o.p_text),
                                               static_cast<std::size_t>(o.n), o.seed);
    else
        throw zetawalk::domain_error(
            "kind must be one of mobius, liouville, all_ones, sampled");
    const zetawalk::TypicalityReport report =
        zetawalk::typicality_report(coeffs, o.s, o.p_ref, o.eps);
    output_table table;
    table.cols = {{"key"}, {"value"}};
    auto put = [&](const std::string& key, double value) {
        table.cols[0].strs.push_back(key);
        table.cols[1].nums.push_back(value);
    };
    put("mean_coeff", report.mean_coeff);
    put("nonzero_freq", report.nonzero_freq);
    put("partial_sum_at_s", report.partial_sum_at_s);
    put("p_ref", report.p_ref);
    put("ref_gap", report.ref_gap);
    for (const auto& [n_check, value] : report.growth_curve)
        put("growth[" + std::to_string(n_check) + "]", value);
    table.meta["kind"] = o.kind;
    table.meta["n"] = o.n;
    table.meta["s"] = o.s;
    table.meta["eps"] = o.eps;
    if (o.kind == "sampled") {
        table.meta["p"] = coeffs.p;
        table.meta["seed"] = o.seed;
    }
    table.meta["version"] = zetawalk::version_string;
    return table;
}

struct power_opts {
    std::string kind;
    int sigma = 0;
    double t_max = 0.0;
    int points = 401;
    double tol = 1e-10;
};

output_table run_power(const power_opts& o) {
    zetawalk::PowerKind kind;
    if (o.kind == "euler_sinc")
        kind = zetawalk::PowerKind::euler_sinc;
    else if (o.kind == "cantor")
        kind = zetawalk::PowerKind::cantor;
    else if (o.kind == "morrison_p23")
        kind = zetawalk::PowerKind::morrison_p23;
    else if (o.kind == "morrison_general")
        kind = zetawalk::PowerKind::morrison_general;
    else
        throw zetawalk::domain_error(
            "kind must be one of euler_sinc, cantor, morrison_p23, morrison_general");
    if (!(o.t_max > 0.0)) throw zetawalk::domain_error("t-max must be positive");
    auto sinc = [](double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; };
    auto reference = [&](double t) {
        switch (kind) {
            case zetawalk::PowerKind::euler_sinc:
            case zetawalk::PowerKind::morrison_general: return sinc(t);
            case zetawalk::PowerKind::morrison_p23: return sinc(0.5 * t);
            case zetawalk::PowerKind::cantor:
                return zetawalk::eval_power_product(kind, t, 0.01 * o.tol, o.sigma);
        }
        return 0.0;
    };
    output_table table;
    table.cols = {{"t"}, {"product"}, {"reference"}, {"abs_diff"}};
    double max_diff = 0.0;
    for (double t : symmetric_grid(o.t_max, o.points)) {
        const double value = zetawalk::eval_power_product(kind, t, o.tol, o.sigma);
        const double ref = reference(t);
        const double diff = std::fabs(value - ref);
        max_diff = std::max(max_diff, diff);
        table.cols[0].nums.push_back(t);
        table.cols[1].nums.push_back(value);
        table.cols[2].nums.push_back(ref);
        table.cols[3].nums.push_back(diff);
    }
    table.meta["kind"] = o.kind;
    if (kind == zetawalk::PowerKind::morrison_general) table.meta["sigma"] = o.sigma;
    table.meta["tol"] = o.tol;
    table.meta["max_abs_diff"] = max_diff;
    table.meta["version"] = zetawalk::version_string;
    return table;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trigonometric product, trend, and random-walk toolkit"};
    app.require_subcommand(1);
    std::string out_path = "-";
    std::string format = "csv";
    app.add_option("--out", out_path, "Output path ('-' for stdout)")->capture_default_str();
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    eval_opts eo;
    CLI::App* eval = app.add_subcommand("eval", "Evaluate Cl(t) with trend and envelope")->fallthrough();
    eval->add_option("--p", eo.p_text, "Walk parameter p in (0, 1]; fractions accepted")
        ->required();
    eval->add_option("--s", eo.s, "Exponent s > 1/2")->required();
    eval->add_option("--t-min", eo.t_min, "Grid start")->capture_default_str();
    eval->add_option("--t-max", eo.t_max, "Grid end")->required();
    eval->add_option("--points", eo.points, "Grid size")->capture_default_str();
    eval->add_option("--tol", eo.tol, "Product truncation tolerance")->capture_default_str();

    trend_opts to;
    CLI::App* trend = app.add_subcommand("trend", "Trend constants C_{p;s}")->fallthrough();
    trend->add_option("--p", to.p_text, "Single p value");
    trend->add_option("--p-grid", to.p_grid, "Range lo:hi:step");
    trend->add_option("--s", to.s, "Exponent s > 1/2")->required();
    trend->add_option("--tol", to.tol, "Constant tolerance")->capture_default_str();

    pdf_opts po;
    CLI::App* pdf = app.add_subcommand("pdf", "Recover the endpoint density from Cl")->fallthrough();
    pdf->add_option("--p", po.p_text, "Walk parameter p")->required();
    pdf->add_option("--s", po.s, "Exponent s")->required();
    pdf->add_option("--omega-max", po.omega_max, "Half-width of the omega grid")->required();
    pdf->add_option("--points", po.points, "Grid size")->capture_default_str();
    pdf->add_option("--tol", po.tol, "Inversion tolerance")->capture_default_str();

    sample_opts so;
    CLI::App* sample = app.add_subcommand("sample", "Monte Carlo endpoint histogram")->fallthrough();
    sample->add_option("--p", so.p_text, "Walk parameter p")->required();
    sample->add_option("--s", so.s, "Exponent s")->required();
    sample->add_option("--steps", so.steps, "Steps per walk")->required();
    sample->add_option("--walks", so.walks, "Number of walks")->required();
    sample->add_option("--seed", so.seed, "RNG seed")->capture_default_str();
    sample->add_option("--bins", so.bins, "Histogram bin width")->capture_default_str();

    lattice_opts lo;
    CLI::App* lattice = app.add_subcommand("lattice", "Exact N-step endpoint law")->fallthrough();
    lattice->add_option("--p", lo.p_text, "Walk parameter p")->required();
    lattice->add_option("--s", lo.s, "Exponent s")->required();
    lattice->add_option("--steps", lo.steps, "Number of steps")->required();

    typicality_opts yo;
    CLI::App* typ = app.add_subcommand("typicality", "Coefficient-sequence statistics")->fallthrough();
    typ->add_option("--kind", yo.kind, "mobius | liouville | all_ones | sampled")->required();
    typ->add_option("--n", yo.n, "Sequence length")->required();
    typ->add_option("--s", yo.s, "Exponent for the weighted sum")->capture_default_str();
    typ->add_option("--p-ref", yo.p_ref, "Reference nonzero frequency")->capture_default_str();
    typ->add_option("--p", yo.p_text, "Sampling p (kind=sampled)")->capture_default_str();
    typ->add_option("--seed", yo.seed, "RNG seed (kind=sampled)")->capture_default_str();
    typ->add_option("--eps", yo.eps, "Growth-curve exponent offset")->capture_default_str();

    power_opts wo;
    CLI::App* power = app.add_subcommand("power", "Power-scale products vs closed forms")->fallthrough();
    power->add_option("--kind", wo.kind,
                      "euler_sinc | cantor | morrison_p23 | morrison_general")
        ->required();
    power->add_option("--sigma", wo.sigma, "Integer scale (morrison_general)")
        ->capture_default_str();
    power->add_option("--t-max", wo.t_max, "Half-width of the t grid")->required();
    power->add_option("--points", wo.points, "Grid size")->capture_default_str();
    power->add_option("--tol", wo.tol, "Product tolerance")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        output_table table;
        if (*eval)
            table = run_eval(eo);
        else if (*trend)
            table = run_trend(to);
        else if (*pdf)
            table = run_pdf(po);
        else if (*sample)
            table = run_sample(so);
        else if (*lattice)
            table = run_lattice(lo);
        else if (*typ)
            table = run_typicality(yo);
        else if (*power)
            table = run_power(wo);
        write_table(table, out_path, format);
    } catch (const zetawalk::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
