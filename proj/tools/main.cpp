// Command-line front end: one subcommand per analysis family.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "csnet/analytic.hpp"
#include "csnet/fit.hpp"
#include "csnet/generate.hpp"
#include "csnet/io.hpp"
#include "csnet/model.hpp"
#include "csnet/parallel.hpp"
#include "csnet/spectrum.hpp"

namespace {

using namespace csnet;
using nlohmann::json;

json report_json(const GenReport& r) {
    return json{{"seed", r.seed},
                {"model", r.model},
                {"edges_created", r.edges_created},
                {"self_loops_erased", r.self_loops_erased},
                {"multi_edges_erased", r.multi_edges_erased}};
}

struct ModelOpts {
    std::uint64_t n = 100000;
    double tau = 2.5;
    std::string kernel = "min";
};

void add_model_opts(CLI::App* cmd, ModelOpts& m, bool with_kernel = true) {
    cmd->add_option("--n", m.n, "vertex count")->check(CLI::Range(2ull, ~0ull));
    cmd->add_option("--tau", m.tau, "degree exponent in (2,3)");
    if (with_kernel)
        cmd->add_option("--kernel", m.kernel, "connection function")
            ->check(CLI::IsMember({"min", "rational", "exp"}));
}

std::vector<double> log_grid(double lo, double hi, int points) {
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i)
        g[i] = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (points - 1));
    return g;
}

int run(int argc, char** argv) {
    CLI::App app{"scale-free network clustering spectrum toolkit"};
    app.require_subcommand(1);

    // ---- generate ----------------------------------------------------------
    ModelOpts gen_m;
    std::string gen_model = "hidden";
    std::uint64_t gen_seed = 1;
    std::string gen_out, gen_hidden_out;
    std::uint64_t gen_budget = 8ull << 30;
    auto* gen = app.add_subcommand("generate", "sample a model graph to an edge list");
    add_model_opts(gen, gen_m);
    gen->add_option("--model", gen_model)->check(CLI::IsMember({"hidden", "ecm"}));
    gen->add_option("--seeds", gen_seed, "base RNG seed")->option_text("UINT");
    gen->add_option("--out", gen_out, "edge-list output path")->required();
    gen->add_option("--hidden-out", gen_hidden_out, "write per-vertex hidden variables (CSV)");
    gen->add_option("--budget-bytes", gen_budget, "memory budget for generation");

    // ---- spectrum ----------------------------------------------------------
    std::string sp_in, sp_out, sp_ccdf, sp_binned;
    double sp_factor = 1.3;
    auto* sp = app.add_subcommand("spectrum", "clustering spectrum and degree CCDF of an edge list");
    sp->add_option("--in", sp_in)->required();
    sp->add_option("--out", sp_out, "per-degree spectrum CSV")->required();
    sp->add_option("--ccdf-out", sp_ccdf, "degree CCDF CSV");
    sp->add_option("--binned-out", sp_binned, "log-binned spectrum CSV");
    sp->add_option("--bin-factor", sp_factor, "multiplicative bin width");

    // ---- analytic ----------------------------------------------------------
    ModelOpts an_m;
    std::string an_out, an_sigma_out;
    int an_points = 200;
    double an_tol = 1e-8;
    auto* an = app.add_subcommand("analytic", "c(h) curve and sigma_N(t) from the model");
    add_model_opts(an, an_m);
    an->add_option("--out", an_out, "curve CSV (h,c,regime)")->required();
    an->add_option("--sigma-out", an_sigma_out, "sigma_N CSV (t,sigma), reference at h_c");
    an->add_option("--points", an_points, "grid size");
    an->add_option("--tol", an_tol, "quadrature tolerance for smooth kernels");

    // ---- slopes ------------------------------------------------------------
    ModelOpts sl_m;
    std::string sl_out;
    double sl_dt = 1e-6;
    auto* sl = app.add_subcommand("slopes", "exact slope formulas vs finite differences");
    add_model_opts(sl, sl_m, false);
    sl->add_option("--out", sl_out, "JSON output path");
    sl->add_option("--dt", sl_dt, "finite-difference step");

    // ---- mix ---------------------------------------------------------------
    ModelOpts mx_m;
    std::string mx_out;
    std::uint64_t mx_kmax = 0;
    double mx_tol = 1e-8;
    auto* mx = app.add_subcommand("mix", "Poisson-mixed spectrum cbar(k) from c(h)");
    add_model_opts(mx, mx_m);
    mx->add_option("--out", mx_out)->required();
    mx->add_option("--kmax", mx_kmax, "largest degree (default 2 h_s)");
    mx->add_option("--tol", mx_tol, "quadrature tolerance for smooth kernels");

    // ---- compare -----------------------------------------------------------
    ModelOpts cp_m;
    std::string cp_out;
    std::uint64_t cp_seed = 1;
    unsigned cp_real = 100;
    double cp_factor = 1.3;
    auto* cp = app.add_subcommand(
        "compare", "averaged spectra: hidden-variable (exp kernel) vs erased configuration model");
    add_model_opts(cp, cp_m, false);
    cp->add_option("--out", cp_out)->required();
    cp->add_option("--seeds", cp_seed, "base RNG seed");
    cp->add_option("--realizations", cp_real)->check(CLI::Range(1u, 1000000u));
    cp->add_option("--bin-factor", cp_factor);

    // ---- fit ---------------------------------------------------------------
    std::string ft_in, ft_out;
    std::uint64_t ft_seed = 1;
    std::size_t ft_reps = 100;
    double ft_kmin = 0.0;
    auto* ft = app.add_subcommand("fit", "tail exponent, goodness of fit, and spectrum exponent");
    ft->add_option("--in", ft_in, "edge-list input")->required();
    ft->add_option("--out", ft_out, "JSON output path");
    ft->add_option("--seeds", ft_seed, "bootstrap seed");
    ft->add_option("--replicates", ft_reps, "bootstrap replicates");
    ft->add_option("--kmin-alpha", ft_kmin, "spectrum-tail start (default sqrt of degree sum)");

    CLI11_PARSE(app, argc, argv);

    if (gen->parsed()) {
        const auto params = derive_params(gen_m.n, gen_m.tau);
        GenReport report;
        if (gen_model == "hidden") {
            auto hv = generate_hidden_variable(params, kernel_from_name(gen_m.kernel), gen_seed,
                                               gen_budget);
            write_edge_list(hv.graph, gen_out);
            if (!gen_hidden_out.empty()) {
                std::ofstream hout(gen_hidden_out);
                hout << "vertex,h\n";
                for (std::size_t v = 0; v < hv.hidden.size(); ++v)
                    hout << v << ',' << format_double(hv.hidden[v]) << '\n';
            }
            report = hv.report;
        } else {
            const auto degrees = sample_power_law_degrees(params, gen_seed);
            auto ecm = generate_ecm(degrees, gen_seed);
            write_edge_list(ecm.graph, gen_out);
            report = ecm.report;
        }
        std::cout << report_json(report).dump(2) << '\n';
        return 0;
    }

    if (sp->parsed()) {
        auto in = read_edge_list(sp_in);
        std::cerr << "read " << sp_in << ": " << in.graph.num_vertices() << " vertices, "
                  << in.graph.num_edges() << " edges (" << in.report.loops_dropped
                  << " loops dropped, " << in.report.duplicates_collapsed
                  << " duplicates collapsed)\n";
        auto table = clustering_spectrum(in.graph);
        write_spectrum(table, sp_out);
        if (!sp_ccdf.empty()) write_ccdf_csv(degree_ccdf(in.graph), sp_ccdf);
        if (!sp_binned.empty()) write_spectrum(log_bin_spectrum(table, sp_factor), sp_binned);
        return 0;
    }

    if (an->parsed()) {
        const auto params = derive_params(an_m.n, an_m.tau);
        const Kernel kernel = kernel_from_name(an_m.kernel);
        std::vector<CurvePoint> pts;
        for (double h : log_grid(1.0, params.h_c, an_points)) {
            const double c = kernel == Kernel::Min ? c_exact_min(params, h)
                                                   : c_quadrature(params, kernel, h, an_tol);
            pts.push_back({h, c, classify_regime(params, h)});
        }
        write_curve_csv(pts, an_out);
        if (!an_sigma_out.empty()) {
            std::vector<std::pair<double, double>> sig;
            const double tmax = 1.0 / (an_m.tau - 1.0);
            for (int i = 0; i < an_points; ++i) {
                const double t = tmax * i / (an_points - 1);
                sig.emplace_back(t, sigma_n(params, kernel, t, SigmaRef::AtHc, an_tol));
            }
            write_sigma_csv(sig, an_sigma_out);
        }
        return 0;
    }

    if (sl->parsed()) {
        const auto params = derive_params(sl_m.n, sl_m.tau);
        const double tmax = 1.0 / (sl_m.tau - 1.0);
        json j{{"n", sl_m.n},
               {"tau", sl_m.tau},
               {"slope_at_hc", slope_at_hc(params)},
               {"slope_at_half", slope_at_half(params)},
               {"fd_at_hc", slope_numeric(params, Kernel::Min, tmax, sl_dt).value},
               {"fd_at_half", slope_numeric(params, Kernel::Min, 0.5, sl_dt).value},
               {"limit_at_hc", slope_limit(sl_m.tau, SlopePoint::AtHc)},
               {"limit_at_half", slope_limit(sl_m.tau, SlopePoint::AtHalf)}};
        if (sl_out.empty())
            std::cout << j.dump(2) << '\n';
        else {
            std::ofstream out(sl_out);
            out << j.dump(2) << '\n';
        }
        return 0;
    }

    if (mx->parsed()) {
        const auto params = derive_params(mx_m.n, mx_m.tau);
        const Kernel kernel = kernel_from_name(mx_m.kernel);
        const std::uint64_t kmax =
            mx_kmax ? mx_kmax : static_cast<std::uint64_t>(2.0 * params.h_s);
        std::ofstream out(mx_out);
        if (!out) throw std::runtime_error("cannot open for writing: " + mx_out);
        out << "k,pk,cbar\n";
        for (std::uint64_t k = 2; k <= kmax; ++k)
            out << k << ',' << format_double(degree_prob(params, k)) << ','
                << format_double(cbar_from_ch(params, kernel, k, mx_tol)) << '\n';
        return 0;
    }

    if (cp->parsed()) {
        const auto params = derive_params(cp_m.n, cp_m.tau);
        std::vector<SpectrumAccumulator> hv_acc(cp_real), ecm_acc(cp_real);
        parallel_for(cp_real, [&](std::size_t r) {
            const std::uint64_t seed = cp_seed + r;
            auto hv = generate_hidden_variable(params, Kernel::Exponential, seed);
            hv_acc[r].add(hv.graph);
            // ECM on the same realization's degree sequence, so the two null
            // models are compared at one degree distribution
            ecm_acc[r].add(generate_ecm_matched(hv.graph, seed).graph);
        });
        SpectrumAccumulator hv_all, ecm_all;
        for (unsigned r = 0; r < cp_real; ++r) {
            hv_all.merge(hv_acc[r]);
            ecm_all.merge(ecm_acc[r]);
        }
        const auto hv_bins = log_bin_spectrum(hv_all.table(), cp_factor, 2.0);
        const auto ecm_bins = log_bin_spectrum(ecm_all.table(), cp_factor, 2.0);
        std::ofstream out(cp_out);
        if (!out) throw std::runtime_error("cannot open for writing: " + cp_out);
        out << "k_hidden,n_hidden,cbar_hidden,k_ecm,n_ecm,cbar_ecm\n";
        const std::size_t rows = std::max(hv_bins.rows.size(), ecm_bins.rows.size());
        for (std::size_t i = 0; i < rows; ++i) {
            auto cell = [&](const SpectrumTable& t, std::size_t j) {
                return j < t.rows.size()
                           ? format_double(t.rows[j].k) + ',' + std::to_string(t.rows[j].n_k) +
                                 ',' + format_double(t.rows[j].cbar)
                           : std::string(",,");
            };
            out << cell(hv_bins, i) << ',' << cell(ecm_bins, i) << '\n';
        }
        return 0;
    }

    if (ft->parsed()) {
        auto in = read_edge_list(ft_in);
        std::vector<std::uint32_t> degrees(in.graph.num_vertices());
        std::uint64_t degsum = 0;
        for (Graph::vertex v = 0; v < in.graph.num_vertices(); ++v) {
            degrees[v] = in.graph.degree(v);
            degsum += degrees[v];
        }
        std::vector<std::uint32_t> positive;
        for (auto d : degrees)
            if (d > 0) positive.push_back(d);
        FitResult fit = fit_degree_tail(positive);
        fit.gof_pvalue = gof_pvalue(positive, fit, ft_reps, ft_seed);
        const double kmin = ft_kmin > 0.0 ? ft_kmin : std::sqrt(static_cast<double>(degsum));
        json j = json::parse(fit_to_json(fit));
        try {
            j["alpha"] = fit_spectrum_exponent(clustering_spectrum(in.graph), kmin);
            j["alpha_kmin"] = kmin;
        } catch (const std::invalid_argument& e) {
            j["alpha_error"] = e.what();
        }
        if (ft_out.empty())
            std::cout << j.dump(2) << '\n';
        else {
            std::ofstream out(ft_out);
            out << j.dump(2) << '\n';
        }
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
