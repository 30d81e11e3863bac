// oemi — command line front end for the three-cavity optoelectromechanical
// interface simulator.
//
// Exit codes: 0 ok, 1 config validation failure, 2 config parse failure,
// 3 numerical failure (singular matrix, non-convergence, unstable point).

#include "oemi/entanglement.hpp"
#include "oemi/stability.hpp"
#include "oemi/sweep.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using oemi::sweep::Format;
using oemi::sweep::RunConfig;

struct GlobalOpts {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string format{"csv"};
};

int load_config(const GlobalOpts& g, RunConfig& cfg) {
    std::string text;
    if (!g.config_path.empty()) {
        std::ifstream is(g.config_path);
        if (!is) {
            std::cerr << "error: cannot open config file " << g.config_path << "\n";
            return 2;
        }
        std::stringstream ss;
        ss << is.rdbuf();
        text = ss.str();
    }
    const auto result = oemi::sweep::validate_config(text);
    for (const auto& n : result.notices) std::cerr << "notice: " << n << "\n";
    if (!result.parse_errors.empty()) {
        for (const auto& e : result.parse_errors) std::cerr << "parse error: " << e << "\n";
        return 2;
    }
    if (!result.validation_errors.empty()) {
        for (const auto& e : result.validation_errors)
            std::cerr << "validation error: " << e << "\n";
        return 1;
    }
    cfg = *result.config;
    if (g.seed) cfg.seed = *g.seed;
    return 0;
}

Format parse_format(const std::string& f) {
    if (f == "csv") return Format::csv;
    if (f == "json") return Format::json;
    throw CLI::ValidationError("--format must be csv or json");
}

// Single-row table for the scalar verbs.
void emit_scalars(const GlobalOpts& g, const std::vector<std::pair<std::string, double>>& kv) {
    for (const auto& [k, v] : kv) {
        std::printf("%-16s %.12g\n", k.c_str(), v);
    }
    if (g.out.empty()) return;
    std::ofstream os(g.out, std::ios::binary);
    if (parse_format(g.format) == Format::csv) {
        for (std::size_t i = 0; i < kv.size(); ++i) os << (i ? "," : "") << kv[i].first;
        os << '\n';
        char buf[40];
        for (std::size_t i = 0; i < kv.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.12g", kv[i].second);
            os << (i ? "," : "") << buf;
        }
        os << '\n';
    } else {
        nlohmann::json j;
        for (const auto& [k, v] : kv) j[k] = v;
        os << j.dump(2) << '\n';
    }
}

int run_transmission(const GlobalOpts& g, double omega) {
    RunConfig cfg;
    if (int rc = load_config(g, cfg)) return rc;
    const auto t = oemi::scattering::transmission(cfg.params, omega);
    std::printf("T(omega = %.6g MHz), mode order (a^dag, b, c, d):\n", omega);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            std::printf("  (%+10.4e %+10.4ei)", t.t(i, j).real(), t.t(i, j).imag());
        }
        std::printf("\n");
    }
    std::vector<std::pair<std::string, double>> kv;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            kv.emplace_back("t2_" + std::to_string(i + 1) + std::to_string(j + 1),
                            std::norm(t.t(i, j)));
    emit_scalars(g, kv);
    return 0;
}

int run_eof(const GlobalOpts& g, const std::string& pair, double omega) {
    RunConfig cfg;
    if (int rc = load_config(g, cfg)) return rc;
    const auto p = oemi::moments::pair_from_name(pair);
    const auto r = oemi::entanglement::eof_pair(cfg.params, omega, p);
    emit_scalars(g, {{"e_f", r.e_f},
                     {"r0", r.r0},
                     {"nu_minus_pt", r.nu_minus_pt},
                     {"kappa_inv", r.kappa_inv},
                     {"lambda_plus", r.lambda_plus},
                     {"lambda_minus", r.lambda_minus}});
    return 0;
}

int run_witness(const GlobalOpts& g, double omega, std::uint64_t samples) {
    RunConfig cfg;
    if (int rc = load_config(g, cfg)) return rc;
    if (samples) cfg.samples = samples;
    const auto v = oemi::moments::output_covariance(cfg.params, omega);
    const auto w = oemi::entanglement::tripartite_witness(v, cfg.samples, cfg.seed);
    std::printf("verdict: %s\n", w.verdict().c_str());
    emit_scalars(g, {{"delta_e_min", w.min_delta_e},
                     {"delta_e_max", w.max_delta_e},
                     {"frac_negative", w.fraction_negative},
                     {"witnessed", w.witnessed ? 1.0 : 0.0},
                     {"all_negative", w.all_negative ? 1.0 : 0.0},
                     {"n_samples", double(w.n_samples)}});
    return 0;
}

int run_stability(const GlobalOpts& g) {
    RunConfig cfg;
    if (int rc = load_config(g, cfg)) return rc;
    const auto s = oemi::stability::char_coeffs(cfg.params);
    const auto rh = oemi::stability::is_stable_rh(cfg.params);
    const auto eig = oemi::stability::is_stable_eig(cfg.params);
    const auto approx = oemi::stability::approx_condition(cfg.params);
    std::printf("routh-hurwitz: %s", rh.stable ? "stable" : "unstable");
    if (!rh.stable) std::printf(" (first failing relation: %d)", rh.failing_relation);
    std::printf("\neigenvalues:   %s (max Re lambda = %.6g MHz)\n",
                eig.stable ? "stable" : "unstable", eig.max_real_part);
    std::printf("approximation: %s%s\n", approx.stable ? "stable" : "unstable",
                approx.preconditions_ok ? "" : ("  [warning: " + approx.warning + "]").c_str());
    emit_scalars(g, {{"s3", s.s3},
                     {"s2", s.s2},
                     {"s1", s.s1},
                     {"s0", s.s0},
                     {"stable_rh", rh.stable ? 1.0 : 0.0},
                     {"stable_eig", eig.stable ? 1.0 : 0.0},
                     {"max_re_lambda", eig.max_real_part}});
    return 0;
}

int run_sweep_cmd(const GlobalOpts& g, const std::string& axis, double start, double stop,
                  int steps, const std::string& observables) {
    RunConfig cfg;
    if (int rc = load_config(g, cfg)) return rc;
    oemi::sweep::SweepSpec spec;
    spec.axis = oemi::sweep::axis_from_name(axis);
    spec.start = start;
    spec.stop = stop;
    spec.steps = steps;

    std::vector<std::string> obs;
    std::stringstream ss(observables);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) obs.push_back(item);
    }
    const auto result = oemi::sweep::run_sweep(cfg, spec, obs);

    bool any_stable = false;
    for (const auto& rec : result.records) any_stable |= rec.stable;
    if (!any_stable) std::cerr << "warning: every grid point is unstable\n";

    if (g.out.empty()) {
        oemi::sweep::write_csv(result, std::cout);
    } else {
        oemi::sweep::write_file(result, g.out, parse_format(g.format));
        std::cout << "wrote " << g.out << "\n";
    }
    return 0;
}

int run_reproduce(const GlobalOpts& g, int figure, const std::string& out_dir,
                  std::uint64_t samples) {
    RunConfig cfg;
    if (int rc = load_config(g, cfg)) return rc;
    const auto files = oemi::sweep::reproduce_figure(figure, out_dir, cfg.seed,
                                                     samples ? samples : cfg.samples);
    for (const auto& f : files) std::cout << "wrote " << f.string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Three-cavity optoelectromechanical interface: scattering, output "
                 "covariances, entanglement of formation, tripartite witness"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--config", g.config_path, "flat key=value config file (units: /2pi MHz)");
    app.add_option("--seed", g.seed, "override the RNG seed");
    app.add_option("--out", g.out, "output file path");
    app.add_option("--format", g.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    double omega = 0.0;
    auto* t_cmd = app.add_subcommand("transmission", "transmission matrix T(omega)");
    t_cmd->add_option("--omega", omega, "probe frequency (MHz)");

    std::string pair{"ac"};
    double eof_omega = 0.0;
    auto* e_cmd = app.add_subcommand("eof", "entanglement of formation of an output pair");
    e_cmd->add_option("--pair", pair, "output pair: ac, ad or cd");
    e_cmd->add_option("--omega", eof_omega, "bin center frequency (MHz)");

    double wit_omega = 0.0;
    std::uint64_t wit_samples = 0;
    auto* w_cmd = app.add_subcommand("witness", "tripartite witness Monte Carlo scan");
    w_cmd->add_option("--omega", wit_omega, "bin center frequency (MHz)");
    w_cmd->add_option("--samples", wit_samples, "sample count (default from config)");

    auto* s_cmd = app.add_subcommand("stability", "stability classification");

    std::string axis{"phi"}, observables{"ef_ac,ef_ad,ef_cd"};
    double start = 0.0, stop = 1.0;
    int steps = 2;
    auto* sw_cmd = app.add_subcommand("sweep", "linear parameter sweep");
    sw_cmd->add_option("--axis", axis, "phi, g_a, omega, n_th, gamma_m or g_c")->required();
    sw_cmd->add_option("--start", start)->required();
    sw_cmd->add_option("--stop", stop)->required();
    sw_cmd->add_option("--steps", steps)->required();
    sw_cmd->add_option("--observables", observables,
                       "comma list: t2_ij, ef_ac/ad/cd, log_neg_*, witness");

    int figure = 3;
    std::string out_dir{"."};
    std::uint64_t fig_samples = 0;
    auto* r_cmd = app.add_subcommand("reproduce-fig", "emit a figure's dataset");
    r_cmd->add_option("figure", figure, "figure number 2..8")->required();
    r_cmd->add_option("--out-dir", out_dir, "output directory");
    r_cmd->add_option("--samples", fig_samples, "witness samples per point");

    CLI11_PARSE(app, argc, argv);

    try {
        if (t_cmd->parsed()) return run_transmission(g, omega);
        if (e_cmd->parsed()) return run_eof(g, pair, eof_omega);
        if (w_cmd->parsed()) return run_witness(g, wit_omega, wit_samples);
        if (s_cmd->parsed()) return run_stability(g);
        if (sw_cmd->parsed()) return run_sweep_cmd(g, axis, start, stop, steps, observables);
        if (r_cmd->parsed()) return run_reproduce(g, figure, out_dir, fig_samples);
    } catch (const oemi::numerics::SingularMatrixError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const oemi::numerics::NonConvergenceError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const oemi::moments::UnstablePointError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
