#include "oemi/sweep.hpp"

#include "oemi/rng.hpp"
#include "oemi/stability.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace oemi::sweep {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

bool parse_number(const std::string& s, double& out) {
    try {
        std::size_t pos = 0;
        out = std::stod(s, &pos);
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        return pos == s.size() && std::isfinite(out);
    } catch (const std::exception&) {
        return false;
    }
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

ConfigResult validate_config(const std::string& text) {
    ConfigResult res;
    RunConfig cfg;

    double samples_raw = double(cfg.samples);
    double seed_raw = double(cfg.seed);
    std::map<std::string, double*> keys{
        {"kappa_a", &cfg.params.kappa_a}, {"kappa_c", &cfg.params.kappa_c},
        {"kappa_d", &cfg.params.kappa_d}, {"gamma_m", &cfg.params.gamma_m},
        {"g_a", &cfg.params.g_a},         {"g_c", &cfg.params.g_c},
        {"g_x", &cfg.params.g_x},         {"g_d_mag", &cfg.params.g_d_mag},
        {"phi", &cfg.params.phi},         {"n_th", &cfg.params.n_th},
        {"omega", &cfg.omega},            {"samples", &samples_raw},
        {"seed", &seed_raw}};

    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            res.parse_errors.push_back("line " + std::to_string(lineno) +
                                       ": expected 'key = value'");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        const auto it = keys.find(key);
        if (it == keys.end()) {
            res.parse_errors.push_back("line " + std::to_string(lineno) + ": unknown key '" +
                                       key + "'");
            continue;
        }
        double parsed = 0.0;
        if (!parse_number(val, parsed)) {
            res.parse_errors.push_back("line " + std::to_string(lineno) + ": key '" + key +
                                       "': cannot parse number '" + val + "'");
            continue;
        }
        *it->second = parsed;
    }
    if (!res.parse_errors.empty()) return res;

    for (auto [name, raw] : {std::pair{"samples", samples_raw}, std::pair{"seed", seed_raw}}) {
        if (raw < 0.0 || raw != std::floor(raw)) {
            res.validation_errors.push_back(std::string(name) +
                                            ": must be a non-negative integer");
        }
    }
    if (samples_raw == 0.0) {
        res.validation_errors.push_back("samples: must be >= 1");
    }

    const double phi_in = cfg.params.phi;
    cfg.params.phi = model::normalize_phase(phi_in);
    if (std::abs(cfg.params.phi - phi_in) > 1e-12) {
        res.notices.push_back("phi normalized from " + format_double(phi_in) + " to " +
                              format_double(cfg.params.phi));
    }
    for (const auto& err : cfg.params.validate()) {
        res.validation_errors.push_back(err);
    }
    if (!std::isfinite(cfg.omega)) {
        res.validation_errors.push_back("omega is not finite");
    }
    if (!res.validation_errors.empty()) return res;

    cfg.samples = static_cast<std::uint64_t>(samples_raw);
    cfg.seed = static_cast<std::uint64_t>(seed_raw);
    res.config = cfg;
    return res;
}

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream os;
    const auto& p = cfg.params;
    os << "kappa_a = " << format_double(p.kappa_a) << "\n"
       << "kappa_c = " << format_double(p.kappa_c) << "\n"
       << "kappa_d = " << format_double(p.kappa_d) << "\n"
       << "gamma_m = " << format_double(p.gamma_m) << "\n"
       << "g_a = " << format_double(p.g_a) << "\n"
       << "g_c = " << format_double(p.g_c) << "\n"
       << "g_x = " << format_double(p.g_x) << "\n"
       << "g_d_mag = " << format_double(p.g_d_mag) << "\n"
       << "phi = " << format_double(p.phi) << "\n"
       << "n_th = " << format_double(p.n_th) << "\n"
       << "omega = " << format_double(cfg.omega) << "\n"
       << "samples = " << cfg.samples << "\n"
       << "seed = " << cfg.seed << "\n";
    return os.str();
}

Axis axis_from_name(const std::string& name) {
    if (name == "phi") return Axis::phi;
    if (name == "g_a") return Axis::g_a;
    if (name == "omega") return Axis::omega;
    if (name == "n_th") return Axis::n_th;
    if (name == "gamma_m") return Axis::gamma_m;
    if (name == "g_c") return Axis::g_c;
    throw std::invalid_argument("unknown sweep axis '" + name +
                                "' (phi, g_a, omega, n_th, gamma_m, g_c)");
}

const char* axis_name(Axis a) {
    switch (a) {
        case Axis::phi: return "phi";
        case Axis::g_a: return "g_a";
        case Axis::omega: return "omega";
        case Axis::n_th: return "n_th";
        case Axis::gamma_m: return "gamma_m";
        case Axis::g_c: return "g_c";
    }
    return "?";
}

void SweepSpec::require_valid() const {
    if (steps < 2) throw std::invalid_argument("sweep: steps must be >= 2");
    if (start == stop) throw std::invalid_argument("sweep: start must differ from stop");
}

double SweepSpec::value_at(int i) const {
    return start + (stop - start) * double(i) / double(steps - 1);
}

namespace {

struct PointContext {
    RunConfig cfg;
    std::uint64_t point_seed{0};
    std::optional<scattering::TransmissionMatrix> t;
    std::optional<moments::CovarianceMatrix> v;

    const scattering::TransmissionMatrix& transmission() {
        if (!t) t = scattering::transmission(cfg.params, cfg.omega);
        return *t;
    }
    const moments::CovarianceMatrix& covariance() {
        if (!v) v = moments::covariance_from_transmission(transmission(), cfg.params.n_th);
        return *v;
    }
};

using Emitter = std::function<void(PointContext&, std::vector<std::optional<double>>&)>;

moments::ReducedCovariance reduced(PointContext& ctx, moments::Pair pair) {
    return moments::reduce_pair(ctx.covariance(), pair);
}

double eof_value(PointContext& ctx, moments::Pair pair) {
    return entanglement::eof(moments::standard_form(reduced(ctx, pair))).e_f;
}

// Parse one observable name into (column names, emitter).
void resolve_observable(const std::string& name, std::vector<std::string>& columns,
                        std::vector<Emitter>& emitters) {
    if (name.rfind("t2_", 0) == 0 && name.size() == 5) {
        const int i = name[3] - '1';
        const int j = name[4] - '1';
        if (i >= 0 && i < 4 && j >= 0 && j < 4) {
            columns.push_back(name);
            emitters.push_back([i, j](PointContext& ctx, auto& out) {
                out.push_back(std::norm(ctx.transmission().t(i, j)));
            });
            return;
        }
    }
    if (name.rfind("ef_", 0) == 0) {
        const moments::Pair pair = moments::pair_from_name(name.substr(3));
        columns.push_back(name);
        emitters.push_back([pair](PointContext& ctx, auto& out) {
            out.push_back(eof_value(ctx, pair));
        });
        return;
    }
    if (name.rfind("log_neg_", 0) == 0) {
        const moments::Pair pair = moments::pair_from_name(name.substr(8));
        columns.push_back(name);
        emitters.push_back([pair](PointContext& ctx, auto& out) {
            out.push_back(entanglement::log_negativity(reduced(ctx, pair)));
        });
        return;
    }
    if (name == "witness") {
        for (const char* col : {"delta_e_min", "delta_e_max", "frac_negative", "witnessed",
                                "all_negative"}) {
            columns.push_back(col);
        }
        emitters.push_back([](PointContext& ctx, auto& out) {
            const auto w = entanglement::tripartite_witness(ctx.covariance(), ctx.cfg.samples,
                                                            ctx.point_seed);
            out.push_back(w.min_delta_e);
            out.push_back(w.max_delta_e);
            out.push_back(w.fraction_negative);
            out.push_back(w.witnessed ? 1.0 : 0.0);
            out.push_back(w.all_negative ? 1.0 : 0.0);
        });
        return;
    }
    throw std::invalid_argument("unknown observable '" + name + "'");
}

void apply_axis(RunConfig& cfg, Axis axis, double value) {
    switch (axis) {
        case Axis::phi: cfg.params.phi = model::normalize_phase(value); break;
        case Axis::g_a: cfg.params.g_a = value; break;
        case Axis::omega: cfg.omega = value; break;
        case Axis::n_th: cfg.params.n_th = value; break;
        case Axis::gamma_m: cfg.params.gamma_m = value; break;
        case Axis::g_c: cfg.params.g_c = value; break;
    }
}

}  // namespace

SweepResult run_sweep(const RunConfig& cfg, const SweepSpec& spec,
                      const std::vector<std::string>& observables) {
    spec.require_valid();
    cfg.params.require_valid();

    std::vector<std::string> columns;
    std::vector<Emitter> emitters;
    for (const auto& name : observables) resolve_observable(name, columns, emitters);

    SweepResult result;
    result.axis = axis_name(spec.axis);
    result.columns = columns;
    result.records.reserve(spec.steps);

    for (int i = 0; i < spec.steps; ++i) {
        PointContext ctx;
        ctx.cfg = cfg;
        apply_axis(ctx.cfg, spec.axis, spec.value_at(i));
        ctx.point_seed = rng::derive_seed(cfg.seed, std::uint64_t(i));

        OutputRecord rec;
        rec.axis_value = spec.value_at(i);
        rec.stable = stability::is_stable_eig(ctx.cfg.params).stable;
        if (rec.stable) {
            for (const auto& emit : emitters) emit(ctx, rec.values);
        } else {
            rec.values.assign(columns.size(), std::nullopt);
        }
        result.records.push_back(std::move(rec));
    }
    return result;
}

void write_csv(const SweepResult& r, std::ostream& os) {
    os << r.axis << ",stable";
    for (const auto& c : r.columns) os << ',' << c;
    os << '\n';
    for (const auto& rec : r.records) {
        os << format_double(rec.axis_value) << ',' << (rec.stable ? 1 : 0);
        for (const auto& v : rec.values) {
            os << ',';
            if (v) os << format_double(*v);
        }
        os << '\n';
    }
}

void write_json(const SweepResult& r, std::ostream& os) {
    nlohmann::json j;
    j["axis"] = r.axis;
    nlohmann::json cols = nlohmann::json::object();
    nlohmann::json axis_vals = nlohmann::json::array();
    nlohmann::json stable = nlohmann::json::array();
    for (const auto& rec : r.records) {
        axis_vals.push_back(rec.axis_value);
        stable.push_back(rec.stable);
    }
    cols[r.axis] = axis_vals;
    cols["stable"] = stable;
    for (std::size_t k = 0; k < r.columns.size(); ++k) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& rec : r.records) {
            if (k < rec.values.size() && rec.values[k]) {
                arr.push_back(*rec.values[k]);
            } else {
                arr.push_back(nullptr);
            }
        }
        cols[r.columns[k]] = arr;
    }
    j["columns"] = cols;
    os << j.dump(2) << '\n';
}

void write_file(const SweepResult& r, const std::filesystem::path& path, Format format) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file " + path.string());
    if (format == Format::csv) {
        write_csv(r, os);
    } else {
        write_json(r, os);
    }
}

namespace {

nlohmann::json params_json(const RunConfig& cfg) {
    const auto& p = cfg.params;
    return nlohmann::json{{"kappa_a", p.kappa_a}, {"kappa_c", p.kappa_c},
                          {"kappa_d", p.kappa_d}, {"gamma_m", p.gamma_m},
                          {"g_a", p.g_a},         {"g_c", p.g_c},
                          {"g_x", p.g_x},         {"g_d_mag", p.g_d_mag},
                          {"phi", p.phi},         {"n_th", p.n_th},
                          {"omega", cfg.omega},   {"samples", cfg.samples},
                          {"seed", cfg.seed},     {"units", "/2pi MHz"}};
}

// Merge several single-axis sweeps sharing a grid into one table with
// suffixed column names.
SweepResult merge_curves(const std::vector<std::pair<std::string, SweepResult>>& curves) {
    SweepResult out;
    out.axis = curves.front().second.axis;
    const std::size_t n = curves.front().second.records.size();
    out.records.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.records[i].axis_value = curves.front().second.records[i].axis_value;
        out.records[i].stable = true;  // per-curve stability goes into columns
    }
    for (const auto& [suffix, sr] : curves) {
        out.columns.push_back("stable" + suffix);
        for (const auto& c : sr.columns) out.columns.push_back(c + suffix);
        for (std::size_t i = 0; i < n; ++i) {
            auto& rec = out.records[i];
            const auto& src = sr.records[i];
            rec.values.push_back(src.stable ? 1.0 : 0.0);
            for (const auto& v : src.values) rec.values.push_back(v);
        }
    }
    return out;
}

}  // namespace

std::vector<std::filesystem::path> reproduce_figure(int figure,
                                                    const std::filesystem::path& out_dir,
                                                    std::uint64_t seed,
                                                    std::uint64_t samples) {
    if (figure < 2 || figure > 8) {
        throw std::invalid_argument("reproduce_figure: figure must be in 2..8");
    }
    std::filesystem::create_directories(out_dir);

    RunConfig base;  // canonical caption parameters
    base.seed = seed;
    base.samples = samples;

    std::vector<std::filesystem::path> written;
    nlohmann::json sidecar;
    sidecar["figure"] = figure;

    auto emit = [&](const std::string& stem, const SweepResult& r) {
        const auto path = out_dir / (stem + ".csv");
        write_file(r, path, Format::csv);
        written.push_back(path);
    };

    const std::vector<std::string> t2_cols{"t2_11", "t2_31", "t2_41", "t2_13",
                                           "t2_43", "t2_14", "t2_34"};
    switch (figure) {
        case 2: {
            for (auto [suffix, phi] : {std::pair{"a", kPi / 2.0}, std::pair{"b", -kPi / 2.0}}) {
                RunConfig cfg = base;
                cfg.params.phi = phi;
                emit(std::string("fig2") + suffix,
                     run_sweep(cfg, SweepSpec{Axis::omega, -4.0, 4.0, 401}, t2_cols));
                sidecar[std::string("panel_") + suffix] = params_json(cfg);
            }
            break;
        }
        case 3: {
            emit("fig3", run_sweep(base, SweepSpec{Axis::phi, -kPi, kPi, 201},
                                   {"ef_ac", "ef_ad", "ef_cd"}));
            sidecar["params"] = params_json(base);
            break;
        }
        case 4: {
            std::vector<std::pair<std::string, SweepResult>> curves;
            for (auto [suffix, gc] : {std::pair{"_gc_1p5", 1.5}, std::pair{"_gc_2p0", 2.0},
                                      std::pair{"_gc_2p5", 2.5}}) {
                RunConfig cfg = base;
                cfg.params.g_c = gc;
                cfg.params = model::sweet_spot(cfg.params, model::Branch::plus);
                curves.emplace_back(suffix, run_sweep(cfg, SweepSpec{Axis::g_a, 0.0, 3.0, 301},
                                                      {"ef_ac"}));
                sidecar[std::string("curve") + suffix] = params_json(cfg);
            }
            emit("fig4", merge_curves(curves));
            break;
        }
        case 5: {
            for (auto [suffix, phi] : {std::pair{"a", kPi / 2.0}, std::pair{"b", -kPi / 2.0}}) {
                RunConfig cfg = base;
                cfg.params.phi = phi;
                emit(std::string("fig5") + suffix,
                     run_sweep(cfg, SweepSpec{Axis::omega, -2.0, 2.0, 201},
                               {"ef_ac", "ef_ad"}));
                sidecar[std::string("panel_") + suffix] = params_json(cfg);
            }
            break;
        }
        case 6: {
            std::vector<std::pair<std::string, SweepResult>> curves;
            for (auto [suffix, gm] : {std::pair{"_q1e4", 1e-2}, std::pair{"_q1e5", 1e-3},
                                      std::pair{"_q1e6", 1e-4}}) {
                RunConfig cfg = base;
                cfg.params.gamma_m = gm;
                curves.emplace_back(suffix, run_sweep(cfg, SweepSpec{Axis::n_th, 0.0, 400.0, 101},
                                                      {"ef_ac"}));
                sidecar[std::string("curve") + suffix] = params_json(cfg);
            }
            emit("fig6", merge_curves(curves));
            break;
        }
        case 7: {
            emit("fig7", run_sweep(base, SweepSpec{Axis::phi, -kPi, kPi, 101}, {"witness"}));
            sidecar["params"] = params_json(base);
            break;
        }
        case 8: {
            std::vector<std::pair<std::string, SweepResult>> curves;
            for (auto [suffix, gm] : {std::pair{"_q1e4", 1e-2}, std::pair{"_q1e6", 1e-4}}) {
                RunConfig cfg = base;
                cfg.params.phi = 0.0;
                cfg.params.gamma_m = gm;
                curves.emplace_back(suffix, run_sweep(cfg, SweepSpec{Axis::n_th, 0.0, 400.0, 81},
                                                      {"witness"}));
                sidecar[std::string("curve") + suffix] = params_json(cfg);
            }
            emit("fig8", merge_curves(curves));
            break;
        }
        default: break;
    }

    const auto sidecar_path = out_dir / ("fig" + std::to_string(figure) + ".json");
    std::ofstream os(sidecar_path, std::ios::binary);
    os << sidecar.dump(2) << '\n';
    written.push_back(sidecar_path);
    return written;
}

}  // namespace oemi::sweep
