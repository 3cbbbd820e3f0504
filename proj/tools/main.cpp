// hbtk-cli: config-driven front end over the toolkit.  Subcommands map to
// the library modules; every output is deterministic (fixed seeds, sorted
// rows, %.12g formatting, LF endings).

#include "checks.hpp"

#include "hbtk/gaussian.hpp"
#include "hbtk/oracle.hpp"
#include "hbtk/phase.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

hbtk::cplx parse_cplx(const json& j, const std::string& where) {
    if (j.is_number()) return hbtk::cplx(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return hbtk::cplx(j[0].get<double>(), j[1].get<double>());
    }
    throw ConfigError(where + ": expected a number or [re, im]");
}

double need_num(const json& m, const std::string& key, const std::string& where) {
    if (!m.contains(key) || !m[key].is_number()) {
        throw ConfigError(where + "/" + key + ": missing or not a number");
    }
    return m[key].get<double>();
}

hbtk::cplx need_cplx(const json& m, const std::string& key, const std::string& where) {
    if (!m.contains(key)) throw ConfigError(where + "/" + key + ": missing");
    return parse_cplx(m[key], where + "/" + key);
}

hbtk::cplx opt_cplx(const json& m, const std::string& key, const std::string& where) {
    if (!m.contains(key)) return hbtk::cplx(0.0, 0.0);
    return parse_cplx(m[key], where + "/" + key);
}

hbtk::RabiParams parse_rabi(const json& m, const std::string& where) {
    hbtk::RabiParams p;
    p.omega0 = need_num(m, "omega0", where);
    p.delta = need_num(m, "delta", where);
    p.eta = need_num(m, "eta", where);
    return p;
}

hbtk::QuadraticHamiltonian make_model(const json& m) {
    if (!m.is_object() || !m.contains("type") || !m["type"].is_string()) {
        throw ConfigError("/model/type: missing or not a string");
    }
    const std::string type = m["type"].get<std::string>();
    if (type == "single_mode") {
        return hbtk::single_mode(need_num(m, "omega", "/model"), need_cplx(m, "chi", "/model"));
    }
    if (type == "two_mode") {
        return hbtk::two_mode(need_num(m, "omega1", "/model"), need_num(m, "omega2", "/model"),
                              opt_cplx(m, "chi1", "/model"), opt_cplx(m, "chi2", "/model"),
                              opt_cplx(m, "lambda", "/model"), opt_cplx(m, "g", "/model"));
    }
    if (type == "rabi") {
        return hbtk::from_rabi(parse_rabi(m, "/model"));
    }
    if (type == "two_rabi") {
        if (!m.contains("sub1") || !m.contains("sub2")) {
            throw ConfigError("/model: two_rabi needs sub1 and sub2 objects");
        }
        return hbtk::from_two_rabi(parse_rabi(m["sub1"], "/model/sub1"),
                                   parse_rabi(m["sub2"], "/model/sub2"),
                                   need_cplx(m, "lambda", "/model"));
    }
    if (type == "three_ring") {
        hbtk::ThreeRingParams p;
        p.omega = need_num(m, "omega", "/model");
        p.delta = need_num(m, "delta", "/model");
        p.g = need_num(m, "g", "/model");
        p.j_hop = need_num(m, "j", "/model");
        p.theta = need_num(m, "theta", "/model");
        return hbtk::from_three_ring(p);
    }
    if (type == "quadratic") {
        if (!m.contains("omega") || !m["omega"].is_array()) {
            throw ConfigError("/model/omega: expected an array");
        }
        const int n = static_cast<int>(m["omega"].size());
        auto h = hbtk::QuadraticHamiltonian::zero(n);
        for (int i = 0; i < n; ++i) h.omega[i] = m["omega"][static_cast<std::size_t>(i)].get<double>();
        if (m.contains("chi")) {
            for (int i = 0; i < n; ++i) {
                h.chi[i] = parse_cplx(m["chi"][static_cast<std::size_t>(i)], "/model/chi");
            }
        }
        auto fill = [&](const char* key, Eigen::MatrixXcd& dst) {
            if (!m.contains(key)) return;
            const auto& rows = m[key];
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    dst(i, j) = parse_cplx(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                                           std::string("/model/") + key);
                }
            }
        };
        fill("lam", h.lam);
        fill("g", h.g);
        return h;
    }
    throw ConfigError("/model/type: unknown model type \"" + type + "\"");
}

// Sweepable scalar targets per model type.
const std::vector<std::string>& sweep_targets(const std::string& type) {
    static const std::map<std::string, std::vector<std::string>> table = {
        {"single_mode", {"omega", "chi"}},
        {"two_mode", {"omega1", "omega2", "chi1", "chi2", "lambda", "g"}},
        {"rabi", {"omega0", "delta", "eta"}},
        {"two_rabi", {"lambda"}},
        {"three_ring", {"omega", "delta", "g", "j", "theta"}},
    };
    const auto it = table.find(type);
    if (it == table.end()) {
        throw ConfigError("/path/target: model type \"" + type + "\" is not sweepable");
    }
    return it->second;
}

hbtk::ParamPath make_path(const json& cfg) {
    if (!cfg.contains("path") || !cfg["path"].is_object()) {
        throw ConfigError("/path: missing (required for this task)");
    }
    const json& p = cfg["path"];
    const json model = cfg.contains("model") ? cfg["model"] : json::object();
    if (!p.contains("target") || !p["target"].is_string()) {
        throw ConfigError("/path/target: missing or not a string");
    }
    const std::string target = p["target"].get<std::string>();
    const std::string type = model.value("type", std::string());
    const auto& allowed = sweep_targets(type);
    if (std::find(allowed.begin(), allowed.end(), target) == allowed.end()) {
        throw ConfigError("/path/target: target \"" + target + "\" not found on model type \"" +
                          type + "\"");
    }
    hbtk::ParamPath path;
    path.name = target;
    path.lo = need_num(p, "lo", "/path");
    path.hi = need_num(p, "hi", "/path");
    path.samples = p.value("samples", 201);
    path.log_scale = p.value("log", false);
    if (!(path.lo < path.hi) || path.samples < 2) {
        throw ConfigError("/path: need lo < hi and samples >= 2");
    }
    path.model_at = [model, target](double v) {
        json m = model;
        m[target] = v;
        return make_model(m);
    };
    (void)path.model_at(path.lo);  // surface model errors as config errors
    return path;
}

hbtk::SolverOptions make_opts(const json& cfg) {
    hbtk::SolverOptions o;
    if (cfg.contains("solver")) {
        const json& s = cfg["solver"];
        o.tol_im = s.value("tol_im", o.tol_im);
        o.max_sweeps = s.value("max_sweeps", o.max_sweeps);
        o.balance = s.value("balance", o.balance);
        o.seed = s.value("seed", o.seed);
    }
    return o;
}

std::ofstream open_out(const fs::path& dir, const std::string& name) {
    fs::create_directories(dir);
    std::ofstream os(dir / name, std::ios::binary);  // LF endings everywhere
    if (!os) throw std::runtime_error("cannot open output file " + (dir / name).string());
    return os;
}

const char* kind_name(hbtk::CriticalKind k) {
    switch (k) {
        case hbtk::CriticalKind::EP: return "EP";
        case hbtk::CriticalKind::DP: return "DP";
        default: return "EP_DP";
    }
}

int run_spectrum(const json& cfg, const hbtk::SolverOptions& opts, const fs::path& out) {
    const auto h = make_model(cfg.at("model"));
    auto eigs = hbtk::eigenvalues(hbtk::build(h), opts);
    std::sort(eigs.begin(), eigs.end(), [](const hbtk::cplx& a, const hbtk::cplx& b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
    auto os = open_out(out, "spectrum.csv");
    os << "re,im\n";
    for (const auto& e : eigs) os << num(e.real()) << "," << num(e.imag()) << "\n";
    return 0;
}

int run_scan(const json& cfg, const hbtk::SolverOptions& opts, const fs::path& out,
             int n_threads) {
    const auto path = make_path(cfg);
    const auto points = hbtk::scan(path, opts, n_threads);
    auto os = open_out(out, "scan.csv");
    os << "param,label,max_abs_im,min_abs_e,det\n";
    for (const auto& pt : points) {
        const char* label = pt.failed ? "FAILED"
                            : (pt.label == hbtk::PhaseLabel::NP ? "NP" : "SP");
        os << num(pt.param) << "," << label << "," << num(pt.max_abs_im) << ","
           << num(pt.min_abs_e) << "," << num(pt.det) << "\n";
    }
    return 0;
}

int run_critical(const json& cfg, const hbtk::SolverOptions& opts, const fs::path& out) {
    const auto path = make_path(cfg);
    const double tol = cfg.value("tol", 0.0);
    const auto seq = hbtk::phase_sequence(path, tol, opts);
    json doc;
    doc["param"] = path.name;
    doc["intervals"] = json::array();
    for (const auto& iv : seq.intervals) {
        doc["intervals"].push_back({{"lo", iv.lo},
                                    {"hi", iv.hi},
                                    {"label", iv.label == hbtk::PhaseLabel::NP ? "NP" : "SP"}});
    }
    doc["critical_points"] = json::array();
    for (const auto& c : seq.critical_points) {
        doc["critical_points"].push_back({{"kind", kind_name(c.kind)},
                                          {"param", c.param},
                                          {"bracket", {c.bracket_lo, c.bracket_hi}},
                                          {"indicator", {c.indicator_lo, c.indicator_hi}},
                                          {"sign_change", c.sign_change}});
    }
    doc["notes"] = seq.notes;
    auto os = open_out(out, "critical.json");
    os << doc.dump(2) << "\n";
    return 0;
}

int run_qfi(const json& cfg, const fs::path& out) {
    if (!cfg.contains("qfi") || !cfg["qfi"].is_object()) {
        throw ConfigError("/qfi: missing (required for the qfi task)");
    }
    const json& q = cfg["qfi"];
    const std::string phi = q.value("phi", std::string());
    const double at = need_num(q, "at", "/qfi");
    const double step = q.value("step", 1e-5);
    const int n_max = q.value("n_max", 60);

    const json& m = cfg.at("model");
    const std::string type = m.value("type", std::string());
    hbtk::QfiResult r;
    if (type == "single_mode") {
        const double omega = need_num(m, "omega", "/model");
        const hbtk::cplx chi = need_cplx(m, "chi", "/model");
        const auto fam = hbtk::single_mode_family(omega, std::abs(chi), std::arg(chi), phi);
        r = hbtk::qfi(fam, phi, at, step, n_max);
    } else if (type == "three_ring") {
        if (phi != "omega") {
            throw ConfigError("/qfi/phi: only \"omega\" is supported for three_ring");
        }
        hbtk::ThreeRingParams p;
        p.omega = need_num(m, "omega", "/model");
        p.delta = need_num(m, "delta", "/model");
        p.g = need_num(m, "g", "/model");
        p.j_hop = need_num(m, "j", "/model");
        p.theta = need_num(m, "theta", "/model");
        r = hbtk::qfi(hbtk::ring_family(p), phi, at, step, n_max);
    } else {
        throw ConfigError("/model/type: qfi supports single_mode and three_ring only");
    }
    json doc{{"phi", r.phi},      {"at", r.at},       {"F", r.value},
             {"step", r.step},    {"n_max", r.n_max}, {"convergence", r.convergence}};
    auto os = open_out(out, "qfi.json");
    os << doc.dump(2) << "\n";
    return 0;
}

int run_check(const fs::path& out) {
    const json doc = hbtk::tools::run_checks();
    auto os = open_out(out, "check.json");
    os << doc.dump(2) << "\n";
    std::cout << (doc["pass"].get<bool>() ? "PASS" : "FAIL") << "\n";
    return doc["pass"].get<bool>() ? 0 : 2;
}

int run_dump(const json& cfg, const fs::path& out) {
    const auto h = make_model(cfg.at("model"));
    const auto m = hbtk::build(h);
    auto os = open_out(out, "matrix.csv");
    hbtk::dump_csv(m, os);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hopfield-Bogoliubov toolkit CLI"};
    app.require_subcommand(1);

    std::string config_file;
    std::string out_dir = ".";
    int parallel = 1;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol_im;
    std::optional<int> max_sweeps;
    bool no_balance = false;

    for (const char* name :
         {"spectrum", "phase-scan", "critical", "qfi", "check", "dump-matrix"}) {
        auto* sub = app.add_subcommand(name);
        if (std::string(name) != "check") {
            sub->add_option("--config", config_file, "JSON config file")->required();
        } else {
            sub->add_option("--config", config_file, "JSON config file");
        }
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--parallel", parallel, "worker threads for sweeps");
        sub->add_option("--seed", seed, "solver RNG seed");
        sub->add_option("--tol-im", tol_im, "imaginary-part classification tolerance");
        sub->add_option("--max-sweeps", max_sweeps, "QR iteration cap per dimension");
        sub->add_flag("--no-balance", no_balance, "disable pre-QR balancing");
    }

    CLI11_PARSE(app, argc, argv);
    const std::string task = app.get_subcommands().front()->get_name();

    try {
        json cfg = json::object();
        if (!config_file.empty()) {
            std::ifstream is(config_file);
            if (!is) {
                std::cerr << "error: cannot read config file " << config_file << "\n";
                return 1;
            }
            try {
                cfg = json::parse(is);
            } catch (const json::parse_error& e) {
                std::cerr << "error: malformed JSON: " << e.what() << "\n";
                return 1;
            }
        }
        if (cfg.contains("task") && cfg["task"].is_string() &&
            cfg["task"].get<std::string>() != task) {
            std::cerr << "error: /task says \"" << cfg["task"].get<std::string>()
                      << "\" but the subcommand is \"" << task << "\"\n";
            return 1;
        }
        hbtk::SolverOptions opts = make_opts(cfg);
        if (seed) opts.seed = *seed;
        if (tol_im) opts.tol_im = *tol_im;
        if (max_sweeps) opts.max_sweeps = *max_sweeps;
        if (no_balance) opts.balance = false;

        const fs::path out(out_dir);
        if (task == "spectrum") return run_spectrum(cfg, opts, out);
        if (task == "phase-scan") return run_scan(cfg, opts, out, parallel);
        if (task == "critical") return run_critical(cfg, opts, out);
        if (task == "qfi") return run_qfi(cfg, out);
        if (task == "check") return run_check(out);
        return run_dump(cfg, out);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const hbtk::AtExceptionalPointError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const hbtk::TruncationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
