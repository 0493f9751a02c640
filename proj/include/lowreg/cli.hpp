#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "harness.hpp"
#include "oracle.hpp"

namespace lowreg::cli {

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- flag table -----------------------------------------------------------
// One row per flag; help text is generated from this so the listing and the
// parser cannot drift apart.

struct flag_def {
    const char* name;    // without leading dashes
    const char* subs;    // subcommands it applies to, comma separated, "*" = all
    bool boolean;        // true: value optional, presence means "true"
    const char* default_value;
    const char* help;
};

inline const std::vector<flag_def>& flag_table() {
    static const std::vector<flag_def> t = {
        {"equation", "run,convergence,diagnose", false, "nls_cubic",
         "problem preset: nls_cubic | heat_cubic | ginzburg_landau"},
        {"scheme", "run,convergence,diagnose", false, "lie",
         "lie | strang | exp1 | res1 | res2 | filtered_lie | general_res1"},
        {"n-modes", "*", false, "256", "number of Fourier modes (even, >= 4)"},
        {"tau", "run,diagnose", false, "0.0625", "time step"},
        {"t-end", "run,convergence", false, "1", "final time (snapped to a step multiple)"},
        {"data", "*", false, "rough:1:0",
         "rough:sigma:seed | plane_wave:c:k | two_mode:c1:k1:c2:k2 | gaussian_like:width"},
        {"dealias", "run,convergence,diagnose", true, "off", "filter the top third of modes in products"},
        {"alpha", "run,convergence,diagnose", false, "1", "filtered_lie threshold exponent"},
        {"out", "*", false, "", "output CSV path (default: stdout)"},
        {"config", "*", false, "", "key = value file; command-line flags override it"},
        {"tau-max", "convergence,oscint", false, "0.0625", "largest step of the dyadic ladder"},
        {"tau-min", "convergence,oscint", false, "0.0009765625", "smallest step of the dyadic ladder"},
        {"seeds", "convergence", false, "1", "number of consecutive seeds (rough data only)"},
        {"ref-factor", "convergence", false, "32", "reference step = tau-min / ref-factor"},
        {"steps", "diagnose", false, "1000", "number of steps to record"},
        {"panels", "oscint", false, "64", "quadrature panels per integral"},
    };
    return t;
}

inline bool flag_applies(const flag_def& f, const std::string& sub) {
    const std::string subs = f.subs;
    return subs == "*" || ("," + subs + ",").find("," + sub + ",") != std::string::npos;
}

inline const flag_def* find_flag(const std::string& name, const std::string& sub) {
    for (const auto& f : flag_table())
        if (name == f.name && flag_applies(f, sub)) return &f;
    return nullptr;
}

// ---- parsing helpers --------------------------------------------------------

inline std::string normalize_key(std::string k) {
    for (auto& c : k)
        if (c == '_') c = '-';
    return k;
}

inline double parse_double(const std::string& v, const std::string& what) {
    try {
        size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw usage_error("--" + what + ": not a number: '" + v + "'");
    }
}

inline int parse_int(const std::string& v, const std::string& what) {
    try {
        size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return static_cast<int>(x);
    } catch (const std::exception&) {
        throw usage_error("--" + what + ": not an integer: '" + v + "'");
    }
}

inline bool parse_bool(const std::string& v, const std::string& what) {
    if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
    if (v == "0" || v == "false" || v == "off" || v == "no") return false;
    throw usage_error("--" + what + ": not a boolean: '" + v + "'");
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream ss(s);
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

inline data_spec parse_data_spec(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.empty()) throw usage_error("--data: empty spec");
    data_spec d;
    const std::string& kind = parts[0];
    const auto arg = [&](size_t i) -> const std::string& {
        if (i >= parts.size()) throw usage_error("--data: '" + text + "' is missing fields");
        return parts[i];
    };
    if (kind == "rough") {
        d.which = data_spec::kind::rough;
        if (parts.size() > 1) d.rough.sigma = parse_double(arg(1), "data");
        if (parts.size() > 2) d.rough.seed = std::stoull(arg(2));
        if (parts.size() > 3) throw usage_error("--data: rough takes at most sigma:seed");
    } else if (kind == "plane_wave") {
        d.which = data_spec::kind::plane_wave;
        if (parts.size() != 3) throw usage_error("--data: plane_wave:c:k needs both fields");
        d.c1 = parse_double(arg(1), "data");
        d.k1 = parse_int(arg(2), "data");
    } else if (kind == "two_mode") {
        d.which = data_spec::kind::two_mode;
        if (parts.size() != 5) throw usage_error("--data: two_mode:c1:k1:c2:k2 needs four fields");
        d.c1 = parse_double(arg(1), "data");
        d.k1 = parse_int(arg(2), "data");
        d.c2 = parse_double(arg(3), "data");
        d.k2 = parse_int(arg(4), "data");
    } else if (kind == "gaussian_like") {
        d.which = data_spec::kind::gaussian_like;
        if (parts.size() != 2) throw usage_error("--data: gaussian_like:width needs one field");
        d.width = parse_double(arg(1), "data");
    } else {
        throw usage_error("--data: unknown kind '" + kind +
                          "' (valid: rough, plane_wave, two_mode, gaussian_like)");
    }
    return d;
}

// key = value lines, '#' starts a comment, blank lines ignored
inline std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw usage_error("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto strip = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            if (a == std::string::npos) return std::string();
            const auto b = s.find_last_not_of(" \t\r");
            return s.substr(a, b - a + 1);
        };
        if (strip(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw usage_error(path + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = normalize_key(strip(line.substr(0, eq)));
        const std::string val = strip(line.substr(eq + 1));
        if (key.empty())
            throw usage_error(path + ":" + std::to_string(lineno) + ": empty key");
        kv[key] = val;
    }
    return kv;
}

// ---- help -------------------------------------------------------------------

inline void print_subcommand_help(std::ostream& os, const std::string& sub) {
    os << "usage: lowreg " << sub << " [flags]\n\nflags (with defaults):\n";
    for (const auto& f : flag_table()) {
        if (!flag_applies(f, sub)) continue;
        std::string head = "  --" + std::string(f.name);
        if (!f.boolean) head += " VALUE";
        os << head;
        for (size_t i = head.size(); i < 22; ++i) os << ' ';
        os << f.help << " [default: " << (f.default_value[0] ? f.default_value : "stdout/none")
           << "]\n";
    }
}

inline void print_global_help(std::ostream& os) {
    os << "usage: lowreg <subcommand> [flags]\n\n"
          "subcommands:\n"
          "  run          single trajectory; final field as CSV (k,re,im)\n"
          "  convergence  dyadic tau sweep against a fine reference; slope on stderr\n"
          "  diagnose     mass/energy series per step; symmetry defect on stderr\n"
          "  oscint       oscillatory-integral oracle comparison over a t ladder\n\n"
          "run 'lowreg <subcommand> --help' for that subcommand's flags and defaults.\n";
}

// ---- option assembly ----------------------------------------------------------

struct options {
    std::string subcommand;
    std::map<std::string, std::string> values;  // flag name -> value, defaults pre-filled

    const std::string& str(const std::string& key) const { return values.at(key); }
    double num(const std::string& key) const { return parse_double(values.at(key), key); }
    int integer(const std::string& key) const { return parse_int(values.at(key), key); }
    bool flag(const std::string& key) const { return parse_bool(values.at(key), key); }
};

inline options parse_argv(const std::vector<std::string>& args) {
    if (args.empty()) throw usage_error("missing subcommand (run 'lowreg --help')");
    if (args[0] == "--help" || args[0] == "-h") {
        print_global_help(std::cout);
        std::exit(0);
    }
    const std::string sub = args[0];
    if (sub != "run" && sub != "convergence" && sub != "diagnose" && sub != "oscint")
        throw usage_error("unknown subcommand '" + sub +
                          "' (valid: run, convergence, diagnose, oscint)");

    std::map<std::string, std::string> cmdline;
    for (size_t i = 1; i < args.size(); ++i) {
        std::string a = args[i];
        if (a == "--help" || a == "-h") {
            print_subcommand_help(std::cout, sub);
            std::exit(0);
        }
        if (a.rfind("--", 0) != 0) throw usage_error("expected a --flag, got '" + a + "'");
        a.erase(0, 2);
        std::string value;
        bool has_value = false;
        if (const auto eq = a.find('='); eq != std::string::npos) {
            value = a.substr(eq + 1);
            a.erase(eq);
            has_value = true;
        }
        const flag_def* def = find_flag(normalize_key(a), sub);
        if (!def)
            throw usage_error("unknown flag '--" + a + "' for subcommand '" + sub + "'");
        if (!has_value) {
            if (def->boolean) {
                value = "on";
            } else {
                if (i + 1 >= args.size()) throw usage_error("--" + a + " needs a value");
                value = args[++i];
            }
        }
        cmdline[def->name] = value;
    }

    options opt;
    opt.subcommand = sub;
    for (const auto& f : flag_table())
        if (flag_applies(f, sub)) opt.values[f.name] = f.default_value;

    if (const auto it = cmdline.find("config"); it != cmdline.end()) {
        for (const auto& [key, val] : parse_config_file(it->second)) {
            if (!find_flag(key, sub))
                throw usage_error("config file: unknown key '" + key + "' for subcommand '" +
                                  sub + "'");
            opt.values[key] = val;
        }
    }
    for (const auto& [key, val] : cmdline) opt.values[key] = val;
    return opt;
}

// ---- subcommand bodies -----------------------------------------------------------

inline void with_output(const options& opt, const std::function<void(std::ostream&)>& fn) {
    const std::string path = opt.str("out");
    if (path.empty()) {
        fn(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    fn(os);
    os.flush();
    if (!os) throw std::runtime_error("write failed: " + path);
}

inline int cmd_run(const options& opt) {
    const auto problem = make_problem(opt.str("equation"));
    const auto kind = parse_scheme(opt.str("scheme"));
    const fourier_grid grid(opt.integer("n-modes"));
    const field u0 = parse_data_spec(opt.str("data")).make(grid);
    stepper_config cfg;
    cfg.tau = opt.num("tau");
    cfg.filter_alpha = opt.num("alpha");
    cfg.dealias = opt.flag("dealias");
    const field u = evolve(kind, problem, u0, cfg, steps_for(opt.num("t-end"), cfg.tau));
    with_output(opt, [&](std::ostream& os) {
        os << "k,re,im\n";
        for (int k = -grid.n_modes / 2; k < grid.n_modes / 2; ++k) {
            const cplx c = u.at_mode(k);
            os << k << ',' << detail::fmt_double(c.real()) << ','
               << detail::fmt_double(c.imag()) << '\n';
        }
    });
    return 0;
}

inline int cmd_convergence(const options& opt) {
    const data_spec data = parse_data_spec(opt.str("data"));
    auto cfg = make_convergence_config(parse_scheme(opt.str("scheme")), opt.integer("n-modes"),
                                       opt.num("t-end"), opt.num("tau-max"), opt.num("tau-min"),
                                       data, opt.integer("ref-factor"));
    cfg.problem = make_problem(opt.str("equation"));
    cfg.filter_alpha = opt.num("alpha");
    cfg.dealias = opt.flag("dealias");

    const int n_seeds = opt.integer("seeds");
    std::vector<convergence_report> reports;
    if (n_seeds > 1) {
        if (data.which != data_spec::kind::rough)
            throw usage_error("--seeds > 1 requires rough data");
        std::vector<std::uint64_t> seeds;
        for (int i = 0; i < n_seeds; ++i) seeds.push_back(data.rough.seed + std::uint64_t(i));
        reports = run_convergence_seeds(cfg, seeds);
    } else {
        reports.push_back(run_convergence(cfg));
    }
    with_output(opt, [&](std::ostream& os) { emit_csv(reports, os); });
    for (const auto& r : reports) {
        if (r.has_slope)
            std::cerr << "# " << r.scheme << " seed " << r.seed << ": slope "
                      << detail::fmt_double(r.slope) << "\n";
        else
            std::cerr << "# " << r.scheme << " seed " << r.seed << ": " << r.note << "\n";
    }
    if (reports.size() > 1)
        std::cerr << "# median slope: " << detail::fmt_double(median_slope(reports)) << "\n";
    return 0;
}

inline int cmd_diagnose(const options& opt) {
    const auto kind = parse_scheme(opt.str("scheme"));
    if (opt.str("equation") != "nls_cubic")
        throw usage_error("diagnose tracks the invariants of nls_cubic only");
    const fourier_grid grid(opt.integer("n-modes"));
    const field u0 = parse_data_spec(opt.str("data")).make(grid);
    const double tau = opt.num("tau");
    const double alpha = opt.num("alpha");
    const auto series =
        run_diagnostics(kind, u0, tau, opt.integer("steps"), alpha, opt.flag("dealias"));
    with_output(opt, [&](std::ostream& os) { emit_csv(series, os); });
    std::cerr << "# symmetry defect at tau = " << detail::fmt_double(tau) << ": "
              << detail::fmt_double(symmetry_defect(kind, u0, tau, alpha)) << "\n";
    return 0;
}

inline int cmd_oscint(const options& opt) {
    const fourier_grid grid(opt.integer("n-modes"));
    const field u0 = parse_data_spec(opt.str("data")).make(grid);
    const double t_max = opt.num("tau-max");
    const double t_min = opt.num("tau-min");
    const int panels = opt.integer("panels");
    if (t_max <= 0 || t_min <= 0 || t_min > t_max)
        throw usage_error("oscint: need 0 < tau-min <= tau-max");
    with_output(opt, [&](std::ostream& os) {
        os << "t,order1_error,order2_error\n";
        for (double t = t_max; t >= t_min * (1.0 - 1e-12); t /= 2) {
            const field quad = osc_integral_quadrature(t, u0, panels);
            const double e1 = l2_norm(quad - resonance_integral_order1(t, u0));
            const double e2 = l2_norm(quad - resonance_integral_order2(t, u0));
            os << detail::fmt_double(t) << ',' << detail::fmt_double(e1) << ','
               << detail::fmt_double(e2) << '\n';
        }
    });
    return 0;
}

inline int dispatch(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        const options opt = parse_argv(args);
        if (opt.subcommand == "run") return cmd_run(opt);
        if (opt.subcommand == "convergence") return cmd_convergence(opt);
        if (opt.subcommand == "diagnose") return cmd_diagnose(opt);
        return cmd_oscint(opt);
    } catch (const numerical_abort& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace lowreg::cli
