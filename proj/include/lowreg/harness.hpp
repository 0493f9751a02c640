#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "initial_data.hpp"
#include "schemes.hpp"

namespace lowreg {

struct reference_mismatch_error : numerical_abort {
    using numerical_abort::numerical_abort;
};

// ---- initial data selection ------------------------------------------------

struct data_spec {
    enum class kind { rough, plane_wave, two_mode, gaussian_like };
    kind which = kind::rough;
    rough_data_spec rough;
    cplx c1 = 1.0;
    int k1 = 1;
    cplx c2 = 0.5;
    int k2 = 2;
    double width = 0.25;

    field make(fourier_grid g) const {
        switch (which) {
            case kind::rough: return rough_field(g, rough);
            case kind::plane_wave: return plane_wave(g, c1, k1);
            case kind::two_mode: return two_mode(g, c1, k1, c2, k2);
            case kind::gaussian_like: return gaussian_like(g, width);
        }
        throw std::logic_error("data_spec: unhandled kind");
    }

    double sigma_column() const { return which == kind::rough ? rough.sigma : 0.0; }
    std::uint64_t seed_column() const { return which == kind::rough ? rough.seed : 0; }
};

// ---- configuration and report types ----------------------------------------

struct convergence_config {
    evolution_problem problem = nls_cubic();
    scheme_kind scheme = scheme_kind::lie;
    int n_modes = 256;
    double t_end = 1.0;
    std::vector<double> taus;  // strictly decreasing, T/tau integral for each
    data_spec data;
    int ref_factor = 32;            // reference step = taus.back() / ref_factor
    double filter_alpha = 1.0;
    bool dealias = false;
    double floor_threshold = 1e-10;  // discard errors below (roundoff)
    double ceiling_factor = 1.0;     // discard errors above ceiling_factor * ||u0||
    double hs_exponent = 1.0;        // Sobolev index of the secondary error column
    // The res2/strang reference pair must agree in L2 within 100x this, else
    // the study aborts; rough-data studies resolve larger errors, so their
    // default is looser.
    double target_tolerance = 1e-6;
};

// Dyadic ladder tau_max, tau_max/2, ... down to tau_min; t_end is snapped to
// an integer multiple of tau_max so every T/tau is an integer.
inline convergence_config make_convergence_config(scheme_kind scheme, int n_modes, double t_end,
                                                  double tau_max, double tau_min,
                                                  const data_spec& data, int ref_factor = 32) {
    if (tau_max <= 0 || tau_min <= 0 || tau_min > tau_max)
        throw std::invalid_argument("convergence config: need 0 < tau_min <= tau_max");
    convergence_config cfg;
    cfg.scheme = scheme;
    cfg.n_modes = n_modes;
    cfg.data = data;
    cfg.ref_factor = ref_factor;
    const auto steps_max = std::llround(t_end / tau_max);
    cfg.t_end = double(steps_max > 0 ? steps_max : 1) * tau_max;
    for (double tau = tau_max; tau >= tau_min * (1.0 - 1e-12); tau /= 2) cfg.taus.push_back(tau);
    if (data.which == data_spec::kind::rough) cfg.target_tolerance = 1e-4;
    return cfg;
}

struct tau_record {
    double tau;
    double l2_error;
    double hs_error;
    bool retained;
};

struct convergence_report {
    std::string scheme;
    std::string equation;
    int n_modes = 0;
    double sigma = 0.0;
    std::uint64_t seed = 0;
    double t_end = 0.0;
    std::vector<tau_record> records;  // descending tau
    bool has_slope = false;
    double slope = 0.0;
    double intercept = 0.0;
    std::string note;  // set when no slope could be fitted
};

struct diagnostics_record {
    int step;
    double t;
    double mass;
    double energy;
};

struct diagnostics_series {
    std::string scheme;
    std::vector<diagnostics_record> records;  // step 0 .. n_steps
};

// ---- slope fit ---------------------------------------------------------------

inline std::pair<double, double> fit_slope(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2) throw std::invalid_argument("fit_slope: need at least 2 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [tau, err] : points) {
        if (tau <= 0 || err <= 0)
            throw std::invalid_argument("fit_slope: tau and error must be positive");
        const double x = std::log(tau), y = std::log(err);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double n = double(points.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n;
    return {slope, intercept};
}

// ---- reference solution ------------------------------------------------------

inline int steps_for(double t_end, double tau) {
    const auto n = std::llround(t_end / tau);
    if (n < 1 || std::abs(double(n) * tau - t_end) > 1e-9 * t_end)
        throw std::invalid_argument("T/tau must be a positive integer (tau = " +
                                    std::to_string(tau) + ", T = " + std::to_string(t_end) + ")");
    return static_cast<int>(n);
}

// res2 at taus.back()/ref_factor on the same grid, cross-validated against a
// strang run at the same fine step. Temporal error only: the reference shares
// the spatial grid with the runs under test.
inline field reference_solution(const convergence_config& cfg, const field& u0) {
    if (cfg.ref_factor < 16)
        throw std::invalid_argument("reference_solution: ref_factor must be >= 16");
    if (cfg.taus.empty()) throw std::invalid_argument("reference_solution: empty tau list");
    const double tau_ref = cfg.taus.back() / cfg.ref_factor;
    const int n_ref = steps_for(cfg.t_end, tau_ref);
    stepper_config scfg;
    scfg.tau = tau_ref;
    scfg.dealias = cfg.dealias;
    field ref = evolve(scheme_kind::res2, cfg.problem, u0, scfg, n_ref);
    field check = evolve(scheme_kind::strang, cfg.problem, u0, scfg, n_ref);
    const double gap = l2_norm(ref - check);
    if (gap > 100.0 * cfg.target_tolerance) {
        std::ostringstream msg;
        msg << "reference cross-validation failed: |res2 - strang| = " << gap
            << " at tau_ref = " << tau_ref << " exceeds 100 * target_tolerance = "
            << 100.0 * cfg.target_tolerance;
        throw reference_mismatch_error(msg.str());
    }
    return ref;
}

inline field reference_solution(const convergence_config& cfg) {
    return reference_solution(cfg, cfg.data.make(fourier_grid(cfg.n_modes)));
}

// ---- convergence study -------------------------------------------------------

inline convergence_report run_convergence(const convergence_config& cfg,
                                          const field* precomputed_ref = nullptr) {
    if (cfg.taus.empty()) throw std::invalid_argument("run_convergence: empty tau list");
    for (size_t i = 1; i < cfg.taus.size(); ++i)
        if (cfg.taus[i] >= cfg.taus[i - 1])
            throw std::invalid_argument("run_convergence: taus must be strictly decreasing");

    const fourier_grid grid(cfg.n_modes);
    const field u0 = cfg.data.make(grid);
    const field ref = precomputed_ref ? *precomputed_ref : reference_solution(cfg, u0);
    const double ceiling = cfg.ceiling_factor * l2_norm(u0);

    convergence_report rep;
    rep.scheme = scheme_name(cfg.scheme);
    rep.equation = cfg.problem.name;
    rep.n_modes = cfg.n_modes;
    rep.sigma = cfg.data.sigma_column();
    rep.seed = cfg.data.seed_column();
    rep.t_end = cfg.t_end;

    for (double tau : cfg.taus) {
        stepper_config scfg;
        scfg.tau = tau;
        scfg.filter_alpha = cfg.filter_alpha;
        scfg.dealias = cfg.dealias;
        const field u = evolve(cfg.scheme, cfg.problem, u0, scfg, steps_for(cfg.t_end, tau));
        const field diff = u - ref;
        const double l2e = l2_norm(diff);
        const double hse = sobolev_norm(diff, cfg.hs_exponent);
        const bool retained = l2e >= cfg.floor_threshold && l2e <= ceiling;
        rep.records.push_back({tau, l2e, hse, retained});
    }

    std::vector<std::pair<double, double>> pts;
    for (const auto& r : rep.records)
        if (r.retained) pts.emplace_back(r.tau, r.l2_error);
    if (pts.size() >= 3) {
        auto [slope, intercept] = fit_slope(pts);
        rep.has_slope = true;
        rep.slope = slope;
        rep.intercept = intercept;
    } else {
        rep.note = "insufficient retained points for a slope (" + std::to_string(pts.size()) + ")";
    }
    return rep;
}

// Re-run one rough-data study across seeds; reports come back in seed order.
inline std::vector<convergence_report> run_convergence_seeds(convergence_config cfg,
                                                             const std::vector<std::uint64_t>& seeds) {
    if (cfg.data.which != data_spec::kind::rough)
        throw std::invalid_argument("run_convergence_seeds: data must be rough");
    std::vector<convergence_report> out;
    for (auto s : seeds) {
        cfg.data.rough.seed = s;
        out.push_back(run_convergence(cfg));
    }
    return out;
}

inline double median_slope(const std::vector<convergence_report>& reports) {
    std::vector<double> s;
    for (const auto& r : reports)
        if (r.has_slope) s.push_back(r.slope);
    if (s.empty()) throw std::invalid_argument("median_slope: no fitted slopes");
    std::sort(s.begin(), s.end());
    const size_t n = s.size();
    return n % 2 ? s[n / 2] : 0.5 * (s[n / 2 - 1] + s[n / 2]);
}

// ---- diagnostics ---------------------------------------------------------------

inline double nls_energy(const field& f) {
    double kinetic = 0.0;
    for (int i = 0; i < f.grid.n_modes; ++i) {
        const double k = f.grid.wavenumber(i);
        kinetic += k * k * std::norm(f.coeff[i]);
    }
    auto ph = to_physical(f);
    double quartic = 0.0;
    for (const auto& v : ph) quartic += std::norm(v) * std::norm(v);
    return kinetic + 0.5 * quartic / double(ph.size());
}

inline diagnostics_series run_diagnostics(scheme_kind kind, const field& u0, double tau,
                                          int n_steps, double alpha = 1.0, bool dealias = false) {
    diagnostics_series series;
    series.scheme = scheme_name(kind);
    auto mass = [](const field& f) {
        const double n = l2_norm(f);
        return n * n;
    };
    series.records.push_back({0, 0.0, mass(u0), nls_energy(u0)});
    stepper_config cfg;
    cfg.tau = tau;
    cfg.filter_alpha = alpha;
    cfg.dealias = dealias;
    evolve(kind, nls_cubic(), u0, cfg, n_steps, [&](int step, const field& u) {
        series.records.push_back({step, step * tau, mass(u), nls_energy(u)});
    });
    return series;
}

// ---- CSV ------------------------------------------------------------------------

namespace detail {

inline std::string fmt_double(double x) {
    if (x == 0.0) x = 0.0;  // canonicalize -0 so output is platform-stable
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace detail

inline void emit_csv(const std::vector<convergence_report>& reports, std::ostream& os) {
    os << "scheme,equation,n_modes,sigma,seed,T,tau,l2_error,hs_error,retained\n";
    for (const auto& rep : reports)
        for (const auto& r : rep.records)
            os << rep.scheme << ',' << rep.equation << ',' << rep.n_modes << ','
               << detail::fmt_double(rep.sigma) << ',' << rep.seed << ','
               << detail::fmt_double(rep.t_end) << ',' << detail::fmt_double(r.tau) << ','
               << detail::fmt_double(r.l2_error) << ',' << detail::fmt_double(r.hs_error) << ','
               << (r.retained ? 1 : 0) << '\n';
}

inline void emit_csv(const convergence_report& report, std::ostream& os) {
    emit_csv(std::vector<convergence_report>{report}, os);
}

inline void emit_csv(const diagnostics_series& series, std::ostream& os) {
    os << "scheme,step,t,mass,energy\n";
    for (const auto& r : series.records)
        os << series.scheme << ',' << r.step << ',' << detail::fmt_double(r.t) << ','
           << detail::fmt_double(r.mass) << ',' << detail::fmt_double(r.energy) << '\n';
}

template <class T>
void write_csv(const T& payload, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    emit_csv(payload, os);
    os.flush();
    if (!os) throw std::runtime_error("write failed: " + path);
}

// Minimal parser for the convergence schema; used for round-trip checks.
struct csv_row {
    std::string scheme, equation;
    int n_modes;
    double sigma;
    std::uint64_t seed;
    double t_end, tau, l2_error, hs_error;
    bool retained;
};

inline std::vector<csv_row> parse_convergence_csv(std::istream& is) {
    std::vector<csv_row> rows;
    std::string line;
    if (!std::getline(is, line)) return rows;
    if (line != "scheme,equation,n_modes,sigma,seed,T,tau,l2_error,hs_error,retained")
        throw std::runtime_error("parse_convergence_csv: unexpected header: " + line);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string f[10];
        for (int i = 0; i < 10; ++i)
            if (!std::getline(ss, f[i], i == 9 ? '\n' : ','))
                throw std::runtime_error("parse_convergence_csv: short row: " + line);
        csv_row r;
        r.scheme = f[0];
        r.equation = f[1];
        r.n_modes = std::stoi(f[2]);
        r.sigma = std::stod(f[3]);
        r.seed = std::stoull(f[4]);
        r.t_end = std::stod(f[5]);
        r.tau = std::stod(f[6]);
        r.l2_error = std::stod(f[7]);
        r.hs_error = std::stod(f[8]);
        r.retained = f[9] == "1";
        rows.push_back(r);
    }
    return rows;
}

}  // namespace lowreg
