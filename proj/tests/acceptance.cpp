// Acceptance gate for the library: one pass/fail line per criterion.
//
// PURPOSE: end-to-end checks at desk scale, run as a single sequential
// binary. Each criterion states its tolerance inline; a FAIL prints the
// measured value so the log is diagnosable without a debugger.
//
//   1  smooth-data global orders of all five core schemes
//   2  low-regularity rate of the filtered splitting (median over seeds)
//   3  resonance advantage over classical splitting on rough data
//   4  oscillatory-integral oracle orders (quadrature vs order 1/2 forms)
//   5  mass conservation (splitting) and filtered mass monotonicity
//   6  structural identities (general scheme collapse, plane-wave exactness)
//   7  time-symmetry: strang defect at roundoff, res2 defect rate
//   8  brute-force triple-sum equivalence of the oscillation operator
//
// Exit code: number of failed criteria (0 = all pass).

#include <lowreg/harness.hpp>
#include <lowreg/oracle.hpp>

#include <chrono>
#include <cstdio>
#include <vector>

using namespace lowreg;

namespace {

int failures = 0;

void record(const char* name, bool ok, const std::string& detail) {
    std::printf("[%s] %s: %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

data_spec rough_data(double sigma, std::uint64_t seed) {
    data_spec d;
    d.which = data_spec::kind::rough;
    d.rough.sigma = sigma;
    d.rough.seed = seed;
    return d;
}

field make_rough(int n, double sigma, std::uint64_t seed, bool normalize = true) {
    rough_data_spec spec;
    spec.sigma = sigma;
    spec.seed = seed;
    spec.normalize = normalize;
    return rough_field(fourier_grid(n), spec);
}

// ---- criterion 1: smooth-data global orders --------------------------------

void smooth_orders() {
    const auto t0 = std::chrono::steady_clock::now();
    data_spec data;
    data.which = data_spec::kind::two_mode;
    data.c1 = 0.5;
    data.k1 = 1;
    data.c2 = 0.25;
    data.k2 = 2;

    auto base = make_convergence_config(scheme_kind::lie, 128, 1.0, std::pow(2.0, -4),
                                        std::pow(2.0, -10), data, 32);
    const field u0 = base.data.make(fourier_grid(base.n_modes));
    const field ref = reference_solution(base, u0);

    struct target {
        scheme_kind kind;
        double order;
        double tol;
    };
    const std::vector<target> targets = {{scheme_kind::lie, 1.0, 0.1},
                                         {scheme_kind::strang, 2.0, 0.1},
                                         {scheme_kind::exp1, 1.0, 0.1},
                                         {scheme_kind::res1, 1.0, 0.1},
                                         {scheme_kind::res2, 2.0, 0.15}};
    for (const auto& t : targets) {
        auto cfg = base;
        cfg.scheme = t.kind;
        auto rep = run_convergence(cfg, &ref);
        const bool ok = rep.has_slope && std::abs(rep.slope - t.order) <= t.tol;
        record(("smooth order: " + rep.scheme).c_str(), ok,
               "slope " + fmt(rep.has_slope ? rep.slope : 0.0) + " vs " + fmt(t.order) +
                   " +/- " + fmt(t.tol));
    }
    const double dt = seconds_since(t0);
    record("smooth orders runtime", dt < 60.0, fmt(dt) + " s (limit 60)");
}

// ---- criterion 2: filtered splitting at low regularity ----------------------

void low_regularity_rate() {
    const auto t0 = std::chrono::steady_clock::now();
    auto cfg = make_convergence_config(scheme_kind::filtered_lie, 4096, 1.0,
                                       std::pow(2.0, -6), std::pow(2.0, -12),
                                       rough_data(1.0, 1), 16);
    auto reports = run_convergence_seeds(cfg, {1, 2, 3, 4, 5});
    const double med = median_slope(reports);
    std::string per_seed;
    for (const auto& r : reports) per_seed += fmt(r.slope) + " ";
    record("filtered splitting H^1 rate", std::abs(med - 0.5) <= 0.15,
           "median slope " + fmt(med) + " (target 0.5 +/- 0.15; seeds: " + per_seed +
               "), " + fmt(seconds_since(t0)) + " s");
}

// ---- criterion 3: resonance advantage at low regularity ---------------------

void resonance_advantage() {
    const auto t0 = std::chrono::steady_clock::now();
    // The classical scheme needs four extra derivatives for its full order, so
    // its reduction lives at coarse tau; at fine tau (fixed truncation) it
    // recovers order 2 with a large constant and the gap closes. The window
    // therefore starts at tau = 1 and stops before recovery. Amplitude is left
    // at its natural (unnormalized) scale: H^2 normalization shrinks the field
    // enough that both schemes sit in the weakly nonlinear regime and the
    // contrast washes out.
    const double tau_max = 1.0;
    const double tau_min = std::pow(2.0, -7);
    const std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};

    data_spec d = rough_data(2.0, 1);
    d.rough.normalize = false;
    auto cfg_res2 = make_convergence_config(scheme_kind::res2, 2048, 1.0, tau_max, tau_min, d, 16);
    auto res2_reports = run_convergence_seeds(cfg_res2, seeds);
    auto cfg_strang = cfg_res2;
    cfg_strang.scheme = scheme_kind::strang;
    auto strang_reports = run_convergence_seeds(cfg_strang, seeds);

    const double m_res2 = median_slope(res2_reports);
    const double m_strang = median_slope(strang_reports);
    record("resonance advantage on H^2 data", m_res2 - m_strang >= 0.3,
           "res2 median " + fmt(m_res2) + ", strang median " + fmt(m_strang) + ", gap " +
               fmt(m_res2 - m_strang) + " (need >= 0.3), " + fmt(seconds_since(t0)) + " s");
}

// ---- criterion 4: oscillatory-integral oracle orders -------------------------

void oracle_orders() {
    const field u0 = make_rough(128, 4.0, 17);
    std::vector<std::pair<double, double>> pts1, pts2;
    for (int e = 3; e <= 8; ++e) {
        const double t = std::pow(2.0, -e);
        const field quad = osc_integral_quadrature(t, u0, 32);
        pts1.emplace_back(t, l2_norm(quad - resonance_integral_order1(t, u0)));
        pts2.emplace_back(t, l2_norm(quad - resonance_integral_order2(t, u0)));
    }
    const double r1 = fit_slope(pts1).first;
    const double r2 = fit_slope(pts2).first;
    record("oracle order-1 rate", r1 >= 1.8, "Richardson slope " + fmt(r1) + " (need >= 1.8)");
    record("oracle order-2 rate", r2 >= 2.7, "Richardson slope " + fmt(r2) + " (need >= 2.7)");
}

// ---- criterion 5: conservation ------------------------------------------------

void conservation() {
    const field u0 = make_rough(256, 1.0, 4);
    const double m0 = l2_norm(u0) * l2_norm(u0);
    const double eps = std::numeric_limits<double>::epsilon();

    for (auto kind : {scheme_kind::lie, scheme_kind::strang}) {
        auto series = run_diagnostics(kind, u0, 0.01, 1000);
        double drift = 0.0;
        for (const auto& r : series.records)
            drift = std::max(drift, std::abs(r.mass - m0) / m0);
        record((scheme_name(kind) + std::string(" mass drift")).c_str(), drift < 1e-10,
               "relative drift " + fmt(drift) + " over 1000 steps (limit 1e-10)");
    }

    auto filtered = run_diagnostics(scheme_kind::filtered_lie, u0, 0.01, 1000);
    double worst_rise = -1.0;
    for (size_t i = 1; i < filtered.records.size(); ++i)
        worst_rise =
            std::max(worst_rise, filtered.records[i].mass - filtered.records[i - 1].mass);
    record("filtered mass monotonicity", worst_rise <= 10 * eps * m0,
           "worst per-step mass rise " + fmt(worst_rise) + " (limit " + fmt(10 * eps * m0) +
               ")");
}

// ---- criterion 6: structural identities ----------------------------------------

void structural_identities() {
    double worst_nls = 0.0;
    for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
        const field u = make_rough(64, 0.5, seed);
        for (double tau : {0.2, 0.01}) {
            const field a = general_res1_step(nls_cubic(), u, tau);
            const field b = res1_step(u, tau);
            worst_nls = std::max(worst_nls, l2_norm(a - b) / l2_norm(b));
        }
    }
    record("general scheme collapses to cubic-NLS scheme", worst_nls < 1e-12,
           "worst relative gap " + fmt(worst_nls) + " (limit 1e-12)");

    const auto heat = heat_cubic(1.0);
    double worst_heat = 0.0;
    for (std::uint64_t seed : {6, 7}) {
        const field u = make_rough(64, 1.5, seed);
        const double tau = 0.05;
        const field direct = general_res1_step(heat, u, tau);
        const field expect =
            apply_multiplier(u + cplx(tau) * pointwise_power(u, 2, 1),
                             [&](int k) { return std::exp(tau * heat.sigma(k)); });
        worst_heat = std::max(worst_heat, l2_norm(direct - expect) / l2_norm(expect));
    }
    record("general scheme on a real symbol is the exact exponential step",
           worst_heat < 1e-12, "worst relative gap " + fmt(worst_heat) + " (limit 1e-12)");

    double worst_pw = 0.0;
    fourier_grid g(32);
    for (const auto& [c, k] : std::vector<std::pair<cplx, int>>{
             {cplx(1.0, 0.0), 1}, {cplx(0.3, 0.4), -5}, {cplx(0.0, 1.2), 7}}) {
        const field u = plane_wave(g, c, k);
        for (double tau : {0.05, 0.25}) {
            const field target = plane_wave_exact(g, c, k, tau);
            worst_pw = std::max(worst_pw, l2_norm(lie_step(u, tau) - target));
            worst_pw = std::max(worst_pw, l2_norm(strang_step(u, tau) - target));
        }
    }
    record("splitting schemes exact on plane waves", worst_pw < 1e-10,
           "worst per-step error " + fmt(worst_pw) + " (limit 1e-10)");
}

// ---- criterion 7: time symmetry --------------------------------------------------

void time_symmetry() {
    const field smooth = two_mode(fourier_grid(128), 0.5, 1, 0.25, 2);
    const field rough = make_rough(128, 1.0, 6);
    const double s1 = symmetry_defect(scheme_kind::strang, smooth, 0.01);
    const double s2 = symmetry_defect(scheme_kind::strang, rough, 0.01);
    record("strang is time-symmetric", std::max(s1, s2) < 1e-10,
           "defects " + fmt(s1) + " (smooth), " + fmt(s2) + " (rough), limit 1e-10");

    // res2 cannot be symmetric: nonzero defect with a measurable decay rate.
    // On smooth data the tau^3 coefficient cancels and the defect is O(tau^4);
    // sigma=0 data keeps the observable rate near 2, which is where the
    // tolerance band is centered.
    std::vector<double> rates;
    bool all_nonzero = true;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const field u = make_rough(256, 0.0, seed);
        std::vector<std::pair<double, double>> pts;
        for (int e = 5; e <= 12; ++e) {
            const double tau = std::pow(2.0, -e);
            const double d = symmetry_defect(scheme_kind::res2, u, tau);
            all_nonzero = all_nonzero && d > 0.0;
            pts.emplace_back(tau, d);
        }
        rates.push_back(fit_slope(pts).first);
    }
    std::sort(rates.begin(), rates.end());
    const double med = rates[rates.size() / 2];
    std::string per_seed;
    for (double r : rates) per_seed += fmt(r) + " ";
    record("res2 asymmetry defect rate", all_nonzero && std::abs(med - 2.0) <= 0.3,
           "median rate " + fmt(med) + " (target 2.0 +/- 0.3; sorted: " + per_seed + ")");
}

// ---- criterion 8: brute-force equivalence of the oscillation operator -------------

int fold(int k, int n) {
    int r = ((k % n) + n) % n;
    return r < n / 2 ? r : r - n;
}

field osc_triple_sum(double s, const field& u) {
    const int n = u.grid.n_modes;
    field out(u.grid);
    for (int k1 = -n / 2; k1 < n / 2; ++k1)
        for (int k2 = -n / 2; k2 < n / 2; ++k2)
            for (int k3 = -n / 2; k3 < n / 2; ++k3) {
                const int m = fold(k1 - k2 + k3, n);
                const double phase = s * double(m * m - k1 * k1 + k2 * k2 - k3 * k3);
                out.coeff[u.grid.index_of(m)] += std::polar(1.0, phase) * u.at_mode(k1) *
                                                 std::conj(u.at_mode(k2)) * u.at_mode(k3);
            }
    return out;
}

void brute_force_oscillation() {
    double worst = 0.0;
    int fields = 0;
    for (const auto& [n, seed, s] : std::vector<std::tuple<int, std::uint64_t, double>>{
             {8, 1, 0.3},
             {8, 2, 1.1},
             {8, 3, 0.3},
             {16, 4, 1.1},
             {16, 5, 0.3},
             {16, 6, 1.1},
             {16, 7, 0.3},
             {32, 8, 1.1},
             {32, 9, 0.3},
             {32, 10, 1.1}}) {
        const field u = make_rough(n, 0.5, seed);
        worst = std::max(worst, l2_norm(osc(s, u) - osc_triple_sum(s, u)));
        ++fields;
    }
    record("oscillation operator matches O(N^3) triple sum", worst < 1e-10 && fields == 10,
           "worst L2 gap " + fmt(worst) + " over 10 fields (limit 1e-10)");
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    smooth_orders();
    oracle_orders();
    conservation();
    structural_identities();
    time_symmetry();
    brute_force_oscillation();
    low_regularity_rate();
    resonance_advantage();
    std::printf("%s: %d criterion check(s) failed, total %.1f s\n",
                failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED", failures,
                seconds_since(t0));
    return failures == 0 ? 0 : 1;
}
