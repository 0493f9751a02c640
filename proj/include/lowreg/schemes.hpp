#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "phi.hpp"
#include "problems.hpp"
#include "spectral.hpp"

namespace lowreg {

/* One-step maps for i u_t = -Delta u + |u|^2 u on the torus, written with
   S(t) = e^{it Delta} (multiplier e^{-i k^2 t}) and the exact nonlinear
   phase flow N(t)u = e^{-i t |u|^2} u:

     lie            u -> S(tau) N(tau) u
     strang         u -> S(tau/2) N(tau) S(tau/2) u
     exp1           u -> S(tau) u - i tau phi1(i tau Delta) (|u|^2 u)
     res1           u -> S(tau) [u - i tau u^2 phi1(-2i tau Delta) conj(u)]
     res2           u -> S(tau) u - i tau S(tau)[u^2 (phi1-phi2)(-2i tau Delta) conj(u)]
                         - i tau (S(tau)u)^2 phi2(-2i tau Delta) S(tau)conj(u)
                         - (tau^2/2) |u|^4 u
     filtered_lie   u -> S(tau) Pi_K N(tau) Pi_K u,   K = |tau|^{-alpha/2}
     general_res1   du/dt - Sigma u = c u^l conj(u)^m + gamma u:
                    u -> e^{tau Sigma} [u + tau (c u^l w^m + gamma u)],
                    w = phi1(tau (-sigma + conj sigma)) applied to conj(u)

   Conjugation acts on fields, (conj u)hat_k = conj(uhat_{-k}), so an operator
   phi(-2i tau Delta) on conj(u) is the multiplier phi(2i tau k^2) on the
   conjugated coefficients. */

enum class scheme_kind { lie, strang, exp1, res1, res2, filtered_lie, general_res1 };

inline const char* scheme_name(scheme_kind k) {
    switch (k) {
        case scheme_kind::lie: return "lie";
        case scheme_kind::strang: return "strang";
        case scheme_kind::exp1: return "exp1";
        case scheme_kind::res1: return "res1";
        case scheme_kind::res2: return "res2";
        case scheme_kind::filtered_lie: return "filtered_lie";
        case scheme_kind::general_res1: return "general_res1";
    }
    return "?";
}

inline scheme_kind parse_scheme(const std::string& s) {
    for (auto k : {scheme_kind::lie, scheme_kind::strang, scheme_kind::exp1, scheme_kind::res1,
                   scheme_kind::res2, scheme_kind::filtered_lie, scheme_kind::general_res1})
        if (s == scheme_name(k)) return k;
    throw std::invalid_argument(
        "unknown scheme '" + s +
        "' (valid: lie, strang, exp1, res1, res2, filtered_lie, general_res1)");
}

struct stepper_config {
    double tau = 0.0;
    double filter_alpha = 1.0;  // filtered_lie only: K = |tau|^{-alpha/2}
    bool dealias = false;
};

struct numerical_abort : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct blow_up_error : numerical_abort {
    int step;
    explicit blow_up_error(int s)
        : numerical_abort("blow-up: non-finite field values after step " + std::to_string(s)),
          step(s) {}
};

namespace detail {

// tau-dependent multiplier tables, built once per (grid, tau) and reused
// across steps of a trajectory.
struct nls_tables {
    double tau = std::numeric_limits<double>::quiet_NaN();
    int n = 0;
    std::vector<cplx> eflow;    // e^{-i k^2 tau}
    std::vector<cplx> ehalf;    // e^{-i k^2 tau/2}
    std::vector<cplx> phi1_e;   // phi1(-i tau k^2)
    std::vector<cplx> phi1_c;   // phi1(2i tau k^2)
    std::vector<cplx> phi12_c;  // (phi1 - phi2)(2i tau k^2)
    std::vector<cplx> phi2_c;   // phi2(2i tau k^2)

    void build(fourier_grid g, double t) {
        tau = t;
        n = g.n_modes;
        eflow.resize(n); ehalf.resize(n);
        phi1_e.resize(n); phi1_c.resize(n); phi12_c.resize(n); phi2_c.resize(n);
        for (int i = 0; i < n; ++i) {
            const double k = g.wavenumber(i);
            const double k2 = k * k;
            eflow[i] = std::polar(1.0, -k2 * t);
            ehalf[i] = std::polar(1.0, -k2 * t / 2);
            phi1_e[i] = phi1(cplx(0.0, -t * k2));
            phi1_c[i] = phi1(cplx(0.0, 2 * t * k2));
            phi2_c[i] = phi2(cplx(0.0, 2 * t * k2));
            phi12_c[i] = phi1_c[i] - phi2_c[i];
        }
    }
};

struct general_tables {
    double tau = std::numeric_limits<double>::quiet_NaN();
    int n = 0;
    std::vector<cplx> eprop;  // e^{tau sigma(k)}
    std::vector<cplx> wmul;   // phi1(tau (-sigma(k) + conj sigma(k)))

    void build(fourier_grid g, const evolution_problem& p, double t) {
        tau = t;
        n = g.n_modes;
        eprop.resize(n); wmul.resize(n);
        for (int i = 0; i < n; ++i) {
            const cplx s = p.sigma(g.wavenumber(i));
            eprop[i] = std::exp(t * s);
            wmul[i] = phi1(t * (-s + std::conj(s)));
        }
    }
};

inline bool all_finite(const field& f) {
    for (const auto& c : f.coeff)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
}

// e^{-i tau |u|^2} u on the grid samples (exact flow of the nonlinear part;
// the modulus is conserved, so no dealiasing applies here).
inline std::vector<cplx> phase_flow(std::vector<cplx> ph, double tau) {
    for (auto& v : ph) v *= std::polar(1.0, -tau * std::norm(v));
    return ph;
}

inline field lie_step_t(const field& u, double tau, const nls_tables& tb) {
    field out = to_spectral(u.grid, phase_flow(to_physical(u), tau));
    for (int i = 0; i < out.size(); ++i) out.coeff[i] *= tb.eflow[i];
    return out;
}

inline field strang_step_t(const field& u, double tau, const nls_tables& tb) {
    field v = u;
    for (int i = 0; i < v.size(); ++i) v.coeff[i] *= tb.ehalf[i];
    field out = to_spectral(u.grid, phase_flow(to_physical(v), tau));
    for (int i = 0; i < out.size(); ++i) out.coeff[i] *= tb.ehalf[i];
    return out;
}

inline field exp1_step_t(const field& u, double tau, const nls_tables& tb, bool dealias) {
    field nl = pointwise_power(u, 2, 1, dealias);
    field out = u;
    const cplx itau(0.0, tau);
    for (int i = 0; i < out.size(); ++i)
        out.coeff[i] = tb.eflow[i] * u.coeff[i] - itau * tb.phi1_e[i] * nl.coeff[i];
    return out;
}

inline field res1_step_t(const field& u, double tau, const nls_tables& tb, bool dealias) {
    field w = conj_field(u);
    for (int i = 0; i < w.size(); ++i) w.coeff[i] *= tb.phi1_c[i];
    field prod = triple_product(u, u, w, dealias);
    field out = u;
    const cplx itau(0.0, tau);
    for (int i = 0; i < out.size(); ++i)
        out.coeff[i] = tb.eflow[i] * (u.coeff[i] - itau * prod.coeff[i]);
    return out;
}

inline field res2_step_t(const field& u, double tau, const nls_tables& tb, bool dealias) {
    const int n = u.grid.n_modes;
    field cu = conj_field(u);
    field A = cu, B = cu, v = u;
    for (int i = 0; i < n; ++i) {
        A.coeff[i] *= tb.phi12_c[i];
        B.coeff[i] *= tb.phi2_c[i] * tb.eflow[i];
        v.coeff[i] *= tb.eflow[i];
    }
    const cplx itau(0.0, tau);
    if (dealias) {
        field t2 = triple_product(u, u, A, true);
        field t3 = triple_product(v, v, B, true);
        field t4 = pointwise_power(u, 3, 2, true);
        field out = v;
        for (int i = 0; i < n; ++i)
            out.coeff[i] -= itau * tb.eflow[i] * t2.coeff[i] + itau * t3.coeff[i] +
                            (tau * tau / 2) * t4.coeff[i];
        return out;
    }
    auto up = to_physical(u), ap = to_physical(A), vp = to_physical(v), bp = to_physical(B);
    std::vector<cplx> t2(up.size()), t3(up.size()), t4(up.size());
    for (size_t j = 0; j < up.size(); ++j) {
        const cplx uj = up[j];
        const double m2 = std::norm(uj);
        t2[j] = uj * uj * ap[j];
        t3[j] = vp[j] * vp[j] * bp[j];
        t4[j] = m2 * m2 * uj;
    }
    field T2 = to_spectral(u.grid, t2), T3 = to_spectral(u.grid, t3), T4 = to_spectral(u.grid, t4);
    field out = v;
    for (int i = 0; i < n; ++i)
        out.coeff[i] -= itau * tb.eflow[i] * T2.coeff[i] + itau * T3.coeff[i] +
                        (tau * tau / 2) * T4.coeff[i];
    return out;
}

inline field filtered_lie_step_t(const field& u, double tau, double alpha, const nls_tables& tb) {
    const double K = std::pow(std::abs(tau), -alpha / 2.0);
    if (std::floor(K) > u.grid.n_modes / 2 - 1)
        throw std::invalid_argument("filtered_lie: filter K = " + std::to_string(K) +
                                    " exceeds grid (max wavenumber " +
                                    std::to_string(u.grid.n_modes / 2 - 1) + ")");
    field v = project(u, K);
    field w = project(to_spectral(u.grid, phase_flow(to_physical(v), tau)), K);
    for (int i = 0; i < w.size(); ++i) w.coeff[i] *= tb.eflow[i];
    return w;
}

inline field general_res1_step_t(const evolution_problem& p, const field& u, double tau,
                                 const general_tables& tb, bool dealias) {
    field w = conj_field(u);
    for (int i = 0; i < w.size(); ++i) w.coeff[i] *= tb.wmul[i];
    // c u^l w^m pointwise; the resonance correction applies per conj(u) factor
    auto prep = [dealias](const field& f) {
        if (!dealias) return to_physical(f);
        field g = f;
        dealias_truncate(g);
        return to_physical(g);
    };
    auto up = prep(u), wp = prep(w);
    std::vector<cplx> prod(up.size());
    for (size_t j = 0; j < up.size(); ++j) {
        cplx r = 1.0;
        for (int i = 0; i < p.ell; ++i) r *= up[j];
        for (int i = 0; i < p.m; ++i) r *= wp[j];
        prod[j] = r;
    }
    field g = to_spectral(u.grid, prod);
    if (dealias) dealias_truncate(g);
    field out = u;
    for (int i = 0; i < out.size(); ++i) {
        const cplx nl = p.nl_coeff * g.coeff[i] + p.linear_coeff * u.coeff[i];
        out.coeff[i] = tb.eprop[i] * (u.coeff[i] + tau * nl);
    }
    return out;
}

}  // namespace detail

// One trajectory owns one stepper; tables are rebuilt lazily when tau
// changes, so a stepper must not be shared across threads.
class stepper {
  public:
    stepper(scheme_kind kind, evolution_problem p, stepper_config cfg)
        : kind_(kind), prob_(std::move(p)), cfg_(cfg) {}

    field operator()(const field& u, double tau) const {
        if (kind_ == scheme_kind::general_res1) {
            if (tau != gtabs_.tau || u.grid.n_modes != gtabs_.n) gtabs_.build(u.grid, prob_, tau);
            return detail::general_res1_step_t(prob_, u, tau, gtabs_, cfg_.dealias);
        }
        if (tau != tabs_.tau || u.grid.n_modes != tabs_.n) tabs_.build(u.grid, tau);
        switch (kind_) {
            case scheme_kind::lie: return detail::lie_step_t(u, tau, tabs_);
            case scheme_kind::strang: return detail::strang_step_t(u, tau, tabs_);
            case scheme_kind::exp1: return detail::exp1_step_t(u, tau, tabs_, cfg_.dealias);
            case scheme_kind::res1: return detail::res1_step_t(u, tau, tabs_, cfg_.dealias);
            case scheme_kind::res2: return detail::res2_step_t(u, tau, tabs_, cfg_.dealias);
            case scheme_kind::filtered_lie:
                return detail::filtered_lie_step_t(u, tau, cfg_.filter_alpha, tabs_);
            default: break;
        }
        throw std::logic_error("stepper: unhandled scheme kind");
    }

    field step(const field& u) const { return (*this)(u, cfg_.tau); }

  private:
    scheme_kind kind_;
    evolution_problem prob_;
    stepper_config cfg_;
    mutable detail::nls_tables tabs_;
    mutable detail::general_tables gtabs_;
};

inline field lie_step(const field& u, double tau) {
    return stepper(scheme_kind::lie, nls_cubic(), {})(u, tau);
}
inline field strang_step(const field& u, double tau) {
    return stepper(scheme_kind::strang, nls_cubic(), {})(u, tau);
}
inline field exp1_step(const field& u, double tau) {
    return stepper(scheme_kind::exp1, nls_cubic(), {})(u, tau);
}
inline field res1_step(const field& u, double tau) {
    return stepper(scheme_kind::res1, nls_cubic(), {})(u, tau);
}
inline field res2_step(const field& u, double tau) {
    return stepper(scheme_kind::res2, nls_cubic(), {})(u, tau);
}
inline field filtered_lie_step(const field& u, double tau, double alpha = 1.0) {
    stepper_config cfg;
    cfg.filter_alpha = alpha;
    return stepper(scheme_kind::filtered_lie, nls_cubic(), cfg)(u, tau);
}
inline field general_res1_step(const evolution_problem& p, const field& u, double tau) {
    return stepper(scheme_kind::general_res1, p, {})(u, tau);
}

using step_observer = std::function<void(int step, const field& u)>;

inline field evolve(scheme_kind kind, const evolution_problem& p, const field& u0,
                    const stepper_config& cfg, int n_steps, const step_observer& observer = {}) {
    if (cfg.tau <= 0.0) throw std::invalid_argument("evolve: tau must be positive");
    if (n_steps < 0) throw std::invalid_argument("evolve: n_steps must be >= 0");
    stepper s(kind, p, cfg);
    field u = u0;
    for (int n = 0; n < n_steps; ++n) {
        u = s.step(u);
        if (!detail::all_finite(u)) throw blow_up_error(n + 1);
        if (observer) observer(n + 1, u);
    }
    return u;
}

// || Phi_{-tau}(Phi_tau(u)) - u ||_{L2}; zero for symmetric one-step maps.
inline double symmetry_defect(scheme_kind kind, const field& u, double tau, double alpha = 1.0,
                              const evolution_problem& p = nls_cubic()) {
    stepper_config cfg;
    cfg.tau = std::abs(tau);
    cfg.filter_alpha = alpha;
    stepper s(kind, p, cfg);
    return l2_norm(s(s(u, tau), -tau) - u);
}

}  // namespace lowreg
