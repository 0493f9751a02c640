#pragma once

#include <array>
#include <cassert>

#include "phi.hpp"
#include "spectral.hpp"

namespace lowreg {

/* Reference objects for the resonance analysis of i u_t = -Delta u + |u|^2 u:
   the oscillation Osc(s, u0) = e^{-is Delta}(|e^{is Delta}u0|^2 e^{is Delta}u0),
   its integral over [0, t] (computed by quadrature), and the order-1/order-2
   resonance-based closed-form approximations of that integral. */

// R(k1,k2,k3) = k^2 - k1^2 + k2^2 - k3^2 with k = k1 - k2 + k3; the
// expanded form isolates the dominant 2 k2^2 part.
inline long long resonance_factor(long long k1, long long k2, long long k3) {
    const long long expanded = 2 * k2 * k2 - 2 * (k1 + k3) * k2 + 2 * k1 * k3;
    const long long k = k1 - k2 + k3;
    assert(expanded == k * k - k1 * k1 + k2 * k2 - k3 * k3);
    return expanded;
}

inline field osc(double s, const field& u0) {
    field v = free_flow(u0, s);
    auto ph = to_physical(v);
    for (auto& x : ph) x *= std::norm(x);
    return free_flow(to_spectral(u0.grid, ph), -s);
}

// Composite 4-point Gauss-Legendre for int_0^t Osc(s, u0) ds. The integrand
// is entire in s, so the panel count only needs to resolve e^{i s k^2}
// oscillation; callers verify by doubling panels.
inline field osc_integral_quadrature(double t, const field& u0, int panels) {
    if (panels < 1) throw std::invalid_argument("osc_integral_quadrature: panels must be >= 1");
    static constexpr std::array<double, 4> nodes = {-0.8611363115940526, -0.3399810435848563,
                                                    0.3399810435848563, 0.8611363115940526};
    static constexpr std::array<double, 4> weights = {0.34785484513745385, 0.6521451548625462,
                                                      0.6521451548625462, 0.34785484513745385};
    field acc(u0.grid);
    const double h = t / panels;
    for (int p = 0; p < panels; ++p) {
        const double a = p * h;
        for (int q = 0; q < 4; ++q) {
            const double s = a + h / 2 * (1.0 + nodes[q]);
            field o = osc(s, u0);
            const double w = weights[q] * h / 2;
            for (int i = 0; i < acc.size(); ++i) acc.coeff[i] += w * o.coeff[i];
        }
    }
    return acc;
}

// First-order resonance approximation t u0^2 phi1(-2it Delta) conj(u0).
inline field resonance_integral_order1(double t, const field& u0) {
    field w = conj_field(u0);
    for (int i = 0; i < w.size(); ++i) {
        const double k = u0.grid.wavenumber(i);
        w.coeff[i] *= phi1(cplx(0.0, 2 * t * k * k));
    }
    field prod = detail::triple_product(u0, u0, w, false);
    return t * prod;
}

// Second-order approximation
//   t u0^2 (phi1-phi2)(-2it Delta) conj(u0)
//   + t e^{-it Delta}[ (e^{it Delta}u0)^2 phi2(-2it Delta) e^{it Delta}conj(u0) ].
inline field resonance_integral_order2(double t, const field& u0) {
    field cu = conj_field(u0);
    field A = cu, B = free_flow(cu, t);
    for (int i = 0; i < u0.size(); ++i) {
        const double k = u0.grid.wavenumber(i);
        const cplx z(0.0, 2 * t * k * k);
        A.coeff[i] *= phi1(z) - phi2(z);
        B.coeff[i] *= phi2(z);
    }
    field v = free_flow(u0, t);
    field term1 = detail::triple_product(u0, u0, A, false);
    field term2 = free_flow(detail::triple_product(v, v, B, false), -t);
    return t * (term1 + term2);
}

// (1/2)[T,V](u) = (du dconju) u + (du conju) du + (u dconju) du + (u conj(ddu)) u,
// the commutator driving the Lie splitting's local error.
inline field lie_commutator(const field& u) {
    auto up = to_physical(u);
    auto dup = to_physical(apply_multiplier(u, [](int k) { return cplx(0.0, k); }));
    auto ddup = to_physical(apply_multiplier(u, [](int k) { return cplx(-double(k) * k, 0.0); }));
    std::vector<cplx> out(up.size());
    for (size_t j = 0; j < up.size(); ++j) {
        const cplx uu = up[j], du = dup[j], ddu = ddup[j];
        out[j] = (du * std::conj(du)) * uu + (du * std::conj(uu)) * du +
                 (uu * std::conj(du)) * du + (uu * std::conj(ddu)) * uu;
    }
    return to_spectral(u.grid, out);
}

}  // namespace lowreg
