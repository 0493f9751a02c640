#pragma once

#include <cmath>
#include <concepts>

#include "grid.hpp"
#include "transform.hpp"

namespace lowreg {

template <class F>
concept multiplier_symbol = requires(F m, int k) {
    { m(k) } -> std::convertible_to<cplx>;
};

template <multiplier_symbol F>
field apply_multiplier(const field& f, F&& m) {
    field out = f;
    for (int i = 0; i < out.size(); ++i)
        out.coeff[i] *= static_cast<cplx>(m(f.grid.wavenumber(i)));
    return out;
}

// e^{it Laplacian}: multiplier e^{-i k^2 t} (convention Delta -> -k^2 for
// i u_t = -Delta u + |u|^2 u).
inline field free_flow(const field& f, double t) {
    field out = f;
    for (int i = 0; i < out.size(); ++i) {
        const double k = f.grid.wavenumber(i);
        out.coeff[i] *= std::polar(1.0, -k * k * t);
    }
    return out;
}

// Complex conjugate of the interpolant as a field: chat_k = conj(uhat_{-k}).
// The wrap at k = -N/2 keeps that mode in place, matching pointwise
// conjugation of the grid samples.
inline field conj_field(const field& f) {
    const int n = f.grid.n_modes;
    field out(f.grid);
    for (int i = 0; i < n; ++i) out.coeff[i] = std::conj(f.coeff[(n - i) % n]);
    return out;
}

// Pi_K: zero all coefficients with |k| > K (K a real threshold, no rounding).
inline field project(const field& f, double K) {
    field out = f;
    for (int i = 0; i < out.size(); ++i)
        if (std::abs(f.grid.wavenumber(i)) > K) out.coeff[i] = 0.0;
    return out;
}

inline double l2_norm(const field& f) {
    double s = 0.0;
    for (const auto& c : f.coeff) s += std::norm(c);
    return std::sqrt(s);
}

// (sum_k <k>^{2s} |uhat_k|^2)^{1/2} with <k> = (1+k^2)^{1/2}.
inline double sobolev_norm(const field& f, double s) {
    double acc = 0.0;
    for (int i = 0; i < f.grid.n_modes; ++i) {
        const double k = f.grid.wavenumber(i);
        acc += std::pow(1.0 + k * k, s) * std::norm(f.coeff[i]);
    }
    return std::sqrt(acc);
}

namespace detail {

// 2/3-rule truncation used when dealiasing is requested.
inline void dealias_truncate(field& f) {
    const double cut = f.grid.n_modes / 3.0;
    for (int i = 0; i < f.size(); ++i)
        if (std::abs(f.grid.wavenumber(i)) > cut) f.coeff[i] = 0.0;
}

// Pointwise product of three interpolants, formed on the grid. The optional
// 2/3 truncation is applied to each factor and to the product.
inline field triple_product(const field& a, const field& b, const field& c, bool dealias) {
    auto prep = [dealias](const field& f) {
        if (!dealias) return to_physical(f);
        field g = f;
        dealias_truncate(g);
        return to_physical(g);
    };
    auto pa = prep(a), pb = prep(b), pc = prep(c);
    for (size_t j = 0; j < pa.size(); ++j) pa[j] *= pb[j] * pc[j];
    field out = to_spectral(a.grid, pa);
    if (dealias) dealias_truncate(out);
    return out;
}

}  // namespace detail

// u^l conj(u)^m evaluated pointwise on the grid.
inline field pointwise_power(const field& f, int l, int m, bool dealias = false) {
    if (l + m < 1) throw std::invalid_argument("pointwise_power: l + m must be >= 1");
    field g = f;
    if (dealias) detail::dealias_truncate(g);
    auto ph = to_physical(g);
    for (auto& v : ph) {
        cplx w = 1.0;
        for (int i = 0; i < l; ++i) w *= v;
        const cplx vc = std::conj(v);
        for (int i = 0; i < m; ++i) w *= vc;
        v = w;
    }
    field out = to_spectral(f.grid, ph);
    if (dealias) detail::dealias_truncate(out);
    return out;
}

}  // namespace lowreg
