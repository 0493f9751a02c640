#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "grid.hpp"
#include "spectral.hpp"

namespace lowreg {

namespace detail {

// splitmix64; the draw order below is part of the data contract.
struct splitmix64 {
    std::uint64_t state;

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform on [-1, 1): top 53 bits mapped to [0,1), then affinely shifted
    double next_symmetric() {
        const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
        return 2.0 * u - 1.0;
    }
};

}  // namespace detail

struct rough_data_spec {
    double sigma = 1.0;        // target Sobolev regularity, >= 0
    std::uint64_t seed = 0;
    bool normalize = true;     // scale to ||u||_{H^sigma} = 1
};

// uhat_k = <k>^{-(sigma+1/2)} (a_k + i b_k), a_k, b_k ~ U[-1,1), one
// splitmix64 stream per field, draws in order k = -N/2 .. N/2-1 (a before b).
// The sigma+1/2 decay places the data at the H^sigma borderline.
inline field rough_field(fourier_grid g, const rough_data_spec& spec) {
    if (spec.sigma < 0) throw std::invalid_argument("rough_field: sigma must be >= 0");
    field out(g);
    detail::splitmix64 rng{spec.seed};
    for (int k = -g.n_modes / 2; k < g.n_modes / 2; ++k) {
        const double a = rng.next_symmetric();
        const double b = rng.next_symmetric();
        const double kk = k;
        const double amp = std::pow(1.0 + kk * kk, -(spec.sigma + 0.5) / 2.0);
        out.at_mode(k) = amp * cplx(a, b);
    }
    if (spec.normalize) {
        const double h = sobolev_norm(out, spec.sigma);
        for (auto& c : out.coeff) c /= h;
    }
    return out;
}

inline field plane_wave(fourier_grid g, cplx c, int k) {
    field out(g);
    out.at_mode(k) = c;
    return out;
}

inline field two_mode(fourier_grid g, cplx c1, int k1, cplx c2, int k2) {
    field out(g);
    out.at_mode(k1) += c1;
    out.at_mode(k2) += c2;
    return out;
}

// Gaussian coefficient profile exp(-(w k)^2 / 2), truncated at |k| > N/4 so
// the field stays band-limited enough to cube without visible aliasing.
inline field gaussian_like(fourier_grid g, double width) {
    if (width <= 0) throw std::invalid_argument("gaussian_like: width must be positive");
    field out(g);
    for (int i = 0; i < g.n_modes; ++i) {
        const double k = g.wavenumber(i);
        if (std::abs(k) > g.n_modes / 4.0) continue;
        out.coeff[i] = std::exp(-0.5 * (width * k) * (width * k));
    }
    return out;
}

// Exact cubic-NLS solution c e^{i(kx - (k^2+|c|^2) t)} for monochromatic data.
inline field plane_wave_exact(fourier_grid g, cplx c, int k, double t) {
    if (std::abs(k) > g.n_modes / 2 - 1)
        throw std::invalid_argument("plane_wave_exact: |k| must be <= N/2 - 1");
    field out(g);
    const double kk = k;
    out.at_mode(k) = c * std::polar(1.0, -(kk * kk + std::norm(c)) * t);
    return out;
}

}  // namespace lowreg
