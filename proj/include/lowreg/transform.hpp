#pragma once

#include <fftw3.h>

#include <mutex>
#include <stdexcept>
#include <unordered_map>

#include "grid.hpp"

namespace lowreg {

namespace detail {

// FFTW planning is not thread safe, so both plans per size are built once
// under a lock and then executed through the new-array interface.
// FFTW_UNALIGNED keeps new-array execution valid for arbitrary buffers and
// pins the kernel choice independently of runtime alignment.
struct fft_plans {
    fftw_plan fwd;
    fftw_plan bwd;
};

inline const fft_plans& plans_for(int n) {
    static std::mutex mu;
    static std::unordered_map<int, fft_plans> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) {
        std::vector<cplx> a(static_cast<size_t>(n)), b(static_cast<size_t>(n));
        auto* pa = reinterpret_cast<fftw_complex*>(a.data());
        auto* pb = reinterpret_cast<fftw_complex*>(b.data());
        fft_plans p;
        p.fwd = fftw_plan_dft_1d(n, pa, pb, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
        p.bwd = fftw_plan_dft_1d(n, pa, pb, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
        it = cache.emplace(n, p).first;
    }
    return it->second;
}

}  // namespace detail

// Samples u(x_j) = sum_k uhat_k e^{i k x_j} of the band-limited interpolant.
inline std::vector<cplx> to_physical(const field& f) {
    const int n = f.grid.n_modes;
    std::vector<cplx> out(static_cast<size_t>(n));
    const auto& p = detail::plans_for(n);
    fftw_execute_dft(p.bwd,
                     reinterpret_cast<fftw_complex*>(const_cast<cplx*>(f.coeff.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

// uhat_k = (1/N) sum_j u(x_j) e^{-i k x_j}; inverse of to_physical.
inline field to_spectral(fourier_grid g, const std::vector<cplx>& samples) {
    const int n = g.n_modes;
    if (static_cast<int>(samples.size()) != n)
        throw std::invalid_argument("to_spectral: sample count does not match grid");
    field out(g);
    const auto& p = detail::plans_for(n);
    fftw_execute_dft(p.fwd,
                     reinterpret_cast<fftw_complex*>(const_cast<cplx*>(samples.data())),
                     reinterpret_cast<fftw_complex*>(out.coeff.data()));
    const double scale = 1.0 / n;
    for (auto& c : out.coeff) c *= scale;
    return out;
}

}  // namespace lowreg
