#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace lowreg {

using cplx = std::complex<double>;

// Collocation grid on [0, 2*pi) with N points and wavenumbers
// k in {-N/2, ..., N/2 - 1}. Spectral storage is FFT order: slot i holds
// wavenumber i for i < N/2 and i - N otherwise.
struct fourier_grid {
    int n_modes;

    explicit fourier_grid(int n) : n_modes(n) {
        if (n < 4 || n % 2 != 0)
            throw std::invalid_argument("fourier_grid: n_modes must be even and >= 4");
    }

    int wavenumber(int idx) const { return idx < n_modes / 2 ? idx : idx - n_modes; }

    int index_of(int k) const {
        int m = k % n_modes;
        return m < 0 ? m + n_modes : m;
    }

    double point(int j) const { return 2.0 * std::numbers::pi * j / n_modes; }

    bool operator==(const fourier_grid&) const = default;
};

struct field {
    fourier_grid grid;
    std::vector<cplx> coeff;  // FFT order, size grid.n_modes

    explicit field(fourier_grid g) : grid(g), coeff(static_cast<size_t>(g.n_modes)) {}

    int size() const { return grid.n_modes; }

    cplx& at_mode(int k) { return coeff[static_cast<size_t>(grid.index_of(k))]; }
    const cplx& at_mode(int k) const { return coeff[static_cast<size_t>(grid.index_of(k))]; }
};

inline field operator+(field a, const field& b) {
    for (int i = 0; i < a.size(); ++i) a.coeff[i] += b.coeff[i];
    return a;
}

inline field operator-(field a, const field& b) {
    for (int i = 0; i < a.size(); ++i) a.coeff[i] -= b.coeff[i];
    return a;
}

inline field operator*(cplx s, field a) {
    for (auto& c : a.coeff) c *= s;
    return a;
}

}  // namespace lowreg
