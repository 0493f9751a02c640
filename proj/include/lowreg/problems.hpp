#pragma once

#include <functional>
#include <stdexcept>
#include <string>

#include "spectral.hpp"

namespace lowreg {

using multiplier_fn = std::function<cplx(int)>;

// Abstract evolution equation du/dt - Sigma u = P(u, conj u) with dispersion
// symbol sigma(k) (Re sigma <= 0 so e^{t Sigma} stays bounded) and polynomial
// nonlinearity c u^l conj(u)^m, plus an optional resonance-free linear piece
// linear_coeff * u (used by Ginzburg-Landau's gamma u (1 - |u|^2)).
struct evolution_problem {
    std::string name;
    multiplier_fn sigma;
    cplx nl_coeff = 0.0;
    int ell = 2;
    int m = 1;
    cplx linear_coeff = 0.0;
};

inline evolution_problem nls_cubic() {
    return {"nls_cubic", [](int k) { return cplx(0.0, -double(k) * k); }, cplx(0.0, -1.0), 2, 1, 0.0};
}

inline evolution_problem heat_cubic(cplx c = 1.0) {
    return {"heat_cubic", [](int k) { return cplx(-double(k) * k, 0.0); }, c, 2, 1, 0.0};
}

inline evolution_problem ginzburg_landau(cplx alpha, cplx gamma) {
    if (alpha.real() < 0.0)
        throw std::invalid_argument("ginzburg_landau: Re(alpha) must be >= 0");
    return {"ginzburg_landau",
            [alpha](int k) { return -alpha * (double(k) * k); },
            -gamma, 2, 1, gamma};
}

inline evolution_problem make_problem(const std::string& preset) {
    if (preset == "nls_cubic") return nls_cubic();
    if (preset == "heat_cubic") return heat_cubic();
    if (preset == "ginzburg_landau") return ginzburg_landau(1.0, 1.0);
    throw std::invalid_argument("make_problem: unknown preset '" + preset +
                                "' (valid: nls_cubic, heat_cubic, ginzburg_landau)");
}

inline field evaluate_nonlinearity(const evolution_problem& p, const field& f, bool dealias = false) {
    field out = p.nl_coeff * pointwise_power(f, p.ell, p.m, dealias);
    if (p.linear_coeff != 0.0) out = out + p.linear_coeff * f;
    return out;
}

}  // namespace lowreg
