#pragma once

#include <cmath>
#include <complex>

namespace lowreg {

/* phi1(z) = (e^z - 1)/z and phi2(z) = (e^z - phi1(z))/z, continued through
   z = 0 by their Taylor series. phi2's convention is fixed by the quadrature
   identity int_0^t s e^{as} ds = t^2 phi2(at), which is what the second-order
   resonance scheme discretizes; the alternative (e^z-1-z)/z^2 does not
   satisfy it. Below |z| = 1e-2 the closed forms lose digits to cancellation,
   so a series long enough for full double precision takes over (degree 8:
   the first dropped term is < 1e-21 at the threshold). */

inline constexpr double phi_series_threshold = 1e-2;

inline std::complex<double> phi1(std::complex<double> z) {
    if (std::abs(z) < phi_series_threshold) {
        // sum_{n>=0} z^n / (n+1)!
        return 1.0 + z * (1.0 / 2 + z * (1.0 / 6 + z * (1.0 / 24 + z * (1.0 / 120 +
               z * (1.0 / 720 + z * (1.0 / 5040 + z * (1.0 / 40320 + z * (1.0 / 362880))))))));
    }
    return (std::exp(z) - 1.0) / z;
}

inline std::complex<double> phi2(std::complex<double> z) {
    if (std::abs(z) < phi_series_threshold) {
        // sum_{m>=0} (m+1)/(m+2)! z^m
        return 1.0 / 2 + z * (1.0 / 3 + z * (1.0 / 8 + z * (1.0 / 30 + z * (1.0 / 144 +
               z * (1.0 / 840 + z * (1.0 / 5760 + z * (1.0 / 45360 + z * (1.0 / 403200))))))));
    }
    return (std::exp(z) - phi1(z)) / z;
}

}  // namespace lowreg
