#pragma once

#include <catch2/catch_amalgamated.hpp>

#include <lowreg/grid.hpp>
#include <lowreg/initial_data.hpp>
#include <lowreg/spectral.hpp>
#include <lowreg/transform.hpp>

namespace testutil {

using namespace lowreg;

inline double rel_l2(const field& a, const field& b) {
    const double scale = std::max(l2_norm(a), l2_norm(b));
    if (scale == 0.0) return l2_norm(a - b);
    return l2_norm(a - b) / scale;
}

inline field random_field(int n, double sigma, std::uint64_t seed, bool normalize = true) {
    rough_data_spec spec;
    spec.sigma = sigma;
    spec.seed = seed;
    spec.normalize = normalize;
    return rough_field(fourier_grid(n), spec);
}

}  // namespace testutil
