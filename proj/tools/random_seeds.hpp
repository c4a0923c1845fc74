#pragma once

#include <random>

#include "sloc/radial_seeds.hpp"

namespace sloc::cli {

// Sum of three cubic B-spline bumps with random complex weights inside
// [0, r0), times a carrier with k0 r0 drawn from [kr_lo, kr_hi].
inline SeedFunction random_carrier_seed(std::mt19937_64& rng, double r0, double kr_lo = 2.0, double kr_hi = 30.0,
                                        int intervals = kDefaultSeedIntervals) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double k0 = (kr_lo + (kr_hi - kr_lo) * u(rng)) / r0;
    struct Bump {
        double c, w;
        cplx a;
    } bumps[3];
    for (auto& b : bumps) {
        b.w = r0 * (0.08 + 0.12 * u(rng));  // half width, support 2w
        b.c = 2.0 * b.w + (r0 - 4.0 * b.w) * u(rng);
        b.a = std::polar(0.3 + u(rng), 2.0 * pi * u(rng));
    }
    const RadialGrid grid(r0, intervals + 1);
    CVec s(grid.n_points);
    for (int i = 0; i < grid.n_points; ++i) {
        const double r = grid.r(i);
        cplx v = 0.0;
        for (const auto& b : bumps) v += b.a * cubic_bspline((r - b.c) / (0.5 * b.w));
        s[i] = v * std::polar(1.0, k0 * r);
    }
    return SeedFunction::sampled(grid, s, k0);
}

}  // namespace sloc::cli
