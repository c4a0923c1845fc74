#include <cmath>

#include "doctest.h"
#include "sloc/errors.hpp"
#include "sloc/radial_seeds.hpp"

using namespace sloc;

namespace {

double max_abs(const CVec& v) {
    double m = 0.0;
    for (const auto& x : v) m = std::max(m, std::abs(x));
    return m;
}

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

SeedFunction sampled_gaussian(double r0, double k0, double sigma, int n) {
    const RadialGrid grid(r0, n);
    CVec s(n);
    for (int i = 0; i < n; ++i) {
        const double d = (grid.r(i) - r0 / 2) / sigma;
        s[i] = std::exp(-0.5 * d * d) * std::polar(1.0, k0 * grid.r(i));
    }
    return SeedFunction::sampled(grid, s, k0);
}

SpectralGridRequest wide_request() {
    SpectralGridRequest req;
    req.k_max = 4.0 * pi + 4096.0;
    req.n_points = 32769;
    return req;
}

}  // namespace

TEST_CASE("tri*tri seed") {
    const SeedFunction g = SeedFunction::tri2_carrier(1.0, 4.0 * pi);
    CHECK(std::abs(g.value(0.5)) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(std::abs(g.value(0.0)) == 0.0);
    CHECK(std::abs(g.value(1.0)) < 1e-15);
    CHECK(std::abs(g.value(1.2)) == 0.0);
    CHECK(std::abs(g.value(-0.1)) == 0.0);
    // derivative against a centred difference
    for (double r : {0.2, 0.37, 0.61}) {
        const double h = 1e-6;
        const cplx fd = (g.value(r + h) - g.value(r - h)) / (2 * h);
        CHECK(std::abs(g.derivative(r) - fd) < 1e-6 * std::abs(g.derivative(r)) + 1e-8);
    }
}

TEST_CASE("forward transform") {
    const SeedFunction g = SeedFunction::tri2_carrier(1.0, 4.0 * pi);
    const Spectrum G = forward_transform(g);
    const Spectrum A = analytic_spectrum(g, G.k_max, G.n_points);
    const double peak = max_abs(A.values);
    double worst = 0.0;
    for (int i = 0; i < G.n_points; ++i)
        if (std::abs(A.values[i]) > 1e-6 * peak)
            worst = std::max(worst, std::abs(G.values[i] - A.values[i]) / std::abs(A.values[i]));
    CHECK(worst < 1e-6);

    // the closed form is sinc^4[(k - k0) r0 / 8] e^{-i k r0 / 2} up to scale
    const int i0 = G.zero_index();
    double shape = 0.0;
    const cplx ref = A.values[i0] / (std::pow(sinc((0.0 - 4.0 * pi) / 8.0), 4));
    for (int i = 0; i < A.n_points; i += 37) {
        const double k = A.k(i);
        const cplx want = ref * std::pow(sinc((k - 4.0 * pi) / 8.0), 4) * std::polar(1.0, -k / 2.0);
        shape = std::max(shape, std::abs(A.values[i] - want) / peak);
    }
    CHECK(shape < 1e-12);

    // Plancherel
    CHECK(spectrum_energy(G) == doctest::Approx(seed_energy(g)).epsilon(1e-6));

    // zero seed
    const RadialGrid grid(1.0, 101);
    const Spectrum Z = forward_transform(SeedFunction::sampled(grid, CVec(101, 0.0)));
    CHECK(max_abs(Z.values) == 0.0);
}

TEST_CASE("truncated Gaussian spectrum against the complex error function form") {
    const SeedFunction g = SeedFunction::truncated_gaussian(1.0, 30.0, 0.125);
    const RVec ks{30.0, 35.0, 10.0, 0.0, -30.0, 80.0};
    // mpmath: s sqrt(pi/2) e^{-i q c - q^2 s^2/2} [erf(z1) - erf(z0)] / 2 pi, q = k - k0
    const cplx want[] = {{0.049864626300819072, 0.0},
                         {-0.032865207327011829, -0.024551042676649226},
                         {-0.0018394963479820828, -0.0011926573742856312},
                         {-3.5323371682198206e-5, 3.0236573057800508e-5},
                         {-2.2949665891290094e-7, 1.470002108860894e-6},
                         {-1.1825877400215941e-6, -1.5790669191280163e-7}};
    const CVec got = forward_transform_at(g, ks);
    for (std::size_t i = 0; i < ks.size(); ++i) CHECK(std::abs(got[i] - want[i]) < 1e-10 * std::abs(want[0]));
}

TEST_CASE("narrow sampled Gaussian has a Gaussian power spectrum") {
    const double r0 = 1.0, k0 = 40.0, s = r0 / 16;
    const Spectrum G = forward_transform(sampled_gaussian(r0, k0, s, 4093));
    const double p0 = std::norm(forward_transform_at(sampled_gaussian(r0, k0, s, 4093), {k0})[0]);
    double worst = 0.0;
    int used = 0;
    for (int i = 0; i < G.n_points; ++i) {
        const double k = G.k(i), want = std::exp(-(k - k0) * (k - k0) * s * s);
        if (want < 1e-6) continue;
        worst = std::max(worst, std::abs(std::norm(G.values[i]) / p0 - want) / want);
        ++used;
    }
    CHECK(used > 100);
    CHECK(worst < 0.01);
}

TEST_CASE("inverse transform") {
    const SeedFunction g = SeedFunction::tri2_carrier(1.0, 4.0 * pi);
    const SpectralGridRequest req = wide_request();
    const Spectrum A = analytic_spectrum(g, req.k_max, req.n_points);
    const RadialGrid grid(1.0, 201);
    const CVec back = inverse_transform(A, grid);
    double err = 0.0;
    for (int i = 0; i < grid.n_points; ++i) err = std::max(err, std::abs(back[i] - g.value(grid.r(i))));
    CHECK(err < 1e-8 * (2.0 / 3.0));

    // modulation: shift by m grid steps multiplies by e^{i m dk r}
    const int m = 40;
    Spectrum S = A;
    for (int i = 0; i < S.n_points; ++i) S.values[i] = (i >= m) ? A.values[i - m] : cplx(0.0);
    const CVec shifted = inverse_transform(S, grid);
    double mod = 0.0;
    for (int i = 0; i < grid.n_points; ++i)
        mod = std::max(mod, std::abs(shifted[i] - back[i] * std::polar(1.0, m * A.dk() * grid.r(i))));
    CHECK(mod < 1e-10);

    Spectrum Z = Spectrum::on_grid(50.0, 101);
    CHECK(max_abs(inverse_transform(Z, grid)) == 0.0);
}

TEST_CASE("resolution errors") {
    // carrier not resolved by the samples
    const RadialGrid grid(1.0, 11);
    CVec s(11);
    for (int i = 0; i < 11; ++i) s[i] = std::polar(1.0, 30.0 * grid.r(i));
    CHECK_THROWS_AS(forward_transform(SeedFunction::sampled(grid, s)), ResolutionError);

    const SeedFunction g = SeedFunction::tri2_carrier(1.0, 4.0 * pi);
    SpectralGridRequest low;
    low.k_max = 10.0;
    low.n_points = 101;
    CHECK_THROWS_AS(forward_transform(g, low), ResolutionError);
    SpectralGridRequest sparse;
    sparse.k_max = 2000.0;
    sparse.n_points = 101;
    CHECK_THROWS_AS(forward_transform(g, sparse), ResolutionError);
    CHECK_THROWS_AS(forward_transform(SeedFunction::truncated_gaussian(1.0, 10.0, 0.01, 12)), ResolutionError);
}

TEST_CASE("truncate_support") {
    const RadialGrid grid(2.0, 801);
    CVec in(grid.n_points);
    for (int i = 0; i < grid.n_points; ++i) in[i] = grid.r(i) < 0.8 ? std::sin(pi * grid.r(i) / 0.8) : 0.0;
    const TruncationResult same = truncate_support(grid, in, 1.0);
    CHECK(same.truncated_mass == 0.0);
    for (int i = 0; i <= 400; ++i) CHECK(std::abs(same.seed.value(grid.r(i)) - in[i]) < 1e-15);
    CHECK(same.seed.r0 == 1.0);

    // Gaussian at r0/2 with sigma = r0/8: mass beyond r0 is erfc(4/sqrt 2)/2 relative, about 3e-8
    CVec gs(grid.n_points);
    for (int i = 0; i < grid.n_points; ++i) {
        const double d = (grid.r(i) - 0.5) / 0.125;
        gs[i] = std::exp(-0.5 * d * d) * std::polar(1.0, 10.0 * grid.r(i));
    }
    const TruncationResult tg = truncate_support(grid, gs, 1.0, 10.0);
    CHECK(tg.truncated_mass < 1e-7);
    CHECK(tg.truncated_mass > 0.0);
    for (double r = 1.0; r < 2.0; r += 0.013) CHECK(std::abs(tg.seed.value(r)) == 0.0);

    // r0 -> 0+
    CVec flat(grid.n_points, 1.0);
    const TruncationResult tiny = truncate_support(grid, flat, 1e-9);
    CHECK(tiny.truncated_mass > 1.0 - 1e-8);
    for (double r = 1e-9; r < 2.0; r += 0.1) CHECK(std::abs(tiny.seed.value(r)) == 0.0);

    CHECK_THROWS_AS(truncate_support(grid, in, 0.0), DomainError);
    CHECK_THROWS_AS(truncate_support(grid, in, -1.0), DomainError);
}

TEST_CASE("scale_coordinates") {
    const SeedFunction g = SeedFunction::tri2_carrier(1.0, 4.0 * pi);
    const SeedFunction same = scale_coordinates(g, 1.0);
    for (double r = 0.0; r < 1.2; r += 0.01) CHECK(same.value(r) == g.value(r));
    for (double s : {0.5, 2.0}) {
        const SeedFunction h = scale_coordinates(g, s);
        CHECK(h.r0 == doctest::Approx(1.0 / s).epsilon(1e-15));
        for (double r = 0.0; r < 1.2; r += 0.01) CHECK(std::abs(h.value(r / s) - g.value(r)) < 1e-13);
    }
    CHECK_THROWS_AS(scale_coordinates(g, 0.0), DomainError);
}

TEST_CASE("Gaussian fit report") {
    const GaussianFitReport rep = gaussian_fit_report(SeedFunction::tri2_carrier(1.0, 4.0 * pi));
    // scipy minimax and least-squares fits of B3(4r-2) normalized to peak 1
    CHECK(rep.sigma_fit == doctest::Approx(0.14945202).epsilon(1e-6));
    CHECK(rep.max_deviation_fraction == doctest::Approx(0.0123297561).epsilon(1e-6));
    CHECK(rep.center_fit == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(rep.sigma_lsq == doctest::Approx(0.15010087).epsilon(1e-5));
    CHECK(rep.max_deviation_lsq == doctest::Approx(0.0131971).epsilon(1e-4));
    CHECK(rep.max_deviation_fraction > 0.007);
    CHECK(rep.max_deviation_fraction < 0.013);
    CHECK(std::abs(rep.sigma_fit - 0.15) < 0.015);

    const GaussianFitReport self = gaussian_fit_report(sampled_gaussian(1.0, 20.0, 0.1, 4093));
    CHECK(self.max_deviation_fraction < 1e-6);
    CHECK(self.sigma_fit == doctest::Approx(0.1).epsilon(1e-6));

    const RadialGrid grid(1.0, 101);
    CHECK_THROWS_AS(gaussian_fit_report(SeedFunction::sampled(grid, CVec(101, 0.0))), FitError);
    CHECK_THROWS_AS(gaussian_fit_report(SeedFunction::sampled(grid, CVec(101, 1.0))), FitError);
}
