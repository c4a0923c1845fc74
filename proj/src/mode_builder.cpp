#include "sloc/mode_builder.hpp"

#include <cmath>
#include <limits>

#include "sloc/errors.hpp"

namespace sloc {

namespace {

constexpr double kDegenerateTol = 1e-10;

template <class F>
double simpson_half(const Spectrum& G, bool positive, F f) {
    const int z = G.zero_index(), n = G.n_points;
    RVec y;
    if (positive)
        for (int i = z; i < n; ++i) y.push_back(f(i));
    else
        for (int i = 0; i <= z; ++i) y.push_back(f(i));
    return num::simpson(y, G.dk());
}

}  // namespace

double positive_weight(const Spectrum& G) {
    return simpson_half(G, true, [&](int i) { return std::norm(G.values[i]) * G.k(i); });
}

double negative_weight(const Spectrum& G) {
    return simpson_half(G, false, [&](int i) { return std::norm(G.values[i]) * -G.k(i); });
}

double negative_fraction(const Spectrum& G) {
    const double wp = positive_weight(G), wn = negative_weight(G);
    if (!(wp + wn > 0.0)) throw DomainError("eta: spectrum has zero weight");
    return wn / (wp + wn);
}

double eta_from_spectrum(const Spectrum& G) {
    const double e = negative_fraction(G);
    return e > 0.5 ? 1.0 - e : e;
}

double eta_gaussian_analytic(double x) {
    if (!(x >= 0.0)) throw DomainError("eta_gaussian_analytic: k0 sigma must be >= 0");
    const double sp = std::sqrt(pi);
    // 1 - sqrt(pi) x / (e + sqrt(pi) x erf x) rewritten with erfc to avoid cancellation
    const double e = std::exp(-x * x);
    return 0.5 * (e - sp * x * std::erfc(x)) / (e + sp * x * std::erf(x));
}

Spectrum mirror(const Spectrum& G) {
    Spectrum M = G;
    for (int i = 0; i < G.n_points; ++i) M.values[i] = std::conj(G.values[G.n_points - 1 - i]);
    return M;
}

cplx overlap_ratio(const Spectrum& G) {
    const double total = positive_weight(G) + negative_weight(G);
    if (!(total > 0.0)) throw DomainError("overlap_ratio: spectrum has zero weight");
    const int n = G.n_points;
    const double re = simpson_half(G, true, [&](int i) { return (G.values[i] * G.values[n - 1 - i]).real() * G.k(i); });
    const double im = simpson_half(G, true, [&](int i) { return (G.values[i] * G.values[n - 1 - i]).imag() * G.k(i); });
    return cplx(re, im) / total;
}

double reduced_orthogonality(const Spectrum& G) { return std::abs(overlap_ratio(G)); }

OrthoResult orthogonalize(const Spectrum& G0) {
    const double e0 = negative_fraction(G0);
    if (std::abs(e0 - 0.5) < kDegenerateTol)
        throw DegenerateSeedError(
            "degenerate seed: positive and negative wavenumber weights are equal (eta = 1/2); "
            "multiply the seed by a carrier exp(i k0 r)");
    OrthoResult res;
    res.diag.relabeled = e0 > 0.5;
    const Spectrum G = res.diag.relabeled ? mirror(G0) : G0;
    const double eta = negative_fraction(G);
    const cplx I = overlap_ratio(G);
    const double disc = 1.0 - 4.0 * std::norm(I);
    if (!(disc > kDegenerateTol))
        throw DegenerateSeedError(
            "degenerate seed: xi1 and xi2 are parallel (|I| = 1/2); multiply the seed by a carrier exp(i k0 r)");
    const double J = std::sqrt(disc);
    const cplx beta = std::abs(I) == 0.0 ? cplx(0.0) : (1.0 - J) / (2.0 * std::conj(I));

    res.spectrum = G;
    const int n = G.n_points;
    for (int i = 0; i < n; ++i) res.spectrum.values[i] = G.values[i] - beta * std::conj(G.values[n - 1 - i]);

    res.diag.I = I;
    res.diag.J = J;
    res.diag.beta = beta;
    res.diag.eta_before = eta;
    res.diag.eta_after = negative_fraction(res.spectrum);
    return res;
}

ModePair mode_pair_from_spectrum(const Spectrum& G) {
    ModePair mp;
    OrthoResult o;
    if (negative_weight(G) == 0.0) {
        o.spectrum = G;
        o.diag.eta_before = o.diag.eta_after = 0.0;
    } else {
        o = orthogonalize(G);
    }
    mp.diag = o.diag;
    const double wp = positive_weight(o.spectrum);
    if (!(wp > 0.0)) throw DomainError("mode pair: no positive-k weight");
    mp.scale = 1.0 / std::sqrt(kAngular * wp);
    mp.spectrum = o.spectrum;
    for (auto& v : mp.spectrum.values) v *= mp.scale;
    const double wp2 = positive_weight(mp.spectrum), wn2 = negative_weight(mp.spectrum);
    mp.norm1 = kAngular * wp2;
    if (wn2 == 0.0) {
        mp.C = std::numeric_limits<double>::infinity();
        mp.gamma = 0.0;
        mp.eta = 0.0;
        mp.norm2 = 1.0;
        return mp;
    }
    mp.C = 1.0 / std::sqrt(kAngular * wn2);
    mp.norm2 = mp.C * mp.C * kAngular * wn2;
    mp.gamma = std::atanh(1.0 / mp.C);
    mp.eta = 1.0 / (mp.C * mp.C + 1.0);
    return mp;
}

ModePair build_mode_pair(const SeedFunction& g, const SpectralGridRequest& req) {
    ModePair mp = mode_pair_from_spectrum(forward_transform(g, req));
    mp.seed = g;
    return mp;
}

cplx modified_seed_value(const ModePair& mp, const SeedFunction& g, double r) {
    cplx v = g.value(r);
    if (mp.diag.relabeled) v = std::conj(v);
    return mp.scale * (v - mp.diag.beta * std::conj(v));
}

cplx modified_seed_derivative(const ModePair& mp, const SeedFunction& g, double r) {
    cplx v = g.derivative(r);
    if (mp.diag.relabeled) v = std::conj(v);
    return mp.scale * (v - mp.diag.beta * std::conj(v));
}

double effective_carrier(const Spectrum& G) {
    const double den = simpson_half(G, true, [&](int i) { return std::norm(G.values[i] * G.k(i)); });
    if (!(den > 0.0)) throw DomainError("effective_carrier: zero positive-k weight");
    const double num = simpson_half(G, true, [&](int i) { return G.k(i) * std::norm(G.values[i] * G.k(i)); });
    return num / den;
}

}  // namespace sloc
