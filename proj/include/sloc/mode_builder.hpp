#pragma once

#include <optional>

#include "sloc/radial_seeds.hpp"

namespace sloc {

// 3D inner products of the single-curl basis reduce through int sin^2 dOmega.
inline constexpr double kAngular = 8.0 * pi / 3.0;

struct OrthoDiagnostics {
    cplx I{0.0, 0.0};
    double J = 1.0;
    cplx beta{0.0, 0.0};
    double eta_before = 0.0;
    double eta_after = 0.0;
    bool relabeled = false;  // spectrum mirrored so that eta <= 1/2
};

struct ModePair {
    Spectrum spectrum;  // modified spectrum, scaled so that ||xi1|| = 1
    double C = 0.0;
    double gamma = 0.0;
    double eta = 0.0;
    double norm1 = 0.0;
    double norm2 = 0.0;
    OrthoDiagnostics diag;
    double scale = 1.0;  // spectrum = scale * (G - beta G*(-k))
    std::optional<SeedFunction> seed;  // source seed, when built from one
};

// int_0^K |G|^2 k dk and int_{-K}^0 |G|^2 |k| dk, Simpson on each half.
double positive_weight(const Spectrum& G);
double negative_weight(const Spectrum& G);

// Raw negative-k weight fraction, without relabeling.
double negative_fraction(const Spectrum& G);

// Negative-k weight fraction, relabeled to lie in [0, 1/2].
double eta_from_spectrum(const Spectrum& G);

double eta_gaussian_analytic(double k0sigma);

// G'(k) = G*(-k), the spectrum of g*.
Spectrum mirror(const Spectrum& G);

// I = int_0^K G(k) G(-k) k dk / int |G|^2 |k| dk.
cplx overlap_ratio(const Spectrum& G);

// |int_0^K G(k) G(-k) k dk| / int |G|^2 |k| dk.
double reduced_orthogonality(const Spectrum& G);

struct OrthoResult {
    Spectrum spectrum;
    OrthoDiagnostics diag;
};

OrthoResult orthogonalize(const Spectrum& G);

// Orthogonalize and scale a given spectrum. A spectrum with no negative-k
// weight yields gamma = 0 and C = infinity.
ModePair mode_pair_from_spectrum(const Spectrum& G);

ModePair build_mode_pair(const SeedFunction& g, const SpectralGridRequest& req = {});

// Seed of the modified spectrum: scale * (g - beta g*), with g -> g* first when relabeled.
cplx modified_seed_value(const ModePair& mp, const SeedFunction& g, double r);
cplx modified_seed_derivative(const ModePair& mp, const SeedFunction& g, double r);

// Mean k weighted by |G(k) k|^2 over k >= 0.
double effective_carrier(const Spectrum& G);

}  // namespace sloc
