#pragma once

#include <iosfwd>
#include <string>

#include "sloc/numerics.hpp"

namespace sloc {

struct RadialGrid {
    double r_max = 1.0;
    int n_points = 2;

    RadialGrid() = default;
    RadialGrid(double r_max, int n_points);
    double spacing() const { return r_max / (n_points - 1); }
    double r(int i) const { return i * spacing(); }
    RVec nodes() const;
};

enum class SeedKind { Tri2Carrier, TruncatedGaussian, Sampled };

std::string to_string(SeedKind k);

// Default number of intervals on the support. A multiple of 12 puts the knots
// of the tri*tri envelope on panel boundaries, where the cubic panels
// reproduce it exactly.
inline constexpr int kDefaultSeedIntervals = 4092;

// Compactly supported seed g(r) on [0, r0). Samples live on a grid spanning
// [0, r0]; the sample at r0 is the left limit.
struct SeedFunction {
    SeedKind kind = SeedKind::Sampled;
    double r0 = 1.0;
    double k0 = 0.0;     // carrier; samples are demodulated by it before interpolation
    double sigma = 0.0;  // Gaussian width
    double center = 0.0; // Gaussian center
    double amplitude = 1.0;
    RadialGrid grid;
    CVec samples;

    static SeedFunction tri2_carrier(double r0, double k0, int intervals = kDefaultSeedIntervals);
    static SeedFunction truncated_gaussian(double r0, double k0, double sigma, int intervals = kDefaultSeedIntervals);
    static SeedFunction sampled(const RadialGrid& grid, CVec samples, double carrier = 0.0);

    bool has_analytic() const { return kind != SeedKind::Sampled; }
    cplx value(double r) const;
    cplx derivative(double r) const;  // one-sided from the right at panel joints
    double envelope(double r) const { return std::abs(value(r)); }
};

// B3 spline centered at 0 with support (-2, 2); peak 2/3.
double cubic_bspline(double x);

struct Spectrum {
    double k_max = 0.0;  // grid is [-k_max, k_max]
    int n_points = 0;    // odd, with an even number of intervals on each half
    CVec values;
    double tail_fraction = 0.0;  // estimated excluded weight of |G|^2|k|
    bool tail_ok = true;

    double k_min() const { return -k_max; }
    double dk() const { return 2.0 * k_max / (n_points - 1); }
    double k(int i) const { return -k_max + i * dk(); }
    int zero_index() const { return (n_points - 1) / 2; }
    RVec nodes() const;

    static Spectrum on_grid(double k_max, int n_points);
};

struct SpectralGridRequest {
    double k_max = 0.0;  // 0 selects the adaptive rule
    int n_points = 16385;
    double tail_tol = 1e-12;
    // Adaptive rule: k_max = |k0| + kappa / r0 with kappa doubled from
    // kappa_min until the excluded tail is below tail_tol, capped at kappa_cap.
    double kappa_min = 8.0;
    double kappa_cap = 1024.0;
};

// G(k) = (1/2pi) int_0^r0 g(r) e^{-ikr} dr. Panels of three intervals carry a
// cubic interpolant of the demodulated samples, integrated exactly against
// the oscillatory factor.
Spectrum forward_transform(const SeedFunction& g, const SpectralGridRequest& req = {});

// Same integral at arbitrary wavenumbers.
CVec forward_transform_at(const SeedFunction& g, const RVec& ks);

// Closed-form spectrum of the tri*tri seed on a given grid.
Spectrum analytic_spectrum(const SeedFunction& g, double k_max, int n_points);

enum class HalfLine { Full, Positive, Negative };

// int G(k) (ik)^deriv e^{ikx} dk by the trapezoid rule over the chosen part of
// the grid. The k = 0 sample belongs to the positive part.
CVec inverse_transform_at(const Spectrum& G, const RVec& x, int deriv = 0, HalfLine part = HalfLine::Full);

CVec inverse_transform(const Spectrum& G, const RadialGrid& grid);

struct TruncationResult {
    SeedFunction seed;
    double truncated_mass = 0.0;  // int_{r>r0}|g|^2 / int |g|^2 over the input grid
};

TruncationResult truncate_support(const RadialGrid& grid, const CVec& samples, double r0, double carrier = 0.0);

SeedFunction scale_coordinates(const SeedFunction& g, double s);

struct GaussianFitReport {
    // closest fit in the max norm
    double sigma_fit = 0.0;
    double center_fit = 0.0;
    double amplitude_fit = 0.0;
    double max_deviation_fraction = 0.0;
    // least-squares fit, kept for comparison
    double sigma_lsq = 0.0;
    double max_deviation_lsq = 0.0;
};

// Envelope normalized to unit peak, then fitted by A exp(-(r-c)^2 / 2 s^2).
GaussianFitReport gaussian_fit_report(const SeedFunction& g, int n_eval = 4001);

void write_seed_csv(std::ostream& os, const SeedFunction& g, const RadialGrid& grid);
void write_spectrum_csv(std::ostream& os, const Spectrum& G);

// Plancherel sides: 2 pi int |G|^2 dk and int |g|^2 dr.
double spectrum_energy(const Spectrum& G);
double seed_energy(const SeedFunction& g);

}  // namespace sloc
