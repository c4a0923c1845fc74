#pragma once

#include "sloc/mode_builder.hpp"
#include "sloc/radial_seeds.hpp"

namespace sloc {

// Photon with G(k) = A exp(-sigma^2 (k-k0)^2 / 2) exp(-i k center) for k >= 0
// and zero for k < 0, scaled so that (8 pi/3) int_0 |G|^2 k dk = 1.
struct PhotonSpec {
    Spectrum spectrum;
    double k0 = 0.0;
    double sigma = 1.0;
    double center = 0.0;
    double amplitude = 1.0;
    bool normalized = false;

    static PhotonSpec gaussian(double k0, double sigma, double center);
    cplx value(double k) const;
    bool narrow_band() const { return k0 * sigma >= 10.0; }
};

struct MuNu {
    double mu = 0.0;
    cplx nu{0.0, 0.0};
    double r_max = 0.0;
};

// xi'(r) = -(4 pi / (2 pi)^{3/2}) int_0 G(k) k^{3/2} j1(kr) dk, so that
// (8 pi/3) int_0^inf |xi'|^2 r^2 dr = 1 for a normalized photon.
CVec photon_radial_derivative(const PhotonSpec& ph, const RVec& r);

// Outer radius where |xi'|^2 r^2 has dropped below 1e-14 of its peak.
double photon_r_max(const PhotonSpec& ph, double r0);

MuNu mu_nu(const PhotonSpec& ph, double r0);

double upper_bound(double mu, cplx nu);

struct LowerBound {
    double F_lower = 0.0;
    double overlap = 0.0;
    double eta_trunc = 0.0;
    double tail_fraction = 0.0;  // excluded spectral tail of the truncated seed
};

LowerBound lower_bound(const PhotonSpec& ph, double r0);

// |max_phi |c_xi(phi)|^2 - (mu + |nu|)/2| with c_xi from an explicit smearing
// function on Gauss-Legendre panels.
struct CXiCheck {
    double c_xi_sq = 0.0;
    double phi_max = 0.0;
    double half_mu_plus_abs_nu = 0.0;
    double residual = 0.0;
};

CXiCheck consistency_c_xi_detail(const PhotonSpec& ph, double r0);
double consistency_c_xi(const PhotonSpec& ph, double r0);

struct BoundReport {
    double r0 = 0.0;
    double mu = 0.0;
    cplx nu{0.0, 0.0};
    double F_upper = 1.0;
    double F_lower = 0.0;
    double overlap = 0.0;
    double eta_trunc = 0.0;
    double r_max = 0.0;
    double tail_fraction = 0.0;
};

BoundReport bound_report(const PhotonSpec& ph, double r0);

}  // namespace sloc
