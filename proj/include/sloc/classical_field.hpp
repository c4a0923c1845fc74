#pragma once

#include "sloc/mode_builder.hpp"
#include "sloc/radial_seeds.hpp"

namespace sloc {

// Radial profiles at one time. The vector field is i sin(theta) df/dr phi-hat,
// and E1 + conj(E2)/C = i df/dr.
struct RadialFieldProfile {
    double time = 0.0;
    RadialGrid grid;
    CVec f;
    CVec df_dr;
    CVec E1;  // i d/dr of the k >= 0 part
    CVec E2;  // -i C conj(d/dr of the k < 0 part)
    double C = 0.0;
};

// u(r) = int_0^K G(k) e^{ikr} dk over the positive part of the grid.
CVec u_of_r(const Spectrum& G, const RVec& r);

RadialFieldProfile dalembert_f(const Spectrum& G, double t, const RadialGrid& grid);

// Same, with f and df/dr taken from the source seed when the pair has one, so
// the profile vanishes exactly outside [t, r0 + t). The E1/E2 split still
// comes from the spectrum.
RadialFieldProfile dalembert_f(const ModePair& mp, double t, const RadialGrid& grid);

// L1 norm of the centred-difference residual of d_t^2(rf) - d_r^2(rf), with
// time step half the radial spacing, relative to the L1 norm of d_r^2(rf).
double wave_residual(const Spectrum& G, double t, const RadialGrid& grid);

// Wavenumber below which all but 1e-6 of int |G|^2 dk lies.
double resolution_wavenumber(const Spectrum& G);

// <:E^2:>/sin^2(theta) from the mode profiles.
RVec esq_closed_form(const CVec& E1, const CVec& E2, double gamma, int n);

RVec esq_profile(const ModePair& mp, int n, double t, const RadialGrid& grid);

// int_0^rmax |d/dr (r f)|^2 dr.
double radial_energy(const RadialFieldProfile& p);

}  // namespace sloc
