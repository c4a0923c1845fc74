#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace sloc {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;
using RVec = std::vector<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr cplx I1{0.0, 1.0};

namespace num {

// Composite Simpson weights for n points (n odd) with unit spacing.
RVec simpson_weights(std::size_t n);

double simpson(const RVec& y, double h);
cplx simpson(const CVec& y, double h);

// Gauss-Legendre nodes and weights on [a, b] split into equal panels.
void gauss_legendre_panels(double a, double b, int panels, int order, RVec& x, RVec& w);

// j1(x) = sin x / x^2 - cos x / x with a short series near the origin.
double sph_j1(double x);

// Riemann zeta for real s != 1.
double zeta(double s);

// Lagrange interpolation through 4 equally spaced samples y0..y3 at offset s
// in units of the spacing (s in [0, 3]).
cplx cubic_lagrange(const cplx* y, double s);
cplx cubic_lagrange_derivative(const cplx* y, double s);

// Runs f(i) for i in [0, n) on `threads` workers. Results are written by the
// callee into caller-owned slots, so ordering is by index.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& f);

// Thread count from SLOC_THREADS, falling back to 1.
int default_threads();

// %.17g formatting used for every CSV value.
std::string fmt17(double v);

}  // namespace num
}  // namespace sloc
