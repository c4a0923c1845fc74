#include "sloc/radial_seeds.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <gsl/gsl_multifit_nlinear.h>
#include <gsl/gsl_multimin.h>
#include <gsl/gsl_vector.h>

#include "sloc/errors.hpp"

namespace sloc {

RadialGrid::RadialGrid(double r_max_, int n_points_) : r_max(r_max_), n_points(n_points_) {
    if (!(r_max_ > 0.0) || n_points_ < 2) throw DomainError("RadialGrid: need r_max > 0 and n_points >= 2");
}

RVec RadialGrid::nodes() const {
    RVec r(n_points);
    for (int i = 0; i < n_points; ++i) r[i] = this->r(i);
    return r;
}

std::string to_string(SeedKind k) {
    switch (k) {
        case SeedKind::Tri2Carrier: return "tri2";
        case SeedKind::TruncatedGaussian: return "gaussian";
        case SeedKind::Sampled: return "sampled";
    }
    return "unknown";
}

double cubic_bspline(double x) {
    const double a = std::abs(x);
    if (a < 1.0) return 2.0 / 3.0 - a * a + 0.5 * a * a * a;
    if (a < 2.0) return (2.0 - a) * (2.0 - a) * (2.0 - a) / 6.0;
    return 0.0;
}

namespace {

cplx carrier(double k0, double r) { return std::polar(1.0, k0 * r); }

void fill_samples(SeedFunction& g, int intervals) {
    if (intervals < 3) throw DomainError("seed needs at least 3 intervals");
    g.grid = RadialGrid(g.r0, intervals + 1);
    g.samples.resize(intervals + 1);
    for (int i = 0; i < intervals; ++i) g.samples[i] = g.value(g.grid.r(i));
    // left limit at r0
    const double r0 = g.r0;
    double env = 0.0;
    if (g.kind == SeedKind::Tri2Carrier) env = cubic_bspline(2.0);
    if (g.kind == SeedKind::TruncatedGaussian) env = std::exp(-(r0 - g.center) * (r0 - g.center) / (2 * g.sigma * g.sigma));
    g.samples[intervals] = g.amplitude * env * carrier(g.k0, r0);
}

// Panel start node for interval i when n_int intervals are grouped in threes,
// the final group overlapping the previous one if n_int is not a multiple of 3.
int panel_start(int i, int n_int) { return std::min(3 * (i / 3), n_int - 3); }

CVec demodulated(const SeedFunction& g) {
    CVec y(g.samples.size());
    const double h = g.grid.spacing();
    for (std::size_t j = 0; j < y.size(); ++j) y[j] = g.samples[j] * carrier(-g.k0, j * h);
    return y;
}

// mu_j = int_a^b s^j e^{-i th s} ds, j = 0..3.
void moments(double th, double a, double b, cplx mu[4]) {
    if (std::abs(th) * b <= 1.0) {
        for (int j = 0; j < 4; ++j) {
            cplx sum = 0.0, c = 1.0;  // c = (-i th)^n / n!
            double pb = std::pow(b, j + 1), pa = std::pow(a, j + 1);
            for (int n = 0; n < 40; ++n) {
                const cplx term = c * (pb - pa) / double(j + n + 1);
                sum += term;
                if (std::abs(term) < 1e-18 * std::abs(sum) && n > 2) break;
                c *= cplx(0.0, -th) / double(n + 1);
                pb *= b;
                pa *= a;
            }
            mu[j] = sum;
        }
        return;
    }
    const cplx eb = std::polar(1.0, -th * b), ea = std::polar(1.0, -th * a);
    const cplx inv = 1.0 / cplx(0.0, -th);
    mu[0] = (eb - ea) * inv;
    double pb = 1.0, pa = 1.0;
    for (int j = 1; j < 4; ++j) {
        pb *= b;
        pa *= a;
        mu[j] = (pb * eb - pa * ea) * inv - double(j) * inv * mu[j - 1];
    }
}

// Lagrange basis on nodes 0..3, coefficients of s^0..s^3.
constexpr double kLag[4][4] = {
    {1.0, -11.0 / 6.0, 1.0, -1.0 / 6.0},
    {0.0, 3.0, -2.5, 0.5},
    {0.0, -1.5, 2.0, -0.5},
    {0.0, 1.0 / 3.0, -0.5, 1.0 / 6.0},
};

void filon_weights(double th, double a, double b, cplx w[4]) {
    cplx mu[4];
    moments(th, a, b, mu);
    for (int m = 0; m < 4; ++m) {
        w[m] = 0.0;
        for (int j = 0; j < 4; ++j) w[m] += kLag[m][j] * mu[j];
    }
}

// (1/2pi) int_0^{n_int h} y(r) e^{-iqr} dr with y the panel-cubic interpolant.
cplx filon_one(const CVec& y, double h, double q) {
    const int n_int = static_cast<int>(y.size()) - 1;
    const int full = n_int / 3, rem = n_int % 3;
    const double th = q * h;
    cplx w[4];
    filon_weights(th, 0.0, 3.0, w);
    cplx S[4] = {0.0, 0.0, 0.0, 0.0};
    const cplx step = std::polar(1.0, -3.0 * th);
    cplx z = 1.0;
    for (int p = 0; p < full; ++p) {
        if (p % 128 == 0) z = std::polar(1.0, -3.0 * th * p);
        const cplx* yp = &y[3 * p];
        S[0] += z * yp[0];
        S[1] += z * yp[1];
        S[2] += z * yp[2];
        S[3] += z * yp[3];
        z *= step;
    }
    cplx total = w[0] * S[0] + w[1] * S[1] + w[2] * S[2] + w[3] * S[3];
    if (rem > 0) {
        const int P = n_int - 3;
        cplx wp[4];
        filon_weights(th, 3.0 - rem, 3.0, wp);
        const cplx ph = std::polar(1.0, -th * P);
        total += ph * (wp[0] * y[P] + wp[1] * y[P + 1] + wp[2] * y[P + 2] + wp[3] * y[P + 3]);
    }
    return total * h / (2.0 * pi);
}

void check_sample_resolution(const SeedFunction& g) {
    const double h = g.grid.spacing();
    if (g.kind != SeedKind::Sampled) {
        // envelopes are known; only the grid spacing against the width matters
        if (g.kind == SeedKind::TruncatedGaussian && h > 0.25 * g.sigma)
            throw ResolutionError("seed grid too coarse for the Gaussian width");
        return;
    }
    // An unresolved carrier turns most steps; a zero crossing of the envelope turns only a few.
    const CVec y = demodulated(g);
    std::size_t steps = 0, large = 0;
    for (std::size_t j = 1; j < y.size(); ++j) {
        if (std::abs(y[j]) == 0.0 || std::abs(y[j - 1]) == 0.0) continue;
        ++steps;
        large += std::abs(std::arg(y[j] / y[j - 1])) > pi / 2;
    }
    if (steps > 0 && 2 * large > steps)
        throw ResolutionError("seed samples do not resolve the carrier (phase step above pi/2)");
}

void check_n_points(int n) {
    if (n < 5 || n % 2 == 0 || ((n - 1) / 2) % 2 != 0)
        throw DomainError("spectral grid needs n_points = 4m + 1");
}

CVec filon_values(const SeedFunction& g, const CVec& y, double K, int n) {
    CVec v(n);
    const double dk = 2.0 * K / (n - 1), h = g.grid.spacing();
    for (int i = 0; i < n; ++i) v[i] = filon_one(y, h, -K + i * dk - g.k0);
    return v;
}

RVec weight_k(const Spectrum& G) {
    RVec w(G.n_points);
    for (int i = 0; i < G.n_points; ++i) w[i] = std::norm(G.values[i]) * std::abs(G.k(i));
    return w;
}

}  // namespace

SeedFunction SeedFunction::tri2_carrier(double r0, double k0, int intervals) {
    if (!(r0 > 0.0)) throw DomainError("tri2 seed: r0 must be > 0");
    SeedFunction g;
    g.kind = SeedKind::Tri2Carrier;
    g.r0 = r0;
    g.k0 = k0;
    g.center = r0 / 2;
    fill_samples(g, intervals);
    return g;
}

SeedFunction SeedFunction::truncated_gaussian(double r0, double k0, double sigma, int intervals) {
    if (!(r0 > 0.0) || !(sigma > 0.0)) throw DomainError("Gaussian seed: r0 and sigma must be > 0");
    SeedFunction g;
    g.kind = SeedKind::TruncatedGaussian;
    g.r0 = r0;
    g.k0 = k0;
    g.sigma = sigma;
    g.center = r0 / 2;
    fill_samples(g, intervals);
    return g;
}

SeedFunction SeedFunction::sampled(const RadialGrid& grid, CVec samples, double carrier_k) {
    if (static_cast<int>(samples.size()) != grid.n_points) throw DomainError("sampled seed: size mismatch");
    if (grid.n_points < 4) throw DomainError("sampled seed: need at least 4 samples");
    for (const auto& v : samples)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw DomainError("sampled seed: non-finite sample");
    SeedFunction g;
    g.kind = SeedKind::Sampled;
    g.r0 = grid.r_max;
    g.k0 = carrier_k;
    g.grid = grid;
    g.samples = std::move(samples);
    return g;
}

cplx SeedFunction::value(double r) const {
    if (r < 0.0 || r >= r0) return 0.0;
    switch (kind) {
        case SeedKind::Tri2Carrier:
            return amplitude * cubic_bspline(4.0 * r / r0 - 2.0) * carrier(k0, r);
        case SeedKind::TruncatedGaussian:
            return amplitude * std::exp(-(r - center) * (r - center) / (2 * sigma * sigma)) * carrier(k0, r);
        case SeedKind::Sampled: {
            if (r > grid.r_max) return 0.0;
            const double h = grid.spacing();
            const int n_int = grid.n_points - 1;
            const int i = std::min(static_cast<int>(r / h), n_int - 1);
            const int p = panel_start(i, n_int);
            cplx y[4];
            for (int m = 0; m < 4; ++m) y[m] = samples[p + m] * carrier(-k0, (p + m) * h);
            return num::cubic_lagrange(y, r / h - p) * carrier(k0, r);
        }
    }
    return 0.0;
}

cplx SeedFunction::derivative(double r) const {
    if (r < 0.0 || r >= r0) return 0.0;
    switch (kind) {
        case SeedKind::Tri2Carrier: {
            const double x = 4.0 * r / r0 - 2.0, a = std::abs(x);
            const double s = x < 0.0 ? -1.0 : 1.0;
            const double db = a < 1.0 ? s * (-2.0 * a + 1.5 * a * a) : -s * 0.5 * (2.0 - a) * (2.0 - a);
            return amplitude * (4.0 / r0 * db + cplx(0.0, k0) * cubic_bspline(x)) * carrier(k0, r);
        }
        case SeedKind::TruncatedGaussian: {
            const double d = r - center;
            return amplitude * std::exp(-d * d / (2 * sigma * sigma)) * cplx(-d / (sigma * sigma), k0) * carrier(k0, r);
        }
        case SeedKind::Sampled: {
            if (r > grid.r_max) return 0.0;
            const double h = grid.spacing();
            const int n_int = grid.n_points - 1;
            const int i = std::min(static_cast<int>(r / h), n_int - 1);
            const int p = panel_start(i, n_int);
            cplx y[4];
            for (int m = 0; m < 4; ++m) y[m] = samples[p + m] * carrier(-k0, (p + m) * h);
            const double s = r / h - p;
            return (num::cubic_lagrange_derivative(y, s) / h + cplx(0.0, k0) * num::cubic_lagrange(y, s)) * carrier(k0, r);
        }
    }
    return 0.0;
}

RVec Spectrum::nodes() const {
    RVec k(n_points);
    for (int i = 0; i < n_points; ++i) k[i] = this->k(i);
    return k;
}

Spectrum Spectrum::on_grid(double k_max, int n_points) {
    check_n_points(n_points);
    if (!(k_max > 0.0)) throw DomainError("spectrum grid needs k_max > 0");
    Spectrum s;
    s.k_max = k_max;
    s.n_points = n_points;
    s.values.assign(n_points, 0.0);
    return s;
}

CVec forward_transform_at(const SeedFunction& g, const RVec& ks) {
    if (g.grid.n_points < 4) throw DomainError("forward_transform: seed has too few samples");
    const CVec y = demodulated(g);
    CVec out(ks.size());
    for (std::size_t i = 0; i < ks.size(); ++i) out[i] = filon_one(y, g.grid.spacing(), ks[i] - g.k0);
    return out;
}

Spectrum forward_transform(const SeedFunction& g, const SpectralGridRequest& req) {
    check_n_points(req.n_points);
    check_sample_resolution(g);
    const CVec y = demodulated(g);
    const double r0 = g.r0, ak0 = std::abs(g.k0);

    if (req.k_max > 0.0) {
        Spectrum G = Spectrum::on_grid(req.k_max, req.n_points);
        if (req.k_max <= ak0) throw ResolutionError("spectral grid does not reach the carrier wavenumber");
        if (G.dk() * r0 > pi / 2) throw ResolutionError("spectral grid spacing too coarse for the support length");
        G.values = filon_values(g, y, req.k_max, req.n_points);
        const RVec w = weight_k(G);
        double total = 0.0, edge = 0.0;
        for (int i = 0; i < G.n_points; ++i) {
            total += w[i];
            if (std::abs(G.k(i)) > 0.9 * G.k_max) edge += w[i];
        }
        G.tail_fraction = total > 0.0 ? edge / total : 0.0;
        G.tail_ok = G.tail_fraction < req.tail_tol;
        return G;
    }

    const double K_cap = ak0 + req.kappa_cap / r0;
    Spectrum probe = Spectrum::on_grid(K_cap, req.n_points);
    if (probe.dk() * r0 > pi / 2) throw ResolutionError("adaptive spectral grid too coarse; raise n_points");
    probe.values = filon_values(g, y, K_cap, req.n_points);
    const RVec w = weight_k(probe);
    double total = 0.0;
    for (double v : w) total += v;

    auto tail_beyond = [&](double K) {
        double s = 0.0;
        for (int i = 0; i < probe.n_points; ++i)
            if (std::abs(probe.k(i)) > K) s += w[i];
        return total > 0.0 ? s / total : 0.0;
    };

    for (double kappa = req.kappa_min; kappa < req.kappa_cap; kappa *= 2.0) {
        const double K = ak0 + kappa / r0;
        const double tail = tail_beyond(K);
        if (tail < req.tail_tol) {
            Spectrum G = Spectrum::on_grid(K, req.n_points);
            G.values = filon_values(g, y, K, req.n_points);
            G.tail_fraction = tail;
            G.tail_ok = true;
            return G;
        }
    }
    // cap reached: report the weight of the last doubling band as the tail estimate
    probe.tail_fraction = tail_beyond(ak0 + 0.5 * req.kappa_cap / r0);
    probe.tail_ok = probe.tail_fraction < req.tail_tol;
    return probe;
}

Spectrum analytic_spectrum(const SeedFunction& g, double k_max, int n_points) {
    if (g.kind != SeedKind::Tri2Carrier) throw DomainError("analytic spectrum only known for the tri2 seed");
    Spectrum G = Spectrum::on_grid(k_max, n_points);
    const double r0 = g.r0;
    for (int i = 0; i < n_points; ++i) {
        const double k = G.k(i);
        const double x = (k - g.k0) * r0 / 8.0;
        const double sinc = x == 0.0 ? 1.0 : std::sin(x) / x;
        G.values[i] = g.amplitude * r0 / (8 * pi) * std::polar(1.0, g.k0 * r0 / 2) * std::pow(sinc, 4) *
                      std::polar(1.0, -k * r0 / 2);
    }
    return G;
}

CVec inverse_transform_at(const Spectrum& G, const RVec& x, int deriv, HalfLine part) {
    const int n = G.n_points, z = G.zero_index();
    const double dk = G.dk();
    CVec c(n, 0.0);
    for (int j = 0; j < n; ++j) {
        double w = dk;
        if (part == HalfLine::Positive && j < z) w = 0.0;
        if (part == HalfLine::Negative && j >= z) w = 0.0;
        if (j == 0 || j == n - 1) w *= 0.5;
        cplx f = G.values[j] * w;
        for (int d = 0; d < deriv; ++d) f *= cplx(0.0, G.k(j));
        c[j] = f;
    }
    int lo = 0, hi = n;
    if (part == HalfLine::Positive) lo = z;
    if (part == HalfLine::Negative) hi = z;
    CVec out(x.size());
    for (std::size_t p = 0; p < x.size(); ++p) {
        const double xp = x[p];
        const cplx step = std::polar(1.0, dk * xp);
        cplx e = 0.0, s = 0.0;
        for (int j = lo; j < hi; ++j) {
            if ((j - lo) % 256 == 0) e = std::polar(1.0, G.k(j) * xp);
            s += c[j] * e;
            e *= step;
        }
        out[p] = s;
    }
    return out;
}

CVec inverse_transform(const Spectrum& G, const RadialGrid& grid) { return inverse_transform_at(G, grid.nodes()); }

TruncationResult truncate_support(const RadialGrid& grid, const CVec& samples, double r0, double carrier_k) {
    if (!(r0 > 0.0)) throw DomainError("truncate_support: r0 must be > 0");
    if (static_cast<int>(samples.size()) != grid.n_points) throw DomainError("truncate_support: size mismatch");
    for (const auto& v : samples)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw DomainError("truncate_support: non-finite input");

    const double h = grid.spacing();
    const int n_int = grid.n_points - 1;

    // mass inside [0, r0] by the trapezoid rule, partial cell interpolated linearly
    double total = 0.0, inside = 0.0;
    for (int i = 0; i < n_int; ++i) {
        const double a = std::norm(samples[i]), b = std::norm(samples[i + 1]);
        const double cell = 0.5 * (a + b) * h;
        total += cell;
        const double ra = i * h, rb = (i + 1) * h;
        if (rb <= r0) {
            inside += cell;
        } else if (ra < r0) {
            const double f = (r0 - ra) / h;
            inside += 0.5 * (a + (a + f * (b - a))) * f * h;
        }
    }
    TruncationResult res;
    res.truncated_mass = total > 0.0 ? std::max(0.0, 1.0 - inside / total) : 0.0;

    const SeedFunction full = SeedFunction::sampled(grid, samples, carrier_k);
    const double pos = r0 / h;
    const int m = static_cast<int>(std::llround(pos));
    if (std::abs(pos - m) < 1e-9 && m >= 3 && m <= n_int) {
        CVec s(samples.begin(), samples.begin() + m + 1);
        res.seed = SeedFunction::sampled(RadialGrid(m * h, m + 1), std::move(s), carrier_k);
    } else {
        const int mi = std::max(3, static_cast<int>(std::ceil(pos)));
        const RadialGrid g2(r0, mi + 1);
        CVec s(mi + 1);
        for (int i = 0; i <= mi; ++i) {
            const double r = std::min(g2.r(i), grid.r_max * (1 - 1e-15));
            s[i] = (g2.r(i) <= grid.r_max) ? full.value(r) : cplx(0.0);
        }
        res.seed = SeedFunction::sampled(g2, std::move(s), carrier_k);
    }
    res.seed.r0 = r0;
    return res;
}

SeedFunction scale_coordinates(const SeedFunction& g, double s) {
    if (!(s > 0.0)) throw DomainError("scale_coordinates: s must be > 0");
    SeedFunction o = g;
    o.r0 = g.r0 / s;
    o.k0 = g.k0 * s;
    o.sigma = g.sigma / s;
    o.center = g.center / s;
    o.grid = RadialGrid(g.grid.r_max / s, g.grid.n_points);
    return o;
}

namespace {

struct FitData {
    RVec r, y;
};

int gauss_residual(const gsl_vector* p, void* data, gsl_vector* f) {
    const auto* d = static_cast<const FitData*>(data);
    const double A = gsl_vector_get(p, 0), c = gsl_vector_get(p, 1), s = gsl_vector_get(p, 2);
    for (std::size_t i = 0; i < d->r.size(); ++i)
        gsl_vector_set(f, i, A * std::exp(-(d->r[i] - c) * (d->r[i] - c) / (2 * s * s)) - d->y[i]);
    return GSL_SUCCESS;
}

double max_dev(const FitData& d, double A, double c, double s) {
    double m = 0.0;
    for (std::size_t i = 0; i < d.r.size(); ++i)
        m = std::max(m, std::abs(A * std::exp(-(d.r[i] - c) * (d.r[i] - c) / (2 * s * s)) - d.y[i]));
    return m;
}

double minimax_objective(const gsl_vector* p, void* data) {
    const auto* d = static_cast<const FitData*>(data);
    return max_dev(*d, gsl_vector_get(p, 0), gsl_vector_get(p, 1), std::abs(gsl_vector_get(p, 2)));
}

}  // namespace

GaussianFitReport gaussian_fit_report(const SeedFunction& g, int n_eval) {
    if (n_eval < 10) throw DomainError("gaussian_fit_report: n_eval too small");
    FitData d;
    const double h = g.r0 / (n_eval - 1);
    for (int i = 0; i < n_eval - 1; ++i) {
        d.r.push_back(i * h);
        d.y.push_back(g.envelope(i * h));
    }
    const double peak = *std::max_element(d.y.begin(), d.y.end());
    const double low = *std::min_element(d.y.begin(), d.y.end());
    if (!(peak > 0.0) || (peak - low) < 1e-3 * peak) throw FitError("envelope is flat or zero");
    double sw = 0.0, sr = 0.0;
    for (auto& v : d.y) v /= peak;
    for (std::size_t i = 0; i < d.r.size(); ++i) {
        sw += d.y[i];
        sr += d.y[i] * d.r[i];
    }
    const double c0 = sr / sw;
    double sv = 0.0;
    for (std::size_t i = 0; i < d.r.size(); ++i) sv += d.y[i] * (d.r[i] - c0) * (d.r[i] - c0);
    const double s0 = std::sqrt(sv / sw);

    // least squares
    const std::size_t n = d.r.size();
    gsl_multifit_nlinear_fdf fdf{};
    fdf.f = gauss_residual;
    fdf.df = nullptr;
    fdf.fvv = nullptr;
    fdf.n = n;
    fdf.p = 3;
    fdf.params = &d;
    gsl_multifit_nlinear_parameters fp = gsl_multifit_nlinear_default_parameters();
    gsl_multifit_nlinear_workspace* ws = gsl_multifit_nlinear_alloc(gsl_multifit_nlinear_trust, &fp, n, 3);
    gsl_vector* x = gsl_vector_alloc(3);
    gsl_vector_set(x, 0, 1.0);
    gsl_vector_set(x, 1, c0);
    gsl_vector_set(x, 2, s0);
    gsl_multifit_nlinear_init(x, &fdf, ws);
    int info = 0;
    const int status = gsl_multifit_nlinear_driver(500, 1e-14, 1e-14, 1e-14, nullptr, nullptr, &info, ws);
    const gsl_vector* sol = gsl_multifit_nlinear_position(ws);
    const double A1 = gsl_vector_get(sol, 0), c1 = gsl_vector_get(sol, 1), s1 = std::abs(gsl_vector_get(sol, 2));
    gsl_vector_free(x);
    gsl_multifit_nlinear_free(ws);
    if (status != GSL_SUCCESS && status != GSL_EMAXITER) throw FitError("least-squares Gaussian fit failed");

    GaussianFitReport rep;
    rep.sigma_lsq = s1;
    rep.max_deviation_lsq = max_dev(d, A1, c1, s1);

    // max-norm refinement by Nelder-Mead, restarted from the best point
    double best[3] = {A1, c1, s1};
    double best_f = rep.max_deviation_lsq;
    const gsl_multimin_fminimizer_type* T = gsl_multimin_fminimizer_nmsimplex2;
    gsl_multimin_function mf{minimax_objective, 3, &d};
    for (int restart = 0; restart < 4; ++restart) {
        gsl_multimin_fminimizer* m = gsl_multimin_fminimizer_alloc(T, 3);
        gsl_vector* p = gsl_vector_alloc(3);
        gsl_vector* step = gsl_vector_alloc(3);
        for (int k = 0; k < 3; ++k) gsl_vector_set(p, k, best[k]);
        const double sc = 1e-2 / (1 << (2 * restart));
        gsl_vector_set(step, 0, sc);
        gsl_vector_set(step, 1, sc * best[2]);
        gsl_vector_set(step, 2, sc * best[2]);
        gsl_multimin_fminimizer_set(m, &mf, p, step);
        for (int it = 0; it < 20000; ++it) {
            if (gsl_multimin_fminimizer_iterate(m)) break;
            if (gsl_multimin_fminimizer_size(m) < 1e-13) break;
        }
        if (m->fval < best_f) {
            best_f = m->fval;
            for (int k = 0; k < 3; ++k) best[k] = gsl_vector_get(m->x, k);
        }
        gsl_vector_free(step);
        gsl_vector_free(p);
        gsl_multimin_fminimizer_free(m);
    }
    rep.amplitude_fit = best[0];
    rep.center_fit = best[1];
    rep.sigma_fit = std::abs(best[2]);
    rep.max_deviation_fraction = best_f;
    return rep;
}

void write_seed_csv(std::ostream& os, const SeedFunction& g, const RadialGrid& grid) {
    os << "r,Re_g,Im_g,envelope\n";
    for (int i = 0; i < grid.n_points; ++i) {
        const double r = grid.r(i);
        const cplx v = g.value(r);
        os << num::fmt17(r) << ',' << num::fmt17(v.real()) << ',' << num::fmt17(v.imag()) << ','
           << num::fmt17(std::abs(v)) << '\n';
    }
}

void write_spectrum_csv(std::ostream& os, const Spectrum& G) {
    os << "k,Re_G,Im_G\n";
    for (int i = 0; i < G.n_points; ++i)
        os << num::fmt17(G.k(i)) << ',' << num::fmt17(G.values[i].real()) << ',' << num::fmt17(G.values[i].imag())
           << '\n';
}

double spectrum_energy(const Spectrum& G) {
    double s = 0.0;
    for (int i = 0; i < G.n_points; ++i) s += std::norm(G.values[i]) * ((i == 0 || i == G.n_points - 1) ? 0.5 : 1.0);
    return 2.0 * pi * s * G.dk();
}

double seed_energy(const SeedFunction& g) {
    const int n_int = g.grid.n_points - 1;
    const double h = g.grid.spacing();
    double s = 0.0;
    if (n_int % 3 == 0) {
        for (int i = 0; i <= n_int; ++i) {
            const double w = (i == 0 || i == n_int) ? 1.0 : (i % 3 == 0 ? 2.0 : 3.0);
            s += w * std::norm(g.samples[i]);
        }
        return s * 3.0 * h / 8.0;
    }
    for (int i = 0; i <= n_int; ++i) s += std::norm(g.samples[i]) * ((i == 0 || i == n_int) ? 0.5 : 1.0);
    return s * h;
}

}  // namespace sloc
