#include "sloc/classical_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sloc/errors.hpp"
#include "sloc/quantum_closed_form.hpp"

namespace sloc {

namespace {

// Trapezoid sums of G (ik)^m e^{ikx} for m = 0, 1 over each half of the grid.
struct HalfSums {
    cplx pos0, pos1, neg0, neg1;
};

std::vector<HalfSums> half_sums(const Spectrum& G, const RVec& x) {
    const int n = G.n_points, z = G.zero_index();
    const double dk = G.dk();
    CVec c0(n), c1(n);
    for (int j = 0; j < n; ++j) {
        const double w = (j == 0 || j == n - 1) ? 0.5 * dk : dk;
        c0[j] = G.values[j] * w;
        c1[j] = c0[j] * cplx(0.0, G.k(j));
    }
    std::vector<HalfSums> out(x.size());
    for (std::size_t p = 0; p < x.size(); ++p) {
        const double xp = x[p];
        const cplx step = std::polar(1.0, dk * xp);
        cplx e = 0.0, s0 = 0.0, s1 = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j % 256 == 0) e = std::polar(1.0, G.k(j) * xp);
            if (j == z) {
                out[p].neg0 = s0;
                out[p].neg1 = s1;
                s0 = s1 = 0.0;
            }
            s0 += c0[j] * e;
            s1 += c1[j] * e;
            e *= step;
        }
        out[p].pos0 = s0;
        out[p].pos1 = s1;
    }
    return out;
}

CVec moment_at(const Spectrum& G, double x, int m, HalfLine part) {
    return inverse_transform_at(G, RVec{x}, m, part);
}

}  // namespace

CVec u_of_r(const Spectrum& G, const RVec& r) { return inverse_transform_at(G, r, 0, HalfLine::Positive); }

namespace {

// Modified seed and its derivative, evaluated directly so the profile keeps
// the exact support of the seed.
struct SeedEval {
    const ModePair* mp;
    const SeedFunction* g;
    cplx value(double x) const { return modified_seed_value(*mp, *g, x); }
    cplx deriv(double x) const { return modified_seed_derivative(*mp, *g, x); }
};

RadialFieldProfile dalembert_impl(const Spectrum& G, const SeedEval* seed, double t, const RadialGrid& grid) {
    if (!(t >= 0.0)) throw DomainError("dalembert_f: t must be >= 0");
    const int n = grid.n_points;
    RadialFieldProfile p;
    p.time = t;
    p.grid = grid;
    p.f.assign(n, 0.0);
    p.df_dr.assign(n, 0.0);
    p.E1.assign(n, 0.0);
    p.E2.assign(n, 0.0);
    const double wp = positive_weight(G), wn = negative_weight(G);
    p.C = wn > 0.0 ? std::sqrt(wp / wn) : std::numeric_limits<double>::infinity();

    RVec x(2 * n);
    for (int i = 0; i < n; ++i) {
        x[2 * i] = grid.r(i) - t;
        x[2 * i + 1] = -grid.r(i) - t;
    }
    const auto S = half_sums(G, x);
    const cplx m2pii(0.0, -2.0 * pi);
    // below this radius the bracket is replaced by its odd Taylor expansion about -t
    const double r_taylor = 1e-3 * grid.spacing();
    CVec D1, D3, D1p, D3p;
    bool need_taylor = false;
    for (int i = 0; i < n; ++i) need_taylor |= grid.r(i) < r_taylor;
    if (need_taylor) {
        D1 = moment_at(G, -t, 1, HalfLine::Full);
        D3 = moment_at(G, -t, 3, HalfLine::Full);
        D1p = moment_at(G, -t, 1, HalfLine::Positive);
        D3p = moment_at(G, -t, 3, HalfLine::Positive);
    }

    for (int i = 0; i < n; ++i) {
        const double r = grid.r(i);
        const HalfSums& a = S[2 * i];
        const HalfSums& b = S[2 * i + 1];
        cplx dfp;
        if (r < r_taylor) {
            if (seed) {
                // limit of the bracket over r: 2 g'(-t), zero once the support has left the origin
                p.f[i] = m2pii * 2.0 * seed->deriv(-t);
                p.df_dr[i] = r < t ? cplx(0.0) : m2pii * 2.0 * (r * D3[0] / 3.0);
            } else {
                p.f[i] = m2pii * 2.0 * (D1[0] + r * r * D3[0] / 6.0);
                p.df_dr[i] = m2pii * 2.0 * (r * D3[0] / 3.0);
            }
            dfp = m2pii * 2.0 * (r * D3p[0] / 3.0);
        } else {
            if (seed) {
                const double xa = r - t, xb = -r - t;
                const cplx ga = seed->value(xa), gb = seed->value(xb);
                p.f[i] = m2pii * (ga - gb) / r;
                p.df_dr[i] = m2pii * ((seed->deriv(xa) + seed->deriv(xb)) / r - (ga - gb) / (r * r));
            } else {
                const cplx ga = a.pos0 + a.neg0, gb = b.pos0 + b.neg0;
                const cplx dga = a.pos1 + a.neg1, dgb = b.pos1 + b.neg1;
                p.f[i] = m2pii * (ga - gb) / r;
                p.df_dr[i] = m2pii * ((dga + dgb) / r - (ga - gb) / (r * r));
            }
            dfp = m2pii * ((a.pos1 + b.pos1) / r - (a.pos0 - b.pos0) / (r * r));
        }
        const cplx dfn = p.df_dr[i] - dfp;
        p.E1[i] = I1 * dfp;
        p.E2[i] = std::isfinite(p.C) ? -I1 * p.C * std::conj(dfn) : cplx(0.0);
    }
    return p;
}

}  // namespace

RadialFieldProfile dalembert_f(const Spectrum& G, double t, const RadialGrid& grid) {
    return dalembert_impl(G, nullptr, t, grid);
}

RadialFieldProfile dalembert_f(const ModePair& mp, double t, const RadialGrid& grid) {
    if (!mp.seed) return dalembert_impl(mp.spectrum, nullptr, t, grid);
    const SeedEval ev{&mp, &*mp.seed};
    return dalembert_impl(mp.spectrum, &ev, t, grid);
}

double resolution_wavenumber(const Spectrum& G) {
    RVec w(G.n_points);
    double total = 0.0;
    for (int i = 0; i < G.n_points; ++i) total += (w[i] = std::norm(G.values[i]));
    if (total == 0.0) return 0.0;
    // accumulate from the largest |k| inward
    double acc = 0.0;
    for (int lo = 0, hi = G.n_points - 1; lo <= hi;) {
        const bool take_lo = std::abs(G.k(lo)) >= std::abs(G.k(hi));
        const int j = take_lo ? lo : hi;
        acc += w[j];
        if (acc > 1e-6 * total) return std::abs(G.k(j));
        take_lo ? ++lo : --hi;
    }
    return 0.0;
}

double wave_residual(const Spectrum& G, double t, const RadialGrid& grid) {
    if (!(t >= 0.0)) throw DomainError("wave_residual: t must be >= 0");
    const int n = grid.n_points;
    if (n < 5) throw ResolutionError("wave_residual: need at least 5 radial points");
    const double h = grid.spacing(), tau = 0.5 * h;
    const double kres = resolution_wavenumber(G);
    if (kres * h > 1.0)
        throw ResolutionError("wave_residual: radial spacing too coarse for the spectrum (k h = " +
                              std::to_string(kres * h) + ")");
    // x = -t + m tau covers r - t + {0, +-h, +-tau} and -r - t + {...}
    const int M = 2 * (n + 1);
    RVec x(2 * M + 1);
    for (int m = -M; m <= M; ++m) x[m + M] = -t + m * tau;
    const CVec g = inverse_transform_at(G, x);
    auto gx = [&](int m) { return g[m + M]; };
    // F(r_i, t + s tau) = -2 pi i [g(r_i - t - s tau) - g(-r_i - t - s tau)], r_i = 2 i tau
    auto F = [&](int i, int s) { return cplx(0.0, -2.0 * pi) * (gx(2 * i - s) - gx(-2 * i - s)); };
    double num = 0.0, den = 0.0;
    for (int i = 1; i < n - 1; ++i) {
        const cplx dtt = (F(i, 1) - 2.0 * F(i, 0) + F(i, -1)) / (tau * tau);
        const cplx drr = (F(i + 1, 0) - 2.0 * F(i, 0) + F(i - 1, 0)) / (h * h);
        num += std::abs(dtt - drr);
        den += std::abs(drr);
    }
    return den > 0.0 ? num / den : 0.0;
}

RVec esq_closed_form(const CVec& E1, const CVec& E2, double gamma, int n) {
    if (E1.size() != E2.size()) throw DomainError("esq_closed_form: size mismatch");
    if (n < 0) throw DomainError("esq_closed_form: n must be >= 0");
    const double th = std::tanh(gamma), ch2 = std::cosh(gamma) * std::cosh(gamma);
    const double c2g = std::cosh(2.0 * gamma);
    const double m_over_th = th == 0.0 ? 0.0 : series_Mn(n, th * th) / th;
    RVec out(E1.size());
    for (std::size_t i = 0; i < E1.size(); ++i) {
        const cplx f1 = E1[i] + std::conj(E2[i]) * th;
        const cplx f2 = E2[i] + std::conj(E1[i]) * th;
        const cplx f1m = E1[i] - std::conj(E2[i]) * th;
        out[i] = 2.0 * std::norm(f1) * (n + c2g) * ch2 - 2.0 * (std::conj(f1) * f1m).real() * ch2 -
                 4.0 * (f1 * f2).real() * m_over_th;
    }
    return out;
}

RVec esq_profile(const ModePair& mp, int n, double t, const RadialGrid& grid) {
    const RadialFieldProfile p = dalembert_f(mp, t, grid);
    return esq_closed_form(p.E1, p.E2, mp.gamma, n);
}

double radial_energy(const RadialFieldProfile& p) {
    const int n = p.grid.n_points;
    RVec y(n);
    for (int i = 0; i < n; ++i) y[i] = std::norm(p.f[i] + p.grid.r(i) * p.df_dr[i]);
    if (n % 2 == 1 && n >= 3) return num::simpson(y, p.grid.spacing());
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += y[i] * ((i == 0 || i == n - 1) ? 0.5 : 1.0);
    return s * p.grid.spacing();
}

}  // namespace sloc
