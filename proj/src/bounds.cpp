#include "sloc/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "sloc/errors.hpp"
#include "sloc/quantum_closed_form.hpp"

namespace sloc {

namespace {

const double kXiPrefactor = -4.0 * pi / std::pow(2.0 * pi, 1.5);

// k-range of the photon band: |G| above 1e-18 of its peak.
double band_lo(const PhotonSpec& ph) { return std::max(0.0, ph.k0 - 9.5 / ph.sigma); }
double band_hi(const PhotonSpec& ph) { return ph.k0 + 9.5 / ph.sigma; }

RVec simpson_nodes(double a, double b, double h_target, double& h) {
    int m = std::max(2, static_cast<int>(std::ceil((b - a) / h_target)));
    if (m % 2) ++m;
    h = (b - a) / m;
    RVec r(m + 1);
    for (int i = 0; i <= m; ++i) r[i] = a + i * h;
    return r;
}

}  // namespace

PhotonSpec PhotonSpec::gaussian(double k0, double sigma, double center) {
    if (!(sigma > 0.0) || !(k0 > 0.0)) throw DomainError("photon: need k0 > 0 and sigma > 0");
    PhotonSpec ph;
    ph.k0 = k0;
    ph.sigma = sigma;
    ph.center = center;
    const double K = k0 + 14.0 / sigma;
    const double dk_target = 0.004 / sigma;
    int m = static_cast<int>(std::ceil(2.0 * K / dk_target));
    m = 4 * ((m + 3) / 4);
    ph.spectrum = Spectrum::on_grid(K, m + 1);
    for (int i = ph.spectrum.zero_index(); i < ph.spectrum.n_points; ++i)
        ph.spectrum.values[i] = ph.value(ph.spectrum.k(i));
    const double w = kAngular * positive_weight(ph.spectrum);
    ph.amplitude = 1.0 / std::sqrt(w);
    for (auto& v : ph.spectrum.values) v *= ph.amplitude;
    ph.normalized = true;
    return ph;
}

cplx PhotonSpec::value(double k) const {
    if (k < 0.0) return 0.0;
    const double d = (k - k0) * sigma;
    return amplitude * std::exp(-0.5 * d * d) * std::polar(1.0, -k * center);
}

CVec photon_radial_derivative(const PhotonSpec& ph, const RVec& r) {
    const Spectrum& G = ph.spectrum;
    const double dk = G.dk();
    int lo = std::max(G.zero_index(), static_cast<int>(std::floor((band_lo(ph) + G.k_max) / dk)));
    int hi = std::min(G.n_points - 1, static_cast<int>(std::ceil((band_hi(ph) + G.k_max) / dk)));
    if ((hi - lo) % 2) hi < G.n_points - 1 ? ++hi : --lo;
    const auto sw = num::simpson_weights(hi - lo + 1);
    CVec c(hi - lo + 1);
    for (int j = lo; j <= hi; ++j) {
        const double k = G.k(j);
        c[j - lo] = sw[j - lo] * dk * G.values[j] * std::pow(std::max(k, 0.0), 1.5);
    }
    CVec out(r.size());
    for (std::size_t p = 0; p < r.size(); ++p) {
        const double rp = r[p];
        cplx s = 0.0;
        if (rp * G.k(hi) < 0.05) {
            for (int j = lo; j <= hi; ++j) s += c[j - lo] * num::sph_j1(G.k(j) * rp);
        } else {
            // sin and cos of k r advanced by rotation
            const cplx step = std::polar(1.0, dk * rp);
            cplx e = 0.0;
            for (int j = lo; j <= hi; ++j) {
                const double x = G.k(j) * rp;
                if ((j - lo) % 128 == 0) e = std::polar(1.0, x);
                const double j1 = x < 0.05 ? num::sph_j1(x) : e.imag() / (x * x) - e.real() / x;
                s += c[j - lo] * j1;
                e *= step;
            }
        }
        out[p] = kXiPrefactor * s;
    }
    return out;
}

double photon_r_max(const PhotonSpec& ph, double r0) {
    double R = std::max(r0, ph.center) + 6.0 * ph.sigma;
    const double peak_r = std::max(ph.center, ph.sigma);
    const CVec pk = photon_radial_derivative(ph, {peak_r});
    const double peak = std::norm(pk[0]) * peak_r * peak_r;
    for (int it = 0; it < 100; ++it) {
        const CVec v = photon_radial_derivative(ph, {R, R + 0.5 * ph.sigma});
        const double tail = std::max(std::norm(v[0]) * R * R, std::norm(v[1]) * (R + 0.5 * ph.sigma) * (R + 0.5 * ph.sigma));
        if (tail < 1e-14 * peak) return R;
        R += ph.sigma;
    }
    return R;
}

MuNu mu_nu(const PhotonSpec& ph, double r0) {
    if (!(r0 >= 0.0)) throw DomainError("mu_nu: r0 must be >= 0");
    if (!ph.normalized || std::abs(kAngular * positive_weight(ph.spectrum) - 1.0) > 1e-8)
        throw PreconditionError("mu_nu: photon is not normalized");
    for (int i = 0; i < ph.spectrum.zero_index(); ++i)
        if (ph.spectrum.values[i] != cplx(0.0)) throw PreconditionError("mu_nu: photon has negative-k content");
    MuNu out;
    out.r_max = photon_r_max(ph, r0);
    if (r0 >= out.r_max) return out;
    const double h_target = std::min(pi / (80.0 * band_hi(ph)), ph.sigma / 200.0);
    double h = 0.0;
    const RVec r = simpson_nodes(r0, out.r_max, h_target, h);
    const CVec d = photon_radial_derivative(ph, r);
    const auto w = num::simpson_weights(r.size());
    double mu = 0.0;
    cplx nu = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double r2 = r[i] * r[i] * w[i] * h;
        mu += std::norm(d[i]) * r2;
        nu -= d[i] * d[i] * r2;
    }
    out.mu = kAngular * mu;
    out.nu = kAngular * nu;
    return out;
}

double upper_bound(double mu, cplx nu) {
    if (!(mu >= 0.0 && mu <= 1.0 + 1e-9)) throw DomainError("upper_bound: mu must lie in [0, 1]");
    if (std::abs(nu) > mu * (1.0 + 1e-9) + 1e-15) throw DomainError("upper_bound: |nu| exceeds mu");
    const double s = mu + std::abs(nu);
    const double x = s * s / (2.0 * pi * std::exp(1.0));
    if (x > 1.0) throw DomainError("upper_bound: bound argument exceeds 1");
    return std::sqrt(1.0 - x);
}

LowerBound lower_bound(const PhotonSpec& ph, double r0) {
    if (!(r0 > 0.0)) throw DomainError("lower_bound: r0 must be > 0");
    const RadialGrid grid(r0, kDefaultSeedIntervals + 1);
    const CVec g = inverse_transform(ph.spectrum, grid);
    const TruncationResult tr = truncate_support(grid, g, r0, ph.k0);
    const ModePair mp = build_mode_pair(tr.seed);

    // overlap on a Gauss-Legendre rule over the photon band
    RVec kk, wk;
    const double a = band_lo(ph), b = band_hi(ph);
    num::gauss_legendre_panels(a, b, std::max(8, static_cast<int>(std::ceil((b - a) * ph.sigma * 2.0))), 20, kk, wk);
    RVec both(2 * kk.size());
    for (std::size_t i = 0; i < kk.size(); ++i) {
        both[2 * i] = kk[i];
        both[2 * i + 1] = -kk[i];
    }
    const CVec Gt = forward_transform_at(tr.seed, both);
    cplx ov = 0.0;
    double nxi = 0.0;
    for (std::size_t i = 0; i < kk.size(); ++i) {
        cplx gp = Gt[2 * i], gm = Gt[2 * i + 1];
        if (mp.diag.relabeled) {
            const cplx t = gp;
            gp = std::conj(gm);
            gm = std::conj(t);
        }
        const cplx Gmod = mp.scale * (gp - mp.diag.beta * std::conj(gm));
        const cplx Gx = ph.value(kk[i]);
        ov += wk[i] * std::conj(Gx) * Gmod * kk[i];
        nxi += wk[i] * std::norm(Gx) * kk[i];
    }
    LowerBound lb;
    lb.overlap = std::abs(kAngular * ov) / std::sqrt(kAngular * nxi * mp.norm1);
    lb.eta_trunc = mp.eta;
    lb.F_lower = lb.overlap * fidelity(mp.eta);
    lb.tail_fraction = mp.spectrum.tail_fraction;
    return lb;
}

CXiCheck consistency_c_xi_detail(const PhotonSpec& ph, double r0) {
    const MuNu mn = mu_nu(ph, r0);
    CXiCheck out;
    out.half_mu_plus_abs_nu = 0.5 * (mn.mu + std::abs(mn.nu));
    const double R = mn.r_max;
    if (r0 >= R) {
        out.residual = out.half_mu_plus_abs_nu;
        return out;
    }

    // k quadrature: Gauss-Legendre on the band, analytic spectrum
    RVec kk, wk;
    const double a = band_lo(ph), b = band_hi(ph);
    num::gauss_legendre_panels(a, b, std::max(8, static_cast<int>(std::ceil((b - a) * ph.sigma * 4.0))), 20, kk, wk);
    CVec ck(kk.size());
    for (std::size_t j = 0; j < kk.size(); ++j) ck[j] = wk[j] * ph.value(kk[j]) * std::pow(kk[j], 1.5);
    auto E_at = [&](double r) {
        cplx s = 0.0;
        for (std::size_t j = 0; j < kk.size(); ++j) s += ck[j] * num::sph_j1(kk[j] * r);
        return I1 * kXiPrefactor * s;  // E = i xi'
    };
    auto panels = [&](double lo, double hi) {
        const double per = std::min(ph.sigma / 4.0, 4.0 * pi / std::max(b, 1e-300));
        return std::max(2, static_cast<int>(std::ceil((hi - lo) / per)));
    };

    RVec rin, win, rout, wout;
    if (r0 > 0.0) num::gauss_legendre_panels(0.0, r0, panels(0.0, r0), 20, rin, win);
    num::gauss_legendre_panels(r0, R, panels(r0, R), 20, rout, wout);

    double P = 0.0;  // photon norm over [0, R]
    for (std::size_t i = 0; i < rin.size(); ++i) P += win[i] * std::norm(E_at(rin[i])) * rin[i] * rin[i];
    CVec Eo(rout.size());
    for (std::size_t i = 0; i < rout.size(); ++i) {
        Eo[i] = E_at(rout[i]);
        P += wout[i] * std::norm(Eo[i]) * rout[i] * rout[i];
    }
    P *= kAngular;

    // zeta(r) = 2 Re(e^{i phi/2} E(r)) outside the sphere, normalized by its own integral
    auto c_sq = [&](double phi) {
        const cplx ph2 = std::polar(1.0, 0.5 * phi);
        double zz = 0.0;
        cplx zE = 0.0;
        for (std::size_t i = 0; i < rout.size(); ++i) {
            const double z = 2.0 * (ph2 * Eo[i]).real();
            const double w = wout[i] * rout[i] * rout[i];
            zz += w * z * z;
            zE += w * z * Eo[i];
        }
        if (zz <= 0.0) return 0.0;
        return std::norm(kAngular * zE) / (kAngular * zz * P);
    };

    const int scan = 256;
    double best_phi = 0.0, best = -1.0;
    for (int s = 0; s < scan; ++s) {
        const double phi = 2.0 * pi * s / scan;
        const double v = c_sq(phi);
        if (v > best) {
            best = v;
            best_phi = phi;
        }
    }
    // golden-section refinement around the scan maximum
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = best_phi - 2.0 * pi / scan, hi = best_phi + 2.0 * pi / scan;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = c_sq(x1), f2 = c_sq(x2);
    for (int it = 0; it < 80; ++it) {
        if (f1 > f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = c_sq(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = c_sq(x2);
        }
    }
    const double phi_star = 0.5 * (lo + hi);
    out.c_xi_sq = std::max(best, c_sq(phi_star));
    out.phi_max = std::remainder(phi_star, 2.0 * pi);
    out.residual = std::abs(out.c_xi_sq - out.half_mu_plus_abs_nu);
    return out;
}

double consistency_c_xi(const PhotonSpec& ph, double r0) { return consistency_c_xi_detail(ph, r0).residual; }

BoundReport bound_report(const PhotonSpec& ph, double r0) {
    BoundReport rep;
    rep.r0 = r0;
    const MuNu mn = mu_nu(ph, r0);
    rep.mu = mn.mu;
    rep.nu = mn.nu;
    rep.r_max = mn.r_max;
    rep.F_upper = upper_bound(std::min(mn.mu, 1.0), mn.nu);
    const LowerBound lb = lower_bound(ph, r0);
    rep.F_lower = lb.F_lower;
    rep.overlap = lb.overlap;
    rep.eta_trunc = lb.eta_trunc;
    rep.tail_fraction = lb.tail_fraction;
    return rep;
}

}  // namespace sloc
