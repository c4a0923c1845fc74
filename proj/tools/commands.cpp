#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "sloc/bounds.hpp"
#include "sloc/classical_field.hpp"
#include "sloc/errors.hpp"
#include "sloc/fock_oracle.hpp"
#include "sloc/mode_builder.hpp"
#include "sloc/quantum_closed_form.hpp"

namespace sloc::cli {

using num::fmt17;

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

void comment_grid_request(std::ostream& os, const SpectralGridRequest& req) {
    os << "# spectral grid: n_points=" << req.n_points << " k_max=|k0|+kappa/r0, kappa from " << fmt17(req.kappa_min)
       << " doubling to at most " << fmt17(req.kappa_cap) << ", tail tolerance " << fmt17(req.tail_tol) << "\n";
}

void comment_spectrum(std::ostream& os, const Spectrum& G) {
    os << "# spectrum: k_max=" << fmt17(G.k_max) << " n_points=" << G.n_points << " dk=" << fmt17(G.dk())
       << " tail_fraction=" << fmt17(G.tail_fraction) << "\n";
    if (!G.tail_ok) os << "# warning: spectral tail above tolerance at the k_max cap\n";
}

}  // namespace

double SeedOptions::carrier() const { return k0 < 0.0 ? 4.0 * pi / r0 : k0; }
double SeedOptions::width() const { return sigma < 0.0 ? r0 / 8.0 : sigma; }

SeedFunction make_seed(const SeedOptions& o) {
    if (!(o.r0 > 0.0)) throw UsageError("r0 must be > 0");
    SeedFunction g;
    if (o.kind == "tri2") {
        g = SeedFunction::tri2_carrier(o.r0, o.carrier(), o.intervals);
    } else if (o.kind == "gaussian") {
        if (!(o.width() > 0.0)) throw UsageError("sigma must be > 0");
        g = SeedFunction::truncated_gaussian(o.r0, o.carrier(), o.width(), o.intervals);
    } else {
        throw UsageError("unknown seed kind '" + o.kind + "' (tri2 or gaussian)");
    }
    if (o.amplitude != 1.0) {
        g.amplitude *= o.amplitude;
        for (auto& s : g.samples) s *= o.amplitude;
    }
    return g;
}

int cmd_seed_show(const SeedShowOptions& o, std::ostream& os) {
    const SeedFunction g = make_seed(o.seed);
    if (o.points < 2) throw UsageError("points must be >= 2");
    const double r_max = o.r_max < 0.0 ? 1.25 * o.seed.r0 : o.r_max;
    const RadialGrid grid(r_max, o.points);
    os << "# seed-show kind=" << to_string(g.kind) << " r0=" << fmt17(g.r0) << " k0=" << fmt17(g.k0);
    if (g.kind == SeedKind::TruncatedGaussian) os << " sigma=" << fmt17(g.sigma) << " center=" << fmt17(g.center);
    os << " amplitude=" << fmt17(g.amplitude) << "\n";
    os << "# radial grid: r_max=" << fmt17(r_max) << " n_points=" << o.points << " spacing=" << fmt17(grid.spacing())
       << "\n";
    write_seed_csv(os, g, grid);
    return kExitOk;
}

std::string field_file_name(const std::string& prefix, double t_over_r0) {
    std::ostringstream ss;
    ss << prefix << "_t" << t_over_r0 << ".csv";
    return ss.str();
}

int cmd_field_profile(const FieldOptions& o, std::ostream& log) {
    if (o.n < 0) throw UsageError("n must be >= 0");
    if (o.points < 5) throw UsageError("points must be >= 5");
    for (double t : o.times)
        if (!(t >= 0.0)) throw UsageError("times must be >= 0");
    const SeedFunction g = make_seed(o.seed);
    const SpectralGridRequest req;
    const ModePair mp = build_mode_pair(g, req);
    const double r_max = o.r_max < 0.0 ? 2.0 * g.r0 : o.r_max;
    const RadialGrid grid(r_max, o.points);

    for (double t : o.times) {
        const RadialFieldProfile p = dalembert_f(mp, t * g.r0, grid);
        const RVec esq = esq_closed_form(p.E1, p.E2, mp.gamma, o.n);
        const std::string name = field_file_name(o.prefix, t);
        std::ofstream out(name, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + name);
        out << "# field-profile kind=" << to_string(g.kind) << " r0=" << fmt17(g.r0) << " k0=" << fmt17(g.k0);
        if (g.kind == SeedKind::TruncatedGaussian) out << " sigma=" << fmt17(g.sigma);
        out << " n=" << o.n << " t=" << fmt17(t * g.r0) << "\n";
        out << "# mode pair: eta=" << fmt17(mp.eta) << " gamma=" << fmt17(mp.gamma) << " C=" << fmt17(mp.C) << "\n";
        comment_grid_request(out, req);
        comment_spectrum(out, mp.spectrum);
        out << "# radial grid: r_max=" << fmt17(r_max) << " n_points=" << o.points << "\n";
        out << "# esq_over_sin2theta in arbitrary units (c = 1, field constant dropped)\n";
        out << "r,Re_f,Im_f,esq_over_sin2theta\n";
        for (int i = 0; i < grid.n_points; ++i)
            out << fmt17(grid.r(i)) << ',' << fmt17(p.f[i].real()) << ',' << fmt17(p.f[i].imag()) << ','
                << fmt17(esq[i]) << '\n';
        log << name << "\n";
    }
    return kExitOk;
}

double gaussian_effective_carrier(double k0, double sigma) {
    RVec k, w;
    const double a = std::max(0.0, k0 - 12.0 / sigma), b = k0 + 12.0 / sigma;
    num::gauss_legendre_panels(a, b, 24, 20, k, w);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i) {
        const double d = (k[i] - k0) * sigma;
        const double v = w[i] * std::exp(-d * d) * k[i] * k[i];
        num += v * k[i];
        den += v;
    }
    return num / den;
}

namespace {

struct FidelityRow {
    std::string curve;
    double k0r0 = 0.0;
    double x = kNaN;
    double one_minus_F = kNaN;
    double eta = kNaN;
    std::string status = "ok";
    std::string note;
};

FidelityRow numeric_row(const std::string& curve, const SeedFunction& g) {
    FidelityRow row;
    row.curve = curve;
    row.k0r0 = g.k0 * g.r0;
    try {
        const ModePair mp = build_mode_pair(g);
        row.eta = mp.eta;
        row.one_minus_F = one_minus_fidelity(mp.eta);
        row.x = effective_carrier(mp.spectrum) * g.r0 / (2.0 * pi);
        if (!mp.spectrum.tail_ok) {
            row.status = "tail";
            row.note = "spectral tail fraction " + fmt17(mp.spectrum.tail_fraction) + " at the k_max cap";
        }
    } catch (const DegenerateSeedError& e) {
        row.status = "degenerate";
        row.note = e.what();
    }
    return row;
}

}  // namespace

int cmd_fidelity_curve(const FidelityOptions& o, std::ostream& os) {
    if (!(o.r0 > 0.0)) throw UsageError("r0 must be > 0");
    if (!(o.sigma_over_r0 > 0.0)) throw UsageError("sigma-over-r0 must be > 0");
    if (o.k0r0.start < 0.0) throw UsageError("k0r0 range must be >= 0");
    const std::vector<double> k0r0 = o.k0r0.values();
    const std::size_t m = k0r0.size();
    const double sigma = o.sigma_over_r0 * o.r0;
    std::vector<FidelityRow> rows(2 * m);
    num::parallel_for(2 * m, o.threads, [&](std::size_t i) {
        const double k0 = k0r0[i % m] / o.r0;
        if (i < m)
            rows[i] = numeric_row("tri2", SeedFunction::tri2_carrier(o.r0, k0));
        else
            rows[i] = numeric_row("gaussian", SeedFunction::truncated_gaussian(o.r0, k0, sigma));
    });
    if (o.analytic) {
        for (double v : k0r0) {
            FidelityRow row;
            row.curve = "gaussian_analytic";
            row.k0r0 = v;
            const double k0 = v / o.r0;
            row.eta = eta_gaussian_analytic(k0 * sigma);
            row.one_minus_F = one_minus_fidelity(row.eta);
            row.x = gaussian_effective_carrier(k0, sigma) * o.r0 / (2.0 * pi);
            rows.push_back(row);
        }
    }

    os << "# fidelity-curve r0=" << fmt17(o.r0) << " k0r0=" << o.k0r0.str() << " gaussian sigma=" << fmt17(sigma)
       << " seed intervals=" << kDefaultSeedIntervals << "\n";
    comment_grid_request(os, SpectralGridRequest{});
    os << "# k0eff from the orthogonalized spectrum; analytic curve uses the untruncated Gaussian spectrum\n";
    for (const auto& r : rows)
        if (r.status != "ok") os << "# warning: " << r.curve << " k0r0=" << fmt17(r.k0r0) << ": " << r.note << "\n";
    os << "curve,k0_r0,k0eff_r0_over_2pi,one_minus_F,eta,status\n";
    for (const auto& r : rows)
        os << r.curve << ',' << fmt17(r.k0r0) << ',' << fmt17(r.x) << ',' << fmt17(r.one_minus_F) << ','
           << fmt17(r.eta) << ',' << r.status << '\n';
    return kExitOk;
}

int cmd_bounds_sweep(const BoundsOptions& o, std::ostream& os, std::ostream& warn) {
    if (!(o.sigma > 0.0) || !(o.k0sigma > 0.0)) throw UsageError("sigma and k0sigma must be > 0");
    if (!(o.r0_over_sigma.start > 0.0)) throw UsageError("r0-over-sigma range must be > 0");
    const std::vector<double> xs = o.r0_over_sigma.values();
    std::vector<BoundReport> rows(xs.size());
    num::parallel_for(xs.size(), o.threads, [&](std::size_t i) {
        const double r0 = xs[i] * o.sigma;
        const PhotonSpec ph = PhotonSpec::gaussian(o.k0sigma / o.sigma, o.sigma, r0 / 2.0);
        rows[i] = bound_report(ph, r0);
    });

    const PhotonSpec ref = PhotonSpec::gaussian(o.k0sigma / o.sigma, o.sigma, 0.0);
    os << "# bounds-sweep k0sigma=" << fmt17(o.k0sigma) << " sigma=" << fmt17(o.sigma)
       << " r0_over_sigma=" << o.r0_over_sigma.str() << " photon centered at r0/2\n";
    os << "# photon spectrum grid: k_max=" << fmt17(ref.spectrum.k_max) << " n_points=" << ref.spectrum.n_points
       << "\n";
    os << "# lower bound: seed sampled on " << kDefaultSeedIntervals + 1 << " nodes over [0, r0]\n";
    comment_grid_request(os, SpectralGridRequest{});
    if (o.k0sigma < 10.0) {
        const std::string msg = "# warning: k0sigma < 10, the narrow-band upper bound may not apply\n";
        os << msg;
        warn << msg.substr(2);
    }
    for (std::size_t i = 0; i < rows.size(); ++i)
        os << "# r0_over_sigma=" << fmt17(xs[i]) << " R_max=" << fmt17(rows[i].r_max)
           << " lower_bound_tail_fraction=" << fmt17(rows[i].tail_fraction) << "\n";
    os << "r0_over_sigma,one_minus_F_upper,one_minus_F_lower,mu,abs_nu,eta_trunc,overlap\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const BoundReport& r = rows[i];
        os << fmt17(xs[i]) << ',' << fmt17(1.0 - r.F_upper) << ',' << fmt17(1.0 - r.F_lower) << ',' << fmt17(r.mu)
           << ',' << fmt17(std::abs(r.nu)) << ',' << fmt17(r.eta_trunc) << ',' << fmt17(r.overlap) << '\n';
    }
    return kExitOk;
}

int cmd_oracle_check(const OracleOptions& o, std::ostream& os) {
    struct Item {
        double gamma;
        int n;
        int cutoff = 0;
        double F_closed = 0, F_oracle = 0, N_closed = 0, N_oracle = 0, norm = 0;
    };
    std::vector<Item> items;
    for (double g : o.gammas)
        for (double n : o.ns) {
            if (!(g >= 0.0)) throw UsageError("gamma must be >= 0");
            if (n < 1 || n != std::floor(n)) throw UsageError("n must be a positive integer");
            items.push_back({g, static_cast<int>(n)});
        }
    num::parallel_for(items.size(), o.threads, [&](std::size_t i) {
        Item& it = items[i];
        it.cutoff = heuristic_cutoff(it.gamma, it.n, o.truncation_tol);
        const TwoModeFockState s = licht_state(it.gamma, it.n, it.cutoff, o.truncation_tol);
        const SqueezeParams p = SqueezeParams::from_gamma(it.gamma);
        it.F_closed = fidelity_n(it.n, p);
        it.F_oracle = std::abs(s.amp(it.n, 0));
        it.N_closed = number_expectation(it.n, p);
        it.N_oracle = observables(s).N;
        it.norm = s.norm();
    });
    bool ok = true;
    os << "# oracle-check truncation_tol=" << fmt17(o.truncation_tol) << " tolerance=" << fmt17(o.tol) << "\n";
    for (const Item& it : items) {
        const double dF = std::abs(it.F_closed - it.F_oracle), dN = std::abs(it.N_closed - it.N_oracle);
        const bool pass = dF < o.tol && dN < o.tol;
        ok = ok && pass;
        os << "gamma=" << fmt17(it.gamma) << " n=" << it.n << " cutoff=" << it.cutoff << "\n"
           << "  fidelity  closed=" << fmt17(it.F_closed) << " oracle=" << fmt17(it.F_oracle) << " diff=" << fmt17(dF)
           << "\n"
           << "  number    closed=" << fmt17(it.N_closed) << " oracle=" << fmt17(it.N_oracle) << " diff=" << fmt17(dN)
           << "\n"
           << "  state norm=" << fmt17(it.norm) << "  " << (pass ? "PASS" : "FAIL") << "\n";
    }
    os << (ok ? "all closed forms agree with the oracle\n" : "closed forms disagree with the oracle\n");
    return ok ? kExitOk : kExitFailure;
}

}  // namespace sloc::cli
