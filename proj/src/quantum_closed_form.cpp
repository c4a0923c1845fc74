#include "sloc/quantum_closed_form.hpp"

#include <cmath>
#include <limits>

#include "sloc/errors.hpp"
#include "sloc/numerics.hpp"

namespace sloc {

namespace {

constexpr double kRelTol = 1e-17;
constexpr long kMaxTerms = 50'000'000;

}  // namespace

SqueezeParams SqueezeParams::from_gamma(double gamma) {
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw DomainError("gamma must be finite and >= 0");
    SqueezeParams p;
    p.gamma = gamma;
    const double th = std::tanh(gamma);
    p.t = th * th;
    p.eta = p.t / (1.0 + p.t);
    return p;
}

SqueezeParams SqueezeParams::from_eta(double eta) {
    if (!(eta >= 0.0 && eta < 0.5)) throw DomainError("eta must lie in [0, 1/2)");
    SqueezeParams p;
    p.eta = eta;
    p.t = eta / (1.0 - eta);
    p.gamma = std::atanh(std::sqrt(p.t));
    return p;
}

double SqueezeParams::C() const {
    return gamma == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / std::tanh(gamma);
}

namespace detail {

double polylog_neg_half_direct(double x) {
    if (x == 0.0) return 0.0;
    double sum = 0.0, xk = 1.0;
    for (long k = 1; k < kMaxTerms; ++k) {
        xk *= x;
        const double term = std::sqrt(static_cast<double>(k)) * xk;
        sum += term;
        // terms decay with ratio below x*sqrt((k+2)/(k+1))
        const double r = x * std::sqrt((k + 2.0) / (k + 1.0));
        if (r < 1.0) {
            const double next = term * x * std::sqrt((k + 1.0) / k);
            if (next / (1.0 - r) < kRelTol * sum) return sum;
        }
    }
    throw DomainError("polylog_neg_half: series did not converge");
}

// Li_s(e^mu) = Gamma(1-s)(-mu)^(s-1) + Sum_k zeta(s-k) mu^k / k!, |mu| < 2 pi.
double polylog_neg_half_expansion(double x) {
    const double mu = std::log(x);
    if (!(mu < 0.0) || mu < -2.0 * pi + 0.5) throw DomainError("polylog expansion outside its range");
    const double s = -0.5;
    double sum = std::tgamma(1.0 - s) * std::pow(-mu, s - 1.0);
    double muk = 1.0, fact = 1.0;
    for (int k = 0; k < 200; ++k) {
        if (k > 0) {
            muk *= mu;
            fact *= k;
        }
        const double term = num::zeta(s - k) * muk / fact;
        sum += term;
        if (k > 2 && std::abs(term) < kRelTol * std::abs(sum)) return sum;
    }
    throw DomainError("polylog expansion did not converge");
}

}  // namespace detail

double polylog_neg_half(double x) {
    if (!(x >= 0.0 && x < 1.0)) throw DomainError("polylog_neg_half: x must lie in [0, 1)");
    return x <= 0.9 ? detail::polylog_neg_half_direct(x) : detail::polylog_neg_half_expansion(x);
}

double series_Mn(int n, double a) {
    if (n < 0) throw DomainError("series_Mn: n must be >= 0");
    if (!(a >= 0.0 && a < 1.0)) throw DomainError("series_Mn: a must lie in [0, 1)");
    if (a == 0.0) return 0.0;
    double sum = 0.0, ai = 1.0;
    for (long i = 1; i < kMaxTerms; ++i) {
        ai *= a;
        const double term = std::sqrt(static_cast<double>(i) * (i + n)) * ai;
        sum += term;
        const double r = a * std::sqrt((i + 2.0) * (i + 2.0 + n) / ((i + 1.0) * (i + 1.0 + n)));
        if (r < 1.0) {
            const double next = term * a * std::sqrt((i + 1.0) * (i + 1.0 + n) / (double(i) * (i + n)));
            if (next / (1.0 - r) < kRelTol * sum) return sum;
        }
    }
    throw DomainError("series_Mn: series did not converge");
}

namespace {

// S(x) = Li_{-1/2}(x) / x, equal to 1 at x = 0.
double li_over_x(double x) { return x == 0.0 ? 1.0 : polylog_neg_half(x) / x; }

void check_eta(double eta) {
    if (!(eta >= 0.0 && eta <= 0.5)) throw DomainError("fidelity: eta must lie in [0, 1/2]");
}

}  // namespace

// F = ((1-2 eta)/(1-eta))^(3/2) Li(x)/x with x = eta/(1-eta); same as the
// sqrt((1-2eta)^3/(eta^2-eta^3)) Li(x) form but finite at eta = 0.
double fidelity(double eta) {
    check_eta(eta);
    if (eta == 0.5) return std::sqrt(pi) / 2.0;
    const double x = eta / (1.0 - eta);
    return std::pow(1.0 - x, 1.5) * li_over_x(x);
}

double one_minus_fidelity(double eta) {
    check_eta(eta);
    if (eta == 0.5) return 1.0 - std::sqrt(pi) / 2.0;
    const double x = eta / (1.0 - eta);
    double s_minus_1;
    if (x < 0.5) {
        // S - 1 = Sum_{k>=2} sqrt(k) x^(k-1), summed directly to keep relative accuracy
        s_minus_1 = 0.0;
        double xk = 1.0;
        for (long k = 2; k < kMaxTerms; ++k) {
            xk *= x;
            const double term = std::sqrt(static_cast<double>(k)) * xk;
            s_minus_1 += term;
            if (term < 1e-18 * s_minus_1 || xk == 0.0) break;
        }
    } else {
        s_minus_1 = li_over_x(x) - 1.0;
    }
    const double logF = 1.5 * std::log1p(-x) + std::log1p(s_minus_1);
    return -std::expm1(logF);
}

double fidelity_n(int n, const SqueezeParams& p) {
    if (n < 1) throw DomainError("fidelity_n: n must be >= 1");
    const double t = p.t;
    if (!(t >= 0.0 && t < 1.0)) throw DomainError("fidelity_n: tanh^2 gamma must lie in [0, 1)");
    if (t == 0.0) return 1.0;
    const double lt = std::log(t);
    const double lgn = std::lgamma(n + 1.0);
    double sum = 0.0;
    for (long i = 0; i < kMaxTerms; ++i) {
        const double lb = std::lgamma(n + i + 1.0) - std::lgamma(i + 1.0) - lgn;
        const double term = std::exp(0.5 * lb + i * lt);
        sum += term;
        const double r = t * std::sqrt((n + i + 2.0) / (i + 2.0));
        if (r < 1.0) {
            const double next = term * t * std::sqrt((n + i + 1.0) / (i + 1.0));
            if (next / (1.0 - r) < kRelTol * sum) break;
        }
        if (i + 1 == kMaxTerms) throw DomainError("fidelity_n: series did not converge");
    }
    // cosh^{-2} gamma = 1 - t
    return std::pow(1.0 - t, 0.5 * (n + 2)) * sum;
}

SeriesHook default_series_hook() {
    return [](int n, double a) { return series_Mn(n, a); };
}

double number_expectation(int n, const SqueezeParams& p, const SeriesHook& H) {
    if (n < 0) throw DomainError("number_expectation: n must be >= 0");
    if (!(p.t >= 0.0 && p.t < 1.0)) throw DomainError("number_expectation: invalid squeeze parameters");
    const double sh = std::sinh(p.gamma) * std::sinh(p.gamma);
    const double ch = 1.0 + sh;
    const double h = H(n, p.t);
    if (!std::isfinite(h)) throw DomainError("number_expectation: series hook diverged");
    return (n + 2.0 * sh) * (ch + sh) + 2.0 * sh - 4.0 * h;
}

}  // namespace sloc
