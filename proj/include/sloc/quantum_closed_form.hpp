#pragma once

#include <functional>

namespace sloc {

struct SqueezeParams {
    double gamma = 0.0;
    double t = 0.0;    // tanh^2 gamma
    double eta = 0.0;  // t / (1 + t)

    static SqueezeParams from_gamma(double gamma);
    static SqueezeParams from_eta(double eta);
    double C() const;  // 1 / tanh gamma, infinite at gamma = 0
};

// Sum_{k>=1} sqrt(k) x^k for 0 <= x < 1.
double polylog_neg_half(double x);

namespace detail {
double polylog_neg_half_direct(double x);
double polylog_neg_half_expansion(double x);
}  // namespace detail

// M_n(a) = Sum_{i>=1} sqrt(i (i + n)) a^i.
double series_Mn(int n, double a);

// Single-photon fidelity as a function of eta in [0, 1/2].
double fidelity(double eta);
// 1 - F computed without cancellation for small eta.
double one_minus_fidelity(double eta);

// Fidelity between W^n|0> and |n, 0>.
double fidelity_n(int n, const SqueezeParams& p);

// H(n, tanh^2 gamma) enters <N> with coefficient -4.
using SeriesHook = std::function<double(int, double)>;
SeriesHook default_series_hook();

double number_expectation(int n, const SqueezeParams& p, const SeriesHook& H = default_series_hook());

}  // namespace sloc
