#include "sloc/numerics.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/zeta.hpp>

namespace sloc::num {

RVec simpson_weights(std::size_t n) {
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("simpson_weights: need odd n >= 3");
    RVec w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = (i % 2 == 1) ? 4.0 / 3.0 : 2.0 / 3.0;
    w[0] = w[n - 1] = 1.0 / 3.0;
    return w;
}

double simpson(const RVec& y, double h) {
    const auto w = simpson_weights(y.size());
    double s = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) s += w[i] * y[i];
    return s * h;
}

cplx simpson(const CVec& y, double h) {
    const auto w = simpson_weights(y.size());
    cplx s = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) s += w[i] * y[i];
    return s * h;
}

void gauss_legendre_panels(double a, double b, int panels, int order, RVec& x, RVec& w) {
    if (order != 20) throw std::invalid_argument("gauss_legendre_panels: only order 20 is tabulated");
    using rule = boost::math::quadrature::gauss<double, 20>;
    const auto& ab = rule::abscissa();
    const auto& wt = rule::weights();
    x.clear();
    w.clear();
    const double len = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double c = a + (p + 0.5) * len, half = 0.5 * len;
        for (std::size_t i = 0; i < ab.size(); ++i) {
            x.push_back(c - half * ab[i]);
            w.push_back(half * wt[i]);
            x.push_back(c + half * ab[i]);
            w.push_back(half * wt[i]);
        }
    }
}

double sph_j1(double x) {
    const double ax = std::abs(x);
    if (ax < 1e-2) {
        const double x2 = x * x;
        return x / 3.0 * (1.0 - x2 / 10.0 * (1.0 - x2 / 28.0));
    }
    return std::sin(x) / (x * x) - std::cos(x) / x;
}

double zeta(double s) { return boost::math::zeta(s); }

cplx cubic_lagrange(const cplx* y, double s) {
    const double l0 = -(s - 1) * (s - 2) * (s - 3) / 6.0;
    const double l1 = s * (s - 2) * (s - 3) / 2.0;
    const double l2 = -s * (s - 1) * (s - 3) / 2.0;
    const double l3 = s * (s - 1) * (s - 2) / 6.0;
    return l0 * y[0] + l1 * y[1] + l2 * y[2] + l3 * y[3];
}

cplx cubic_lagrange_derivative(const cplx* y, double s) {
    const double d0 = -((s - 2) * (s - 3) + (s - 1) * (s - 3) + (s - 1) * (s - 2)) / 6.0;
    const double d1 = ((s - 2) * (s - 3) + s * (s - 3) + s * (s - 2)) / 2.0;
    const double d2 = -((s - 1) * (s - 3) + s * (s - 3) + s * (s - 1)) / 2.0;
    const double d3 = ((s - 1) * (s - 2) + s * (s - 2) + s * (s - 1)) / 6.0;
    return d0 * y[0] + d1 * y[1] + d2 * y[2] + d3 * y[3];
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& f) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                f(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!err) err = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    const int nt = static_cast<int>(std::min<std::size_t>(threads, n));
    for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

int default_threads() {
    if (const char* s = std::getenv("SLOC_THREADS")) {
        const int v = std::atoi(s);
        if (v > 0) return v;
    }
    return 1;
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace sloc::num
