#include "sloc/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "sloc/errors.hpp"

namespace sloc {

namespace {

int n1_of(int d, int j) { return j + std::max(d, 0); }
int n2_of(int d, int j) { return j + std::max(-d, 0); }
int j_of(int d, int n1) { return n1 - std::max(d, 0); }

Eigen::MatrixXd nilpotent_exp(const Eigen::MatrixXd& A) {
    const auto m = A.rows();
    Eigen::MatrixXd sum = Eigen::MatrixXd::Identity(m, m);
    Eigen::MatrixXd term = sum;
    for (Eigen::Index k = 1; k < m; ++k) {
        term = term * A / static_cast<double>(k);
        if (term.cwiseAbs().maxCoeff() == 0.0) break;
        sum += term;
    }
    return sum;
}

}  // namespace

TwoModeFockState TwoModeFockState::vacuum(int cutoff) { return basis(cutoff, 0, 0); }

TwoModeFockState TwoModeFockState::basis(int cutoff, int n1, int n2) {
    if (cutoff < 1 || n1 < 0 || n2 < 0 || n1 > cutoff || n2 > cutoff)
        throw DomainError("basis state outside the truncated space");
    TwoModeFockState s;
    s.cutoff = cutoff;
    s.amp = Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1);
    s.amp(n1, n2) = 1.0;
    return s;
}

double TwoModeFockState::norm() const { return std::sqrt(amp.squaredNorm()); }

double TwoModeFockState::top_shell_mass() const {
    double m = 0.0;
    for (int a = 0; a <= cutoff; ++a)
        for (int b = 0; b <= cutoff; ++b)
            if (a >= cutoff - 1 || b >= cutoff - 1) m += std::norm(amp(a, b));
    return m;
}

FockOperator::FockOperator(int cutoff, int shift) : cutoff_(cutoff), shift_(shift), blocks_(2 * cutoff + 1) {
    if (cutoff < 1) throw DomainError("cutoff must be >= 1");
}

TwoModeFockState FockOperator::apply(const TwoModeFockState& s) const {
    if (s.cutoff != cutoff_) throw DomainError("state and operator cutoffs differ");
    TwoModeFockState out;
    out.cutoff = cutoff_;
    out.amp = Eigen::MatrixXcd::Zero(cutoff_ + 1, cutoff_ + 1);
    for (int d = -cutoff_; d <= cutoff_; ++d) {
        const auto& B = block(d);
        if (B.size() == 0) continue;
        const int dt = d + shift_;
        const int m = sector_size(cutoff_, d);
        Eigen::VectorXcd v(m);
        for (int j = 0; j < m; ++j) v[j] = s.amp(n1_of(d, j), n2_of(d, j));
        const Eigen::VectorXcd w = B * v;
        for (int j = 0; j < w.size(); ++j) out.amp(n1_of(dt, j), n2_of(dt, j)) += w[j];
    }
    return out;
}

FockOperator FockOperator::adjoint() const {
    FockOperator r(cutoff_, -shift_);
    for (int d = -cutoff_; d <= cutoff_; ++d) {
        const auto& B = block(d);
        if (B.size() == 0) continue;
        r.block(d + shift_) = B.transpose();
    }
    return r;
}

Eigen::MatrixXd FockOperator::dense() const {
    const int D = (cutoff_ + 1) * (cutoff_ + 1);
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(D, D);
    auto idx = [&](int a, int b) { return a * (cutoff_ + 1) + b; };
    for (int d = -cutoff_; d <= cutoff_; ++d) {
        const auto& B = block(d);
        const int dt = d + shift_;
        for (int r = 0; r < B.rows(); ++r)
            for (int c = 0; c < B.cols(); ++c)
                M(idx(n1_of(dt, r), n2_of(dt, r)), idx(n1_of(d, c), n2_of(d, c))) = B(r, c);
    }
    return M;
}

int heuristic_cutoff(double gamma, int n, double tol) {
    const double t = std::tanh(gamma) * std::tanh(gamma);
    if (t == 0.0) return n + 10;
    return n + static_cast<int>(std::ceil(std::log(tol * (1.0 - t)) / std::log(t))) + 10;
}

FockOperator squeeze_operator(double gamma, int cutoff, double tol) {
    if (!(gamma >= 0.0)) throw DomainError("gamma must be >= 0");
    const double t = std::tanh(gamma) * std::tanh(gamma);
    if (std::pow(t, cutoff) >= tol)
        throw TruncationError("cutoff " + std::to_string(cutoff) + " too small for gamma " + std::to_string(gamma));
    FockOperator S(cutoff, 0);
    for (int d = -cutoff; d <= cutoff; ++d) {
        const int m = FockOperator::sector_size(cutoff, d);
        Eigen::MatrixXd K = Eigen::MatrixXd::Zero(m, m);
        for (int j = 1; j < m; ++j) {
            const double c = gamma * std::sqrt(double(n1_of(d, j)) * n2_of(d, j));
            K(j - 1, j) = c;   // a1 a2
            K(j, j - 1) = -c;  // -a1^+ a2^+
        }
        S.block(d) = K.exp();
    }
    const FockOperator Sd = squeeze_operator_disentangled(gamma, cutoff);
    const double diff = squeeze_crosscheck(S, Sd, gamma, tol);
    if (diff > 1e-9)
        throw std::runtime_error("squeeze operator: exponential and disentangled forms differ by " + std::to_string(diff));
    return S;
}

FockOperator squeeze_operator_disentangled(double gamma, int cutoff) {
    const double th = std::tanh(gamma), ch = std::cosh(gamma);
    FockOperator S(cutoff, 0);
    for (int d = -cutoff; d <= cutoff; ++d) {
        const int m = FockOperator::sector_size(cutoff, d);
        Eigen::MatrixXd L = Eigen::MatrixXd::Zero(m, m), U = L, D = L;
        for (int j = 0; j < m; ++j) {
            const int a = n1_of(d, j), b = n2_of(d, j);
            D(j, j) = std::pow(ch, -(a + b + 1));
            if (j + 1 < m) L(j + 1, j) = std::sqrt((a + 1.0) * (b + 1.0));
            if (j > 0) U(j - 1, j) = std::sqrt(double(a) * b);
        }
        S.block(d) = nilpotent_exp(-th * L) * D * nilpotent_exp(th * U);
    }
    return S;
}

double squeeze_crosscheck(const FockOperator& a, const FockOperator& b, double gamma, double tol) {
    const double t = std::tanh(gamma) * std::tanh(gamma);
    // entries more than M steps below the sector edge carry truncation error < tol
    const int M = t > 0.0 ? static_cast<int>(std::ceil(2.0 * std::log(tol) / std::log(t))) + 2 : 0;
    double diff = 0.0;
    for (int d = -a.cutoff(); d <= a.cutoff(); ++d) {
        const int keep = FockOperator::sector_size(a.cutoff(), d) - M;
        if (keep <= 0) continue;
        diff = std::max(diff, (a.block(d).topLeftCorner(keep, keep) - b.block(d).topLeftCorner(keep, keep))
                                  .cwiseAbs()
                                  .maxCoeff());
    }
    return diff;
}

FockOperator step_operator(int cutoff) {
    FockOperator A(cutoff, 1);
    for (int d = -cutoff; d < cutoff; ++d) {
        const int m = FockOperator::sector_size(cutoff, d);
        const int dt = d + 1;
        const int mt = FockOperator::sector_size(cutoff, dt);
        Eigen::MatrixXd B = Eigen::MatrixXd::Zero(mt, m);
        for (int j = 0; j < m; ++j) {
            const int a = n1_of(d, j);
            if (a + 1 > cutoff) continue;
            B(j_of(dt, a + 1), j) = 1.0;
        }
        A.block(d) = B;
    }
    return A;
}

TwoModeFockState licht_state(double gamma, int n, int cutoff, double tol) {
    if (n < 1) throw DomainError("licht_state: n must be >= 1");
    const FockOperator S = squeeze_operator(gamma, cutoff, tol);
    const FockOperator Sd = S.adjoint();
    const FockOperator A = step_operator(cutoff);
    TwoModeFockState s = TwoModeFockState::vacuum(cutoff);
    for (int k = 0; k < n; ++k) s = Sd.apply(A.apply(S.apply(s)));
    const double tail = s.top_shell_mass();
    if (tail > tol)
        throw TruncationError("licht_state: top-shell mass " + std::to_string(tail) + " exceeds tolerance");
    return s;
}

namespace {

// a_mode |psi>, unnormalized.
Eigen::MatrixXcd annihilate(const Eigen::MatrixXcd& c, int mode) {
    const int N = static_cast<int>(c.rows()) - 1;
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(N + 1, N + 1);
    for (int a = 0; a <= N; ++a)
        for (int b = 0; b <= N; ++b) {
            if (mode == 0 && a > 0) r(a - 1, b) += std::sqrt(double(a)) * c(a, b);
            if (mode == 1 && b > 0) r(a, b - 1) += std::sqrt(double(b)) * c(a, b);
        }
    return r;
}

cplx inner(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) { return (x.conjugate().cwiseProduct(y)).sum(); }

}  // namespace

Observables observables(const TwoModeFockState& s) {
    const double nrm2 = s.amp.squaredNorm();
    if (std::abs(nrm2 - 1.0) > 1e-8) throw DomainError("observables: state is not normalized");
    Observables o;
    const Eigen::MatrixXcd a[2] = {annihilate(s.amp, 0), annihilate(s.amp, 1)};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            o.corr_dag[i][j] = inner(a[i], a[j]);
            o.corr_pair[i][j] = inner(s.amp, annihilate(a[j], i));
        }
    o.N = o.corr_dag[0][0].real() + o.corr_dag[1][1].real();
    return o;
}

RVec esq_from_correlators(const CVec& E1, const CVec& E2, const Observables& o) {
    if (E1.size() != E2.size()) throw DomainError("esq_from_correlators: size mismatch");
    RVec out(E1.size());
    for (std::size_t p = 0; p < E1.size(); ++p) {
        const cplx E[2] = {E1[p], E2[p]};
        cplx pair = 0.0, dag = 0.0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                pair += E[i] * E[j] * o.corr_pair[i][j];
                dag += std::conj(E[i]) * E[j] * o.corr_dag[i][j];
            }
        out[p] = 2.0 * pair.real() + 2.0 * dag.real();
    }
    return out;
}

}  // namespace sloc
