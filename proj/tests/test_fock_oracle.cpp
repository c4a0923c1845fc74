#include <cmath>

#include "doctest.h"
#include "sloc/errors.hpp"
#include "sloc/fock_oracle.hpp"
#include "sloc/quantum_closed_form.hpp"

using namespace sloc;

namespace {

int idx(int cutoff, int n1, int n2) { return n1 * (cutoff + 1) + n2; }

}  // namespace

TEST_CASE("squeeze operator at gamma = 0 is the identity") {
    const int N = 12;
    const Eigen::MatrixXd S = squeeze_operator(0.0, N).dense();
    CHECK((S - Eigen::MatrixXd::Identity(S.rows(), S.cols())).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("squeezed vacuum amplitudes") {
    const double g = 0.3;
    const int N = 40;
    const TwoModeFockState s = squeeze_operator(g, N).apply(TwoModeFockState::vacuum(N));
    double worst = 0.0;
    for (int i = 0; i <= 30; ++i) {
        const double want = std::pow(-std::tanh(g), i) / std::cosh(g);
        worst = std::max(worst, std::abs(s.amp(i, i) - want));
    }
    CHECK(worst < 1e-10);
    double off = 0.0;
    for (int a = 0; a <= N; ++a)
        for (int b = 0; b <= N; ++b)
            if (a != b) off = std::max(off, std::abs(s.amp(a, b)));
    CHECK(off == 0.0);
}

TEST_CASE("squeeze operator is unitary on low-lying states") {
    const double g = 0.3;
    const int N = 40, low = 6;
    const FockOperator S = squeeze_operator(g, N);
    const Eigen::MatrixXd D = S.dense();
    double worst = 0.0;
    for (int a1 = 0; a1 < low; ++a1)
        for (int a2 = 0; a2 < low; ++a2)
            for (int b1 = 0; b1 < low; ++b1)
                for (int b2 = 0; b2 < low; ++b2) {
                    const double ip = D.col(idx(N, a1, a2)).dot(D.col(idx(N, b1, b2)));
                    worst = std::max(worst, std::abs(ip - (a1 == b1 && a2 == b2 ? 1.0 : 0.0)));
                }
    CHECK(worst < 1e-12);

    // adjoint undoes the operator on the same states
    const FockOperator Sd = S.adjoint();
    const TwoModeFockState back = Sd.apply(S.apply(TwoModeFockState::basis(N, 2, 1)));
    CHECK(std::abs(back.amp(2, 1) - 1.0) < 1e-12);
}

TEST_CASE("exponential and disentangled constructions agree") {
    for (double g : {0.05, 0.3, 0.6}) {
        const int N = heuristic_cutoff(g, 1);
        const double d = squeeze_crosscheck(squeeze_operator(g, N), squeeze_operator_disentangled(g, N), g, 1e-12);
        CHECK(d < 1e-9);
    }
}

TEST_CASE("step operator") {
    const int N = 6;
    const FockOperator A = step_operator(N);
    const TwoModeFockState s = A.apply(TwoModeFockState::vacuum(N));
    CHECK(s.amp(1, 0) == 1.0);
    CHECK(std::abs(s.norm() - 1.0) == 0.0);

    // A^+ A is the projector onto n1 < cutoff; A A^+ is the identity
    const Eigen::MatrixXd D = A.dense();
    const Eigen::MatrixXd AtA = D.transpose() * D;
    const Eigen::MatrixXd AAt = D * D.transpose();
    for (int n1 = 0; n1 <= N; ++n1)
        for (int n2 = 0; n2 <= N; ++n2) {
            const int i = idx(N, n1, n2);
            CHECK(AtA(i, i) == (n1 < N ? 1.0 : 0.0));
            CHECK(AAt(i, i) == (n1 > 0 ? 1.0 : 0.0));
        }
    CHECK((AtA - Eigen::MatrixXd(AtA.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Licht states") {
    for (int n : {1, 3}) {
        const TwoModeFockState s = licht_state(0.0, n, 8);
        CHECK(s.amp(n, 0) == 1.0);
        CHECK(std::abs(s.norm() - 1.0) < 1e-15);
    }
    for (double g : {0.1, 0.6})
        for (int n : {1, 2}) {
            const int N = heuristic_cutoff(g, n);
            const TwoModeFockState s = licht_state(g, n, N);
            CHECK(std::abs(s.norm() - 1.0) < 1e-10);
            double band = 0.0;
            for (int a = 0; a <= N; ++a)
                for (int b = 0; b <= N; ++b)
                    if (a - b != n) band = std::max(band, std::abs(s.amp(a, b)));
            CHECK(band < 1e-12);
            const TwoModeFockState s2 = licht_state(g, n, 2 * N);
            CHECK(std::abs(std::abs(s2.amp(n, 0)) - std::abs(s.amp(n, 0))) < 1e-10);
            CHECK(std::abs(observables(s2).N - observables(s).N) < 1e-10);
        }
    CHECK_THROWS_AS(licht_state(0.6, 1, 5), TruncationError);
    CHECK_THROWS_AS(licht_state(0.3, 0, 20), DomainError);
}

TEST_CASE("observables") {
    const Observables v = observables(TwoModeFockState::vacuum(5));
    CHECK(v.N == 0.0);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            CHECK(std::abs(v.corr_dag[i][j]) == 0.0);
            CHECK(std::abs(v.corr_pair[i][j]) == 0.0);
        }
    const Observables o = observables(TwoModeFockState::basis(5, 1, 0));
    CHECK(o.N == doctest::Approx(1.0));
    CHECK(o.corr_dag[0][0] == cplx(1.0));
    CHECK(std::abs(o.corr_dag[1][1]) == 0.0);
    CHECK(std::abs(o.corr_dag[0][1]) == 0.0);

    TwoModeFockState bad = TwoModeFockState::basis(5, 1, 0);
    bad.amp *= 2.0;
    CHECK_THROWS_AS(observables(bad), DomainError);
}

TEST_CASE("heuristic cutoff grows with gamma and n") {
    CHECK(heuristic_cutoff(0.6, 1) > heuristic_cutoff(0.1, 1));
    CHECK(heuristic_cutoff(0.3, 3) > heuristic_cutoff(0.3, 1));
}
