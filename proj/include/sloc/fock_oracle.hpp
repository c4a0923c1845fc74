#pragma once

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "sloc/numerics.hpp"

namespace sloc {

// Two-mode amplitudes c(n1, n2), 0 <= n1, n2 <= cutoff.
struct TwoModeFockState {
    int cutoff = 0;
    Eigen::MatrixXcd amp;

    static TwoModeFockState vacuum(int cutoff);
    static TwoModeFockState basis(int cutoff, int n1, int n2);
    double norm() const;
    // Probability in the shells n1 >= cutoff-1 or n2 >= cutoff-1.
    double top_shell_mass() const;
};

// Operator that maps the sector d = n1 - n2 to d + shift. Within a sector the
// basis index j labels (n1, n2) = (j + max(d,0), j + max(-d,0)).
class FockOperator {
public:
    FockOperator(int cutoff, int shift);

    int cutoff() const { return cutoff_; }
    int shift() const { return shift_; }
    static int sector_size(int cutoff, int d) { return cutoff - std::abs(d) + 1; }

    // Block acting on sector d, or an empty matrix if d + shift leaves the space.
    const Eigen::MatrixXd& block(int d) const { return blocks_[d + cutoff_]; }
    Eigen::MatrixXd& block(int d) { return blocks_[d + cutoff_]; }

    TwoModeFockState apply(const TwoModeFockState& s) const;
    FockOperator adjoint() const;
    // Full matrix in the n1*(cutoff+1)+n2 ordering; for small cutoffs only.
    Eigen::MatrixXd dense() const;

private:
    int cutoff_;
    int shift_;
    std::vector<Eigen::MatrixXd> blocks_;
};

inline constexpr double kDefaultTruncationTol = 1e-12;

// N >= n + ceil(ln(tol (1-t)) / ln t) + 10.
int heuristic_cutoff(double gamma, int n, double tol = kDefaultTruncationTol);

// exp(gamma (a1 a2 - a1^+ a2^+)) by scaling-and-squaring on each sector block.
// The disentangled product form is built alongside and must agree.
FockOperator squeeze_operator(double gamma, int cutoff, double tol = kDefaultTruncationTol);

// exp(-tanh g a1^+a2^+) cosh^{-(n1+n2+1)} g exp(tanh g a1 a2), nilpotent series.
FockOperator squeeze_operator_disentangled(double gamma, int cutoff);

// Largest difference between the two constructions on entries whose truncation
// error is below tol.
double squeeze_crosscheck(const FockOperator& a, const FockOperator& b, double gamma, double tol);

// A1^+ : |n1, n2> -> |n1+1, n2>, zero at n1 = cutoff.
FockOperator step_operator(int cutoff);

// (S^+ A1^+ S)^n |0>.
TwoModeFockState licht_state(double gamma, int n, int cutoff, double tol = kDefaultTruncationTol);

struct Observables {
    double N = 0.0;
    std::array<std::array<cplx, 2>, 2> corr_dag{};   // <a_i^+ a_j>
    std::array<std::array<cplx, 2>, 2> corr_pair{};  // <a_i a_j>
};

Observables observables(const TwoModeFockState& s);

// 2 Re sum E_i E_j <a_i a_j> + 2 Re sum E_i^* E_j <a_i^+ a_j>, pointwise.
RVec esq_from_correlators(const CVec& E1, const CVec& E2, const Observables& o);

}  // namespace sloc
