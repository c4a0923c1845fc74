#include <cmath>

#include "doctest.h"
#include "sloc/bounds.hpp"
#include "sloc/errors.hpp"

using namespace sloc;

namespace {

PhotonSpec photon(double r0) { return PhotonSpec::gaussian(20.0, 1.0, r0 / 2.0); }

}  // namespace

TEST_CASE("photon radial derivative against direct quadrature") {
    // mpmath quadrature of the j1 transform, k0 = 20, sigma = 1, center 1
    const PhotonSpec ph = PhotonSpec::gaussian(20.0, 1.0, 1.0);
    const CVec d = photon_radial_derivative(ph, {0.7, 1.3, 2.5});
    const cplx want[] = {{0.25398792622950746, 0.082752406914324936},
                         {0.17831993338081595, -0.057135244636653014},
                         {0.0072440597749882316, -0.033228086985134721}};
    for (int i = 0; i < 3; ++i) CHECK(std::abs(d[i] - want[i]) < 1e-9);
}

TEST_CASE("mu and nu") {
    const MuNu m0 = mu_nu(photon(1.0), 0.0);
    CHECK(std::abs(m0.mu - 1.0) < 1e-10);
    CHECK(std::abs(m0.nu) <= m0.mu);

    const MuNu far = mu_nu(photon(16.0), 16.0);
    CHECK(far.mu < 1e-12);
    CHECK(std::abs(far.nu) < 1e-12);

    double prev = 2.0;
    for (double r0 : {0.1, 0.5, 1.0, 2.0, 3.0, 4.0}) {
        const MuNu m = mu_nu(photon(r0), r0);
        CHECK(m.mu <= prev);
        CHECK(std::abs(m.nu) <= m.mu);
        CHECK(m.r_max > r0);
        prev = m.mu;
    }

    CHECK_THROWS_AS(mu_nu(photon(1.0), -0.1), DomainError);
    PhotonSpec raw = photon(1.0);
    raw.normalized = false;
    CHECK_THROWS_AS(mu_nu(raw, 1.0), PreconditionError);
    PhotonSpec neg = photon(1.0);
    neg.spectrum.values[neg.spectrum.zero_index() - 3] = 1e-3;
    CHECK_THROWS_AS(mu_nu(neg, 1.0), PreconditionError);
    CHECK_THROWS_AS(PhotonSpec::gaussian(20.0, 0.0, 1.0), DomainError);
}

TEST_CASE("upper bound") {
    CHECK(upper_bound(0.0, 0.0) == 1.0);
    // sqrt(1 - 4/(2 pi e)) and sqrt(1 - 1/(2 pi e)), mpmath
    CHECK(upper_bound(1.0, 1.0) == doctest::Approx(0.87510037932955060355).epsilon(1e-15));
    CHECK(upper_bound(1.0, cplx(0.0, 1.0)) == doctest::Approx(0.87510037932955060355).epsilon(1e-15));
    CHECK(upper_bound(1.0, 0.0) == doctest::Approx(0.97028355055400214659).epsilon(1e-15));
    CHECK(upper_bound(0.3, 0.1) > upper_bound(0.4, 0.1));
    CHECK_THROWS_AS(upper_bound(1.5, 0.0), DomainError);
    CHECK_THROWS_AS(upper_bound(-0.1, 0.0), DomainError);
    CHECK_THROWS_AS(upper_bound(0.2, 0.5), DomainError);
}

TEST_CASE("lower bound") {
    const double big = 10.0;
    const LowerBound far = lower_bound(photon(big), big);
    CHECK(far.overlap > 1.0 - 1e-9);
    CHECK(far.eta_trunc < 1e-9);
    CHECK(far.F_lower > 1.0 - 1e-9);

    // at large r0 the overlap dominates the loss
    const LowerBound lb = lower_bound(photon(4.0), 4.0);
    const double loss_overlap = 1.0 - lb.overlap, loss_eta = 1.0 - lb.F_lower / lb.overlap;
    CHECK(loss_eta < 0.1 * loss_overlap);

    for (double r0 : {0.2, 1.0, 2.5, 4.0}) {
        const BoundReport rep = bound_report(photon(r0), r0);
        CHECK(rep.F_lower <= rep.F_upper);
        CHECK(rep.F_lower >= 0.0);
        CHECK(rep.F_upper <= 1.0);
    }
    CHECK_THROWS_AS(lower_bound(photon(1.0), 0.0), DomainError);
}

TEST_CASE("c_xi from the smearing function") {
    for (double r0 : {0.1, 1.0, 4.0}) {
        const CXiCheck c = consistency_c_xi_detail(photon(r0), r0);
        CHECK(c.residual < 1e-8);
        const MuNu m = mu_nu(photon(r0), r0);
        CHECK(c.half_mu_plus_abs_nu == doctest::Approx(0.5 * (m.mu + std::abs(m.nu))).epsilon(1e-12));
        // maximizer at phi = -arg(nu)
        const double d = std::remainder(c.phi_max + std::arg(m.nu), 2.0 * pi);
        CHECK(std::abs(d) < 1e-4);
    }
    const CXiCheck far = consistency_c_xi_detail(photon(16.0), 16.0);
    CHECK(far.c_xi_sq < 1e-12);
    CHECK(far.half_mu_plus_abs_nu < 1e-12);
}
