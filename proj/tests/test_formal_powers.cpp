#include "doctest.h"

#include "layerwave/formal_powers.hpp"

#include <cmath>
#include <stdexcept>

using Eigen::ArrayXd;

namespace {
layerwave::MediumProfile exp_profile(double alpha, Eigen::Index n = 1001, double x_max = 5.0) {
    // eps = (alpha x + 1)^{-2}, mu = 1  ->  f = e^{-alpha xi / 2}.
    return layerwave::build_profile(layerwave::power_law_permittivity(alpha, 1.0, -2.0), 1.0, x_max, n);
}
}  // namespace

TEST_CASE("unit profile turns the recursion into plain powers") {
    const auto p = layerwave::build_profile(layerwave::constant_permittivity(1.0), 1.0, 1.5, 751);
    const auto t = layerwave::build_powers(p, 8);
    for (int n = 0; n <= 8; ++n) {
        const ArrayXd expect = p.xi.pow(n);
        CHECK((t.x.row(n).transpose().array() - expect).abs().maxCoeff() < 1e-10);
        CHECK((t.x_tilde.row(n).transpose().array() - expect).abs().maxCoeff() < 1e-10);
        CHECK((t.phi.row(n).transpose().array() - expect).abs().maxCoeff() < 1e-10);
        CHECK((t.psi.row(n).transpose().array() - expect).abs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("first recursive integral matches the exponential closed form") {
    // f = e^{-xi/2}: X^{(1)} = int_0^xi e^s ds = e^xi - 1,
    //                Xt^{(1)} = int_0^xi e^{-s} ds = 1 - e^{-xi}.
    const auto p = exp_profile(1.0);
    const auto t = layerwave::build_powers(p, 2);
    CHECK((t.x.row(1).transpose().array() - (p.xi.exp() - 1.0)).abs().maxCoeff() < 1e-11);
    CHECK((t.x_tilde.row(1).transpose().array() - (1.0 - (-p.xi).exp())).abs().maxCoeff() < 1e-11);
}

TEST_CASE("second-order values and formal powers for the exponential profile") {
    // f = e^{-xi} (alpha = 2): X^{(1)} = (e^{2 xi} - 1)/2,
    // X^{(2)} = 2 int X^{(1)} e^{-2s} ds = xi - (1 - e^{-2 xi})/2,
    // phi_1 = f X^{(1)} = sinh(xi), psi_0 = e^{xi}.
    const auto p = exp_profile(2.0, 2001);
    const auto t = layerwave::build_powers(p, 3);
    const ArrayXd xi = p.xi;
    CHECK((t.x.row(1).transpose().array() - ((2.0 * xi).exp() - 1.0) / 2.0).abs().maxCoeff() < 1e-10);
    const ArrayXd x2 = xi - (1.0 - (-2.0 * xi).exp()) / 2.0;
    CHECK((t.x.row(2).transpose().array() - x2).abs().maxCoeff() < 1e-10);
    CHECK((t.phi.row(1).transpose().array() - xi.sinh()).abs().maxCoeff() < 1e-10);
    CHECK((t.psi.row(0).transpose().array() - xi.exp()).abs().maxCoeff() < 1e-12);
}

TEST_CASE("inverse-square profile matches its closed-form first integrals") {
    // f = (1+xi)^{-2}: Xt^{(1)} = int (1+s)^{-4} = (1 - (1+xi)^{-3})/3.
    const auto p = layerwave::build_profile(layerwave::power_law_permittivity(5.0, 1.0, -1.6), 1.0, 2.0, 2001);
    const auto t = layerwave::build_powers(p, 2);
    const ArrayXd expect = (1.0 - (1.0 + p.xi).pow(-3.0)) / 3.0;
    CHECK((t.x_tilde.row(1).transpose().array() - expect).abs().maxCoeff() < 1e-11);
    // X^{(1)} = int (1+s)^4 = ((1+xi)^5 - 1)/5.
    const ArrayXd expect_x = ((1.0 + p.xi).pow(5.0) - 1.0) / 5.0;
    CHECK((t.x.row(1).transpose().array() - expect_x).abs().maxCoeff() < 1e-10);
}

TEST_CASE("recursive integrals start at zero and formal powers keep parity at the origin") {
    const auto p = exp_profile(2.0);
    const auto t = layerwave::build_powers(p, 6);
    CHECK(t.x.row(0).minCoeff() == 1.0);
    CHECK(t.x_tilde.row(0).maxCoeff() == 1.0);
    for (int n = 1; n <= 6; ++n) {
        CHECK(t.x(n, 0) == 0.0);
        CHECK(t.x_tilde(n, 0) == 0.0);
        CHECK(t.phi(n, 0) == 0.0);
        CHECK(t.psi(n, 0) == 0.0);
    }
    CHECK(t.phi(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(t.psi(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("finite differences recover the recursion derivative") {
    // d X^{(n)} / dxi = n X^{(n-1)} (f^2)^{(-1)^n}; differentiate in x and
    // divide by dxi/dx = sqrt(mu eps).
    const auto p = exp_profile(2.0, 2001);
    const auto t = layerwave::build_powers(p, 4);
    const double dx = p.x_mesh.step;
    const ArrayXd w = (p.mu * p.eps).sqrt();
    for (int n : {1, 2, 3, 4}) {
        const ArrayXd weight = n % 2 == 1 ? ArrayXd(p.f.pow(-2.0)) : ArrayXd(p.f.pow(2.0));
        double emax = 0.0;
        for (Eigen::Index k = 1; k + 1 < p.eps.size(); k += 13) {
            const double dxi = (t.x(n, k + 1) - t.x(n, k - 1)) / (2.0 * dx) / w(k);
            const double expect = n * t.x(n - 1, k) * weight(k);
            emax = std::max(emax, std::abs(dxi - expect) / std::max(1.0, std::abs(expect)));
        }
        CHECK(emax < 1e-4);  // O(step^2) with step = 2.5e-3
    }
}

TEST_CASE("wave traces reduce to binomial sums for the unit profile") {
    const auto p = layerwave::build_profile(layerwave::constant_permittivity(1.0), 1.0, 1.5, 751);
    const auto t = layerwave::build_powers(p, 7);
    const auto tr = layerwave::wave_traces(t, p.xi);
    for (int n = 1; n <= 7; ++n) {
        const ArrayXd sum = tr.c_phi.row(n).transpose().array() + tr.s_phi.row(n).transpose().array();
        CHECK((sum - (2.0 * p.xi).pow(n)).abs().maxCoeff() < 1e-9);
        // Even and odd halves are equal for f == 1 and n >= 1.
        CHECK((tr.c_phi.row(n) - tr.s_phi.row(n)).cwiseAbs().maxCoeff() <
              1e-11 * std::pow(2.0 * 1.5, n));
    }
}

TEST_CASE("low-order wave traces have their closed forms") {
    const auto p = exp_profile(2.0);
    const auto t = layerwave::build_powers(p, 3);
    const auto tr = layerwave::wave_traces(t, p.xi);
    // n = 0: c_0 = phi_0 = f, s_0 = 0.
    CHECK((tr.c_phi.row(0) - t.phi.row(0)).cwiseAbs().maxCoeff() == 0.0);
    CHECK(tr.s_phi.row(0).cwiseAbs().maxCoeff() == 0.0);
    // n = 1: c_1 = phi_1, s_1 = phi_0 * xi.
    CHECK((tr.c_phi.row(1) - t.phi.row(1)).cwiseAbs().maxCoeff() == 0.0);
    const ArrayXd s1 = t.phi.row(0).transpose().array() * p.xi;
    CHECK((tr.s_phi.row(1).transpose().array() - s1).abs().maxCoeff() < 1e-14);
    // psi family mirrors with psi powers.
    CHECK((tr.c_psi.row(0) - t.psi.row(0)).cwiseAbs().maxCoeff() == 0.0);
    const ArrayXd s1p = t.psi.row(0).transpose().array() * p.xi;
    CHECK((tr.s_psi.row(1).transpose().array() - s1p).abs().maxCoeff() < 1e-14);
}

TEST_CASE("pointwise wave polynomials match the traces on the diagonal") {
    const auto p = exp_profile(2.0);
    const auto t = layerwave::build_powers(p, 5);
    const auto tr = layerwave::wave_traces(t, p.xi);
    for (Eigen::Index k : {100L, 500L, 900L}) {
        for (int n = 0; n <= 5; ++n) {
            CHECK(layerwave::wave_poly_c(t, layerwave::PowerFamily::phi, n, k, p.xi(k)) ==
                  doctest::Approx(tr.c_phi(n, k)).epsilon(1e-13));
            CHECK(layerwave::wave_poly_s(t, layerwave::PowerFamily::phi, n, k, p.xi(k)) ==
                  doctest::Approx(tr.s_phi(n, k)).epsilon(1e-13));
            // Parity in tau.
            CHECK(layerwave::wave_poly_c(t, layerwave::PowerFamily::psi, n, k, -p.xi(k)) ==
                  doctest::Approx(tr.c_psi(n, k)).epsilon(1e-13));
            CHECK(layerwave::wave_poly_s(t, layerwave::PowerFamily::psi, n, k, -p.xi(k)) ==
                  doctest::Approx(-tr.s_psi(n, k)).epsilon(1e-13));
        }
    }
}

TEST_CASE("power builder rejects bad orders") {
    const auto p = exp_profile(2.0, 501, 1.0);
    CHECK_THROWS_AS(layerwave::build_powers(p, 0), std::invalid_argument);
    CHECK_THROWS_AS(layerwave::build_powers(p, 65), std::invalid_argument);
}
