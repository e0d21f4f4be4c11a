#include "doctest.h"

#include "layerwave/quadrature.hpp"
#include "support/quad_oracle.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

using Eigen::ArrayXcd;
using Eigen::ArrayXd;
using layerwave::cplx;

TEST_CASE("conforming mesh builder rejects bad node counts") {
    CHECK_THROWS_AS(layerwave::make_conforming_mesh(0.0, 1.0, 7), std::invalid_argument);
    CHECK_THROWS_AS(layerwave::make_conforming_mesh(0.0, 1.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(layerwave::make_conforming_mesh(1.0, 1.0, 6), std::invalid_argument);
    const auto mesh = layerwave::make_conforming_mesh(0.0, 2.0, 11);
    CHECK(mesh.count == 11);
    CHECK(mesh.step == doctest::Approx(0.2));
    CHECK(mesh.points()(10) == doctest::Approx(2.0));
}

TEST_CASE("cumulative Newton-Cotes is exact on quintics at every node") {
    const auto mesh = layerwave::make_conforming_mesh(0.0, 2.0, 11);
    const ArrayXd t = mesh.points();
    const ArrayXd g = t.pow(5) - 3.0 * t.pow(4) + 2.0 * t.pow(2) - 1.0;
    const ArrayXd exact =
        t.pow(6) / 6.0 - 3.0 * t.pow(5) / 5.0 + 2.0 * t.pow(3) / 3.0 - t;
    const ArrayXd cum = layerwave::nc6_cumulative(g, mesh.step);
    CHECK((cum - exact).abs().maxCoeff() < 1e-13);
}

TEST_CASE("cumulative Newton-Cotes converges at sixth order") {
    auto max_err = [](Eigen::Index n) {
        const auto mesh = layerwave::make_conforming_mesh(0.0, 2.0, n);
        const ArrayXd t = mesh.points();
        const ArrayXd g = (3.0 * t).sin();
        const ArrayXd exact = (1.0 - (3.0 * t).cos()) / 3.0;
        return (layerwave::nc6_cumulative(g, mesh.step) - exact).abs().maxCoeff();
    };
    const double e1 = max_err(51);
    const double e2 = max_err(101);
    CHECK(e1 < 1e-6);
    CHECK(e2 < e1);
    CHECK(e1 / e2 > 40.0);  // sixth order predicts 64
}

TEST_CASE("cumulative Newton-Cotes tracks the exponential antiderivative") {
    const auto mesh = layerwave::make_conforming_mesh(0.0, 1.0, 101);
    const ArrayXd t = mesh.points();
    const ArrayXd cum = layerwave::nc6_cumulative(t.exp().eval(), mesh.step);
    CHECK((cum - (t.exp() - 1.0)).abs().maxCoeff() < 1e-12);
}

TEST_CASE("cumulative Newton-Cotes handles complex samples") {
    const auto mesh = layerwave::make_conforming_mesh(0.0, 1.5, 301);
    const ArrayXd t = mesh.points();
    const cplx i3{0.0, 3.0};
    ArrayXcd g(t.size()), exact(t.size());
    for (Eigen::Index k = 0; k < t.size(); ++k) {
        g(k) = std::exp(i3 * t(k));
        exact(k) = (std::exp(i3 * t(k)) - 1.0) / i3;
    }
    const ArrayXcd cum = layerwave::nc6_cumulative(g, mesh.step);
    CHECK((cum - exact).abs().maxCoeff() < 1e-12);
}

TEST_CASE("cumulative Newton-Cotes validates its input") {
    ArrayXd g = ArrayXd::Ones(8);
    CHECK_THROWS_AS(layerwave::nc6_cumulative(g, 0.1), std::invalid_argument);
    ArrayXd ok = ArrayXd::Ones(6);
    CHECK_THROWS_AS(layerwave::nc6_cumulative(ok, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(layerwave::nc6_cumulative(ok, -1.0), std::invalid_argument);
}

TEST_CASE("not-a-knot spline reproduces cubics on irregular knots") {
    ArrayXd x(7);
    x << 0.0, 0.3, 0.7, 1.2, 1.5, 2.3, 3.0;
    auto f = [](double s) { return s * s * s - 2.0 * s * s + s - 1.0; };
    auto F = [](double s) { return s * s * s * s / 4.0 - 2.0 * s * s * s / 3.0 + s * s / 2.0 - s; };
    ArrayXd y(7);
    for (int i = 0; i < 7; ++i) y(i) = f(x(i));
    const layerwave::CubicSpline<double> sp(x, y);
    for (double s : {0.05, 0.5, 1.0, 1.4, 2.0, 2.9}) {
        CHECK(sp(s) == doctest::Approx(f(s)).epsilon(1e-12));
        CHECK(sp.integral_from_start(s) == doctest::Approx(F(s) - F(0.0)).epsilon(1e-12));
    }
    CHECK(sp.integrate(0.4, 2.6) == doctest::Approx(F(2.6) - F(0.4)).epsilon(1e-12));
}

TEST_CASE("spline integral of s^2 over [0,2] from 101 samples is 8/3") {
    const ArrayXd x = ArrayXd::LinSpaced(101, 0.0, 2.0);
    const ArrayXd y = x.square();
    const layerwave::CubicSpline<double> sp(x, y);
    CHECK(std::abs(sp.integral_from_start(2.0) - 8.0 / 3.0) < 1e-10);
}

TEST_CASE("spline approximates smooth non-polynomial data") {
    const ArrayXd x = ArrayXd::LinSpaced(201, 0.0, 3.0);
    const ArrayXd y = x.sin();
    const layerwave::CubicSpline<double> sp(x, y);
    double emax = 0.0;
    for (double s = 0.0; s <= 3.0; s += 0.0101) emax = std::max(emax, std::abs(sp(s) - std::sin(s)));
    CHECK(emax < 1e-7);
    CHECK(sp.integral_from_start(3.0) == doctest::Approx(1.0 - std::cos(3.0)).epsilon(1e-10));
}

TEST_CASE("spline handles complex samples") {
    const ArrayXd x = ArrayXd::LinSpaced(301, 0.0, 3.0);
    ArrayXcd y(x.size());
    const cplx i2{0.0, 2.0};
    for (Eigen::Index k = 0; k < x.size(); ++k) y(k) = std::exp(i2 * x(k));
    const layerwave::CubicSpline<cplx> sp(x, y);
    const cplx expect = (std::exp(i2 * 2.7) - std::exp(i2 * 0.3)) / i2;
    CHECK(std::abs(sp.integrate(0.3, 2.7) - expect) < 1e-9);
}

TEST_CASE("spline rejects bad input and out-of-range queries") {
    ArrayXd x = ArrayXd::LinSpaced(3, 0.0, 1.0);
    ArrayXd y = ArrayXd::Zero(3);
    CHECK_THROWS_AS((layerwave::CubicSpline<double>(x, y)), std::invalid_argument);

    ArrayXd x4(4), y4(4);
    x4 << 0.0, 0.5, 0.5, 1.0;
    y4.setZero();
    CHECK_THROWS_AS((layerwave::CubicSpline<double>(x4, y4)), std::invalid_argument);

    x4 << 0.0, 0.4, 0.7, 1.0;
    const layerwave::CubicSpline<double> sp(x4, y4);
    CHECK_THROWS_AS(sp(1.5), std::domain_error);
    CHECK_THROWS_AS(sp.integral_from_start(-0.5), std::domain_error);
}

TEST_CASE("monotone cubic interpolates and preserves monotonicity") {
    ArrayXd x(6), y(6);
    x << 0.0, 0.5, 1.0, 2.0, 2.5, 4.0;
    y << 0.0, 0.02, 0.1, 2.0, 2.05, 2.06;  // sharply varying but increasing
    const layerwave::MonotoneCubic mc(x, y);
    for (int i = 0; i < 6; ++i) CHECK(mc(x(i)) == doctest::Approx(y(i)).epsilon(1e-14));
    double prev = mc(0.0);
    for (double s = 0.0; s <= 4.0; s += 0.004) {
        const double cur = mc(s);
        CHECK(cur >= prev - 1e-12);
        prev = cur;
    }
}

TEST_CASE("monotone cubic reproduces linear data exactly") {
    ArrayXd x(5), y(5);
    x << 0.0, 1.0, 2.5, 3.0, 5.0;
    y = 2.0 * x + 1.0;
    const layerwave::MonotoneCubic mc(x, y);
    for (double s : {0.2, 1.7, 2.9, 4.4}) CHECK(mc(s) == doctest::Approx(2.0 * s + 1.0).epsilon(1e-13));
}

TEST_CASE("trig moments match a slow quadrature oracle") {
    for (int k : {0, 1, 2, 5, 12, 20}) {
        for (double omega : {0.3, 2.5, 7.0}) {
            for (double xi : {0.1, 0.9, 3.0}) {
                const auto [c, s] = layerwave::trig_moments(k, omega, xi);
                const double oc = static_cast<double>(layerwave::testing::simpson(
                    [&](long double t) { return std::pow(t, static_cast<long double>(k)) * std::cos(omega * t); },
                    0.0L, xi, 100000));
                const double os = static_cast<double>(layerwave::testing::simpson(
                    [&](long double t) { return std::pow(t, static_cast<long double>(k)) * std::sin(omega * t); },
                    0.0L, xi, 100000));
                const double scale = std::max({1e-3, std::abs(oc), std::abs(os)});
                CHECK(std::abs(c - oc) < 1e-12 * scale);
                CHECK(std::abs(s - os) < 1e-12 * scale);
            }
        }
    }
}

TEST_CASE("trig moments obey the parity identities") {
    for (int k : {0, 1, 3, 8}) {
        const auto [c, s] = layerwave::trig_moments(k, 1.7, 1.3);
        const auto [cn, sn] = layerwave::trig_moments(k, -1.7, 1.3);
        CHECK(cn == doctest::Approx(c).epsilon(1e-14));
        CHECK(sn == doctest::Approx(-s).epsilon(1e-14));
        const auto [cm, sm] = layerwave::trig_moments(k, 1.7, -1.3);
        const double pc = (k % 2 == 0) ? -c : c;
        const double ps = (k % 2 == 0) ? s : -s;
        CHECK(cm == doctest::Approx(pc).epsilon(1e-14));
        CHECK(sm == doctest::Approx(ps).epsilon(1e-14));
    }
}

TEST_CASE("trig moments are continuous across the series/recurrence switch") {
    // omega * xi crosses 1/2 between these two xi values.
    for (int k = 0; k <= 8; ++k) {
        for (double xi : {0.4999, 0.5001}) {
            const auto [c, s] = layerwave::trig_moments(k, 1.0, xi);
            const double oc = static_cast<double>(layerwave::testing::simpson(
                [&](long double t) { return std::pow(t, static_cast<long double>(k)) * std::cos(t); }, 0.0L,
                xi, 2000));
            const double os = static_cast<double>(layerwave::testing::simpson(
                [&](long double t) { return std::pow(t, static_cast<long double>(k)) * std::sin(t); }, 0.0L,
                xi, 2000));
            CHECK(std::abs(c - oc) < 1e-14);
            CHECK(std::abs(s - os) < 1e-14);
        }
    }
}

TEST_CASE("zero-frequency trig moments reduce to the power rule") {
    Eigen::ArrayXd c, s;
    layerwave::trig_moments_all(6, 0.0, 1.7, c, s);
    for (int k = 0; k <= 6; ++k) {
        CHECK(c(k) == doctest::Approx(std::pow(1.7, k + 1) / (k + 1)).epsilon(1e-14));
        CHECK(s(k) == 0.0);
    }
}

TEST_CASE("trig moment order cap is enforced") {
    Eigen::ArrayXd c, s;
    CHECK_THROWS_AS(layerwave::trig_moments_all(65, 1.0, 1.0, c, s), std::invalid_argument);
    CHECK_THROWS_AS(layerwave::trig_moments_all(-1, 1.0, 1.0, c, s), std::invalid_argument);
}

TEST_CASE("interval moments match the oracle near the origin") {
    Eigen::ArrayXd c, s;
    layerwave::trig_interval_moments_all(9, 2.2, -0.7, 1.9, c, s);
    for (int l : {0, 3, 9}) {
        const double oc = static_cast<double>(layerwave::testing::simpson(
            [&](long double z) { return std::pow(z, static_cast<long double>(l)) * std::cos(2.2L * z); },
            -0.7L, 1.9L, 100000));
        const double os = static_cast<double>(layerwave::testing::simpson(
            [&](long double z) { return std::pow(z, static_cast<long double>(l)) * std::sin(2.2L * z); },
            -0.7L, 1.9L, 100000));
        CHECK(std::abs(c(l) - oc) < 1e-12);
        CHECK(std::abs(s(l) - os) < 1e-12);
    }
}

TEST_CASE("interval moments stay accurate far from the origin") {
    // Antiderivative differences would cancel ~19 digits here; the midpoint
    // expansion must not.
    Eigen::ArrayXd c, s;
    layerwave::trig_interval_moments_all(12, 3.0, 39.7, 40.3, c, s);
    const double oc = static_cast<double>(layerwave::testing::simpson(
        [](long double z) { return std::pow(z, 12.0L) * std::cos(3.0L * z); }, 39.7L, 40.3L, 20000));
    const double os = static_cast<double>(layerwave::testing::simpson(
        [](long double z) { return std::pow(z, 12.0L) * std::sin(3.0L * z); }, 39.7L, 40.3L, 20000));
    CHECK(std::abs(c(12) - oc) < 1e-12 * std::abs(oc));
    CHECK(std::abs(s(12) - os) < 1e-12 * std::abs(os));
}

TEST_CASE("interval moments validate their interval") {
    Eigen::ArrayXd c, s;
    CHECK_THROWS_AS(layerwave::trig_interval_moments_all(3, 1.0, 2.0, 1.0, c, s), std::invalid_argument);
    layerwave::trig_interval_moments_all(3, 1.0, 1.0, 1.0, c, s);
    CHECK(c.abs().maxCoeff() == 0.0);
    CHECK(s.abs().maxCoeff() == 0.0);
}

TEST_CASE("binomial table holds Pascal's triangle") {
    const Eigen::MatrixXd b = layerwave::binomial_table(20);
    CHECK(b(5, 0) == 1.0);
    CHECK(b(5, 2) == 10.0);
    CHECK(b(5, 5) == 1.0);
    CHECK(b(20, 10) == 184756.0);
    CHECK(b(7, 3) == 35.0);
}
