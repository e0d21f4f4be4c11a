#include "doctest.h"

#include "layerwave/bicomplex.hpp"

#include <complex>

using layerwave::Bicomplexd;
using cplx = std::complex<double>;

namespace {
bool near(const cplx& a, const cplx& b, double tol = 1e-15) { return std::abs(a - b) <= tol; }
bool near(const Bicomplexd& a, const Bicomplexd& b, double tol = 1e-15) {
    return near(a.u, b.u, tol) && near(a.v, b.v, tol);
}
}  // namespace

TEST_CASE("hyperbolic unit squares to one and commutes") {
    const Bicomplexd j{{0.0, 0.0}, {1.0, 0.0}};
    const Bicomplexd one{{1.0, 0.0}, {0.0, 0.0}};
    CHECK(near(j * j, one));

    const Bicomplexd w{{1.5, -2.0}, {0.25, 3.0}};
    const Bicomplexd z{{-0.5, 1.0}, {2.0, -1.25}};
    CHECK(near(w * z, z * w));

    // i j = j i: multiplying by scalar i then by j equals j then i.
    const cplx i{0.0, 1.0};
    CHECK(near((i * w) * j, i * (w * j)));
}

TEST_CASE("projectors are idempotent, orthogonal, and sum to one") {
    const auto p = layerwave::p_plus<double>();
    const auto m = layerwave::p_minus<double>();
    const Bicomplexd one{{1.0, 0.0}, {0.0, 0.0}};
    const Bicomplexd zero{};
    CHECK(near(p * p, p));
    CHECK(near(m * m, m));
    CHECK(near(p * m, zero));
    CHECK(near(p + m, one));
}

TEST_CASE("j-conjugation kills the hyperbolic part of w * conj_j(w)") {
    const Bicomplexd w{{1.5, -2.0}, {0.25, 3.0}};
    const auto prod = w * layerwave::conj_j(w);
    CHECK(near(prod.u, w.u * w.u - w.v * w.v));
    CHECK(near(prod.v, cplx{0.0, 0.0}));
}

TEST_CASE("characteristic parts diagonalize the product") {
    const Bicomplexd w{{0.7, 1.1}, {-0.4, 0.9}};
    const Bicomplexd z{{-1.2, 0.3}, {0.8, 0.5}};

    // In the idempotent basis multiplication acts componentwise.
    CHECK(near(layerwave::plus_part(w * z), layerwave::plus_part(w) * layerwave::plus_part(z)));
    CHECK(near(layerwave::minus_part(w * z), layerwave::minus_part(w) * layerwave::minus_part(z)));

    const auto back = layerwave::from_characteristic_parts(layerwave::plus_part(w), layerwave::minus_part(w));
    CHECK(near(back, w));

    // w = p+ (u + v) + p- (u - v).
    const auto rebuilt = layerwave::p_plus<double>() * Bicomplexd{layerwave::plus_part(w), {0.0, 0.0}} +
                         layerwave::p_minus<double>() * Bicomplexd{layerwave::minus_part(w), {0.0, 0.0}};
    CHECK(near(rebuilt, w));
}

TEST_CASE("split returns the scalar and hyperbolic components") {
    const Bicomplexd w{{2.0, -1.0}, {0.5, 4.0}};
    const auto [u, v] = layerwave::split(w);
    CHECK(u == w.u);
    CHECK(v == w.v);
}
