#pragma once

#include <complex>
#include <utility>

namespace layerwave {

// Commutative algebra C(i) + j*C(i) with j*j = +1 and ij = ji.
// Elements are written w = u + j*v with u, v complex in i.
template <typename T>
struct Bicomplex {
    std::complex<T> u{};  // scalar part
    std::complex<T> v{};  // hyperbolic part (coefficient of j)

    constexpr Bicomplex() = default;
    constexpr Bicomplex(std::complex<T> u_, std::complex<T> v_) : u(u_), v(v_) {}

    friend constexpr Bicomplex operator+(const Bicomplex& a, const Bicomplex& b) {
        return {a.u + b.u, a.v + b.v};
    }
    friend constexpr Bicomplex operator-(const Bicomplex& a, const Bicomplex& b) {
        return {a.u - b.u, a.v - b.v};
    }
    friend constexpr Bicomplex operator-(const Bicomplex& a) { return {-a.u, -a.v}; }
    friend constexpr Bicomplex operator*(const Bicomplex& a, const Bicomplex& b) {
        // (u1 + j v1)(u2 + j v2) = (u1 u2 + v1 v2) + j (u1 v2 + v1 u2)
        return {a.u * b.u + a.v * b.v, a.u * b.v + a.v * b.u};
    }
    friend constexpr Bicomplex operator*(const std::complex<T>& s, const Bicomplex& a) {
        return {s * a.u, s * a.v};
    }
    friend constexpr Bicomplex operator*(const Bicomplex& a, const std::complex<T>& s) {
        return s * a;
    }
    friend constexpr Bicomplex operator*(T s, const Bicomplex& a) { return {s * a.u, s * a.v}; }
    friend constexpr Bicomplex operator*(const Bicomplex& a, T s) { return s * a; }
    friend constexpr bool operator==(const Bicomplex& a, const Bicomplex& b) {
        return a.u == b.u && a.v == b.v;
    }
};

using Bicomplexd = Bicomplex<double>;

// j-conjugation: u + j v  ->  u - j v.
template <typename T>
constexpr Bicomplex<T> conj_j(const Bicomplex<T>& w) {
    return {w.u, -w.v};
}

template <typename T>
constexpr std::pair<std::complex<T>, std::complex<T>> split(const Bicomplex<T>& w) {
    return {w.u, w.v};
}

// Idempotent projectors (1 +/- j)/2; they satisfy p+ * p- = 0 and p+ + p- = 1.
template <typename T>
constexpr Bicomplex<T> p_plus() {
    return {{T(0.5), T(0)}, {T(0.5), T(0)}};
}
template <typename T>
constexpr Bicomplex<T> p_minus() {
    return {{T(0.5), T(0)}, {T(-0.5), T(0)}};
}

// Characteristic components: w = p+ * (u+v) + p- * (u-v).
template <typename T>
constexpr std::complex<T> plus_part(const Bicomplex<T>& w) {
    return w.u + w.v;
}
template <typename T>
constexpr std::complex<T> minus_part(const Bicomplex<T>& w) {
    return w.u - w.v;
}

template <typename T>
constexpr Bicomplex<T> from_characteristic_parts(const std::complex<T>& wp,
                                                 const std::complex<T>& wm) {
    return {T(0.5) * (wp + wm), T(0.5) * (wp - wm)};
}

}  // namespace layerwave
