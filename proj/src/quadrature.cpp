#include "layerwave/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace layerwave {

namespace {

// Exact integrals of the degree-5 Lagrange basis over [x0, x0 + j*h],
// j = 1..5, on six equispaced nodes. Row j-1, column i: weight of sample i.
constexpr double nc6_cum_weights[5][6] = {
    {95.0 / 288, 1427.0 / 1440, -133.0 / 240, 241.0 / 720, -173.0 / 1440, 3.0 / 160},
    {14.0 / 45, 43.0 / 30, 7.0 / 45, 7.0 / 45, -1.0 / 15, 1.0 / 90},
    {51.0 / 160, 219.0 / 160, 57.0 / 80, 57.0 / 80, -21.0 / 160, 3.0 / 160},
    {14.0 / 45, 64.0 / 45, 8.0 / 15, 64.0 / 45, 14.0 / 45, 0.0},
    {95.0 / 288, 125.0 / 96, 125.0 / 144, 125.0 / 144, 125.0 / 96, 95.0 / 288},
};

void check_nc6_mesh(Eigen::Index n) {
    if (n < 6 || (n - 1) % 5 != 0) {
        throw std::invalid_argument("nc6_cumulative: sample count must be >= 6 and == 1 (mod 5), got " +
                                    std::to_string(n));
    }
}

template <typename Scalar, typename Acc>
Eigen::Array<Scalar, Eigen::Dynamic, 1> nc6_cumulative_impl(
    const Eigen::Array<Scalar, Eigen::Dynamic, 1>& g, double h) {
    check_nc6_mesh(g.size());
    if (!(h > 0.0)) throw std::invalid_argument("nc6_cumulative: step must be positive");

    Eigen::Array<Scalar, Eigen::Dynamic, 1> out(g.size());
    out(0) = Scalar(0);
    Acc base = Acc(0);  // running integral at the current panel start
    const long double lh = h;
    for (Eigen::Index p = 0; p + 5 < g.size(); p += 5) {
        for (int j = 1; j <= 5; ++j) {
            Acc acc = Acc(0);
            for (int i = 0; i < 6; ++i) {
                acc += static_cast<long double>(nc6_cum_weights[j - 1][i]) * static_cast<Acc>(g(p + i));
            }
            out(p + j) = static_cast<Scalar>(base + lh * acc);
        }
        base += lh * [&] {
            Acc acc = Acc(0);
            for (int i = 0; i < 6; ++i)
                acc += static_cast<long double>(nc6_cum_weights[4][i]) * static_cast<Acc>(g(p + i));
            return acc;
        }();
    }
    return out;
}

}  // namespace

UniformMesh make_conforming_mesh(double start, double stop, Eigen::Index count) {
    if (count < 6 || (count - 1) % 5 != 0) {
        throw std::invalid_argument("make_conforming_mesh: count must be >= 6 and == 1 (mod 5), got " +
                                    std::to_string(count));
    }
    if (!(stop > start)) throw std::invalid_argument("make_conforming_mesh: need stop > start");
    return UniformMesh{start, (stop - start) / static_cast<double>(count - 1), count};
}

Eigen::ArrayXd nc6_cumulative(const Eigen::ArrayXd& samples, double step) {
    return nc6_cumulative_impl<double, long double>(samples, step);
}

Eigen::ArrayXcd nc6_cumulative(const Eigen::ArrayXcd& samples, double step) {
    return nc6_cumulative_impl<cplx, std::complex<long double>>(samples, step);
}

// --- cubic spline -----------------------------------------------------------

template <typename T>
CubicSpline<T>::CubicSpline(const Eigen::ArrayXd& x, const ValueArray& y) : x_(x), y_(y) {
    const Eigen::Index n = x.size();
    if (n < 4) throw std::invalid_argument("CubicSpline: not-a-knot end conditions need >= 4 points");
    if (y.size() != n) throw std::invalid_argument("CubicSpline: x and y sizes differ");
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        if (!(x(i + 1) > x(i))) throw std::invalid_argument("CubicSpline: knots must be strictly increasing");
    }

    Eigen::ArrayXd h(n - 1);
    for (Eigen::Index i = 0; i + 1 < n; ++i) h(i) = x(i + 1) - x(i);

    // Reduced tridiagonal system in m_1..m_{n-2}; the end moments follow from
    // third-derivative continuity across the first and last interior knots.
    const Eigen::Index m = n - 2;
    Eigen::ArrayXd sub(m), diag(m), sup(m);
    ValueArray rhs(m);
    for (Eigen::Index i = 1; i <= n - 2; ++i) {
        rhs(i - 1) = (y(i + 1) - y(i)) / h(i) - (y(i) - y(i - 1)) / h(i - 1);
        sub(i - 1) = h(i - 1) / 6.0;
        diag(i - 1) = (h(i - 1) + h(i)) / 3.0;
        sup(i - 1) = h(i) / 6.0;
    }
    diag(0) += (h(0) / 6.0) * (1.0 + h(0) / h(1));
    sup(0) -= h(0) * h(0) / (6.0 * h(1));
    diag(m - 1) += (h(n - 2) / 6.0) * (1.0 + h(n - 2) / h(n - 3));
    sub(m - 1) -= h(n - 2) * h(n - 2) / (6.0 * h(n - 3));

    // Thomas elimination (real coefficients, possibly complex right side).
    for (Eigen::Index i = 1; i < m; ++i) {
        const double w = sub(i) / diag(i - 1);
        diag(i) -= w * sup(i - 1);
        rhs(i) -= w * rhs(i - 1);
    }
    ValueArray mi(m);
    mi(m - 1) = rhs(m - 1) / diag(m - 1);
    for (Eigen::Index i = m - 2; i >= 0; --i) mi(i) = (rhs(i) - sup(i) * mi(i + 1)) / diag(i);

    m_.resize(n);
    for (Eigen::Index i = 0; i < m; ++i) m_(i + 1) = mi(i);
    m_(0) = m_(1) - (h(0) / h(1)) * (m_(2) - m_(1));
    m_(n - 1) = m_(n - 2) + (h(n - 2) / h(n - 3)) * (m_(n - 2) - m_(n - 3));

    f_knot_.resize(n);
    f_knot_(0) = T(0);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        f_knot_(i + 1) = f_knot_(i) + (h(i) / 2.0) * (y(i) + y(i + 1)) -
                         (h(i) * h(i) * h(i) / 24.0) * (m_(i) + m_(i + 1));
    }
}

template <typename T>
Eigen::Index CubicSpline<T>::interval(double xq) const {
    const double span = x_max() - x_min();
    const double tol = 1e-9 * span;
    if (xq < x_min() - tol || xq > x_max() + tol) {
        throw std::domain_error("CubicSpline: query " + std::to_string(xq) + " outside data range [" +
                                std::to_string(x_min()) + ", " + std::to_string(x_max()) + "]");
    }
    const double* begin = x_.data();
    const double* end = x_.data() + x_.size();
    Eigen::Index i = std::upper_bound(begin, end, xq) - begin - 1;
    return std::clamp<Eigen::Index>(i, 0, x_.size() - 2);
}

template <typename T>
T CubicSpline<T>::operator()(double xq) const {
    const Eigen::Index i = interval(xq);
    const double h = x_(i + 1) - x_(i);
    const double u = xq - x_(i);
    const double w = x_(i + 1) - xq;
    return m_(i) * (w * w * w / (6.0 * h)) + m_(i + 1) * (u * u * u / (6.0 * h)) +
           (y_(i) / h - m_(i) * (h / 6.0)) * w + (y_(i + 1) / h - m_(i + 1) * (h / 6.0)) * u;
}

template <typename T>
T CubicSpline<T>::integral_from_start(double xq) const {
    const Eigen::Index i = interval(xq);
    const double h = x_(i + 1) - x_(i);
    const double u = xq - x_(i);
    const double w = x_(i + 1) - xq;
    const double h4 = h * h * h * h;
    return f_knot_(i) + m_(i) * ((h4 - w * w * w * w) / (24.0 * h)) + m_(i + 1) * (u * u * u * u / (24.0 * h)) +
           (y_(i) / h - m_(i) * (h / 6.0)) * ((h * h - w * w) / 2.0) +
           (y_(i + 1) / h - m_(i + 1) * (h / 6.0)) * (u * u / 2.0);
}

template class CubicSpline<double>;
template class CubicSpline<cplx>;

// --- monotone cubic ----------------------------------------------------------

namespace {
double steffen_end_slope(double p, double s) {
    if (p * s <= 0.0) return 0.0;
    if (std::abs(p) > 2.0 * std::abs(s)) return 2.0 * s;
    return p;
}
}  // namespace

MonotoneCubic::MonotoneCubic(const Eigen::ArrayXd& x, const Eigen::ArrayXd& y) : x_(x), y_(y) {
    const Eigen::Index n = x.size();
    if (n < 2) throw std::invalid_argument("MonotoneCubic: need at least 2 points");
    if (y.size() != n) throw std::invalid_argument("MonotoneCubic: x and y sizes differ");
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        if (!(x(i + 1) > x(i))) throw std::invalid_argument("MonotoneCubic: knots must be strictly increasing");
    }

    dy_.resize(n);
    if (n == 2) {
        dy_(0) = dy_(1) = (y(1) - y(0)) / (x(1) - x(0));
        return;
    }
    Eigen::ArrayXd h(n - 1), s(n - 1);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        h(i) = x(i + 1) - x(i);
        s(i) = (y(i + 1) - y(i)) / h(i);
    }
    for (Eigen::Index i = 1; i + 1 < n; ++i) {
        const double p = (s(i - 1) * h(i) + s(i) * h(i - 1)) / (h(i - 1) + h(i));
        const double sgn = (s(i - 1) > 0) + (s(i) > 0) - ((s(i - 1) < 0) + (s(i) < 0));
        dy_(i) = 0.5 * sgn * std::min({std::abs(s(i - 1)), std::abs(s(i)), 0.5 * std::abs(p)}) * 2.0;
    }
    dy_(0) = steffen_end_slope(s(0) * (1.0 + h(0) / (h(0) + h(1))) - s(1) * (h(0) / (h(0) + h(1))), s(0));
    dy_(n - 1) = steffen_end_slope(
        s(n - 2) * (1.0 + h(n - 2) / (h(n - 2) + h(n - 3))) - s(n - 3) * (h(n - 2) / (h(n - 2) + h(n - 3))),
        s(n - 2));
}

double MonotoneCubic::operator()(double xq) const {
    const double span = x_max() - x_min();
    const double tol = 1e-9 * span;
    if (xq < x_min() - tol || xq > x_max() + tol) {
        throw std::domain_error("MonotoneCubic: query " + std::to_string(xq) + " outside data range");
    }
    const double* begin = x_.data();
    const double* end = x_.data() + x_.size();
    Eigen::Index i = std::upper_bound(begin, end, xq) - begin - 1;
    i = std::clamp<Eigen::Index>(i, 0, x_.size() - 2);
    const double h = x_(i + 1) - x_(i);
    const double t = (xq - x_(i)) / h;
    const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
    const double h10 = t * (1 - t) * (1 - t);
    const double h01 = t * t * (3 - 2 * t);
    const double h11 = t * t * (t - 1);
    return h00 * y_(i) + h10 * h * dy_(i) + h01 * y_(i + 1) + h11 * h * dy_(i + 1);
}

// --- trigonometric moments ---------------------------------------------------

namespace {

// Series forms of int_0^xi tau^k {cos,sin}(omega tau) dtau, accurate wherever
// the upward recurrence would cancel. x = omega * xi assumed >= 0 here.
long double series_cos_moment(int k, long double omega, long double xi) {
    const long double x = omega * xi;
    long double pow_term = 1.0L;  // x^{2m} / (2m)!
    long double acc = 1.0L / (k + 1);
    for (int m = 1; m <= 300; ++m) {
        pow_term *= -x * x / ((2.0L * m - 1.0L) * (2.0L * m));
        const long double t = pow_term / (k + 2.0L * m + 1.0L);
        acc += t;
        if (std::abs(t) < 1e-24L * std::abs(acc)) break;
    }
    return std::pow(xi, static_cast<long double>(k + 1)) * acc;
}

long double series_sin_moment(int k, long double omega, long double xi) {
    const long double x = omega * xi;
    long double pow_term = x;  // x^{2m+1} / (2m+1)!
    long double acc = x / (k + 2);
    for (int m = 1; m <= 300; ++m) {
        pow_term *= -x * x / ((2.0L * m) * (2.0L * m + 1.0L));
        const long double t = pow_term / (k + 2.0L * m + 2.0L);
        acc += t;
        if (std::abs(t) < 1e-24L * std::abs(acc)) break;
    }
    return std::pow(xi, static_cast<long double>(k + 1)) * acc;
}

}  // namespace

void trig_moments_all(int k_max, double omega, double xi,
                      Eigen::ArrayXd& cos_out, Eigen::ArrayXd& sin_out) {
    if (k_max < 0 || k_max > k_max_moment_order) {
        throw std::invalid_argument("trig_moments_all: order must be in [0, " +
                                    std::to_string(k_max_moment_order) + "], got " + std::to_string(k_max));
    }
    cos_out.resize(k_max + 1);
    sin_out.resize(k_max + 1);

    const long double axi = std::abs(static_cast<long double>(xi));
    const long double aom = std::abs(static_cast<long double>(omega));
    const long double x = aom * axi;

    if (aom == 0.0L) {
        long double q = axi;  // axi^{k+1}
        for (int k = 0; k <= k_max; ++k) {
            cos_out(k) = static_cast<double>(q / (k + 1));
            sin_out(k) = 0.0;
            q *= axi;
        }
    } else {
        const long double sv = std::sin(x);
        const long double cv = std::cos(x);
        long double prev_c = 0.0L, prev_s = 0.0L;
        long double xik = 1.0L;  // axi^k
        for (int k = 0; k <= k_max; ++k) {
            long double ck, sk;
            if (x < 0.5L || static_cast<long double>(k) > 2.0L * x) {
                // Recurrence would cancel here; both series are benign.
                ck = series_cos_moment(k, aom, axi);
                sk = series_sin_moment(k, aom, axi);
            } else if (k == 0) {
                ck = sv / aom;
                sk = (1.0L - cv) / aom;
            } else {
                // Upward recurrence; stable because k <= 2 x on this branch,
                // and every earlier chain link also satisfied that bound.
                ck = (xik * sv) / aom - (static_cast<long double>(k) / aom) * prev_s;
                sk = -(xik * cv) / aom + (static_cast<long double>(k) / aom) * prev_c;
            }
            prev_c = ck;
            prev_s = sk;
            xik *= axi;
            cos_out(k) = static_cast<double>(ck);
            sin_out(k) = static_cast<double>(sk);
        }
    }

    // Parity: int_0^{-xi} tau^k cos = (-1)^{k+1} * int_0^{xi} tau^k cos, and the
    // sin moment picks up (-1)^k; a sign flip of omega negates only the sin side.
    if (xi < 0.0) {
        for (int k = 0; k <= k_max; ++k) {
            if (k % 2 == 0) cos_out(k) = -cos_out(k); else sin_out(k) = -sin_out(k);
        }
    }
    if (omega < 0.0) sin_out = -sin_out;
}

std::pair<double, double> trig_moments(int k, double omega, double xi) {
    Eigen::ArrayXd c, s;
    trig_moments_all(k, omega, xi, c, s);
    return {c(k), s(k)};
}

void trig_interval_moments_all(int l_max, double omega, double z1, double z2,
                               Eigen::ArrayXd& cos_out, Eigen::ArrayXd& sin_out) {
    if (l_max < 0 || l_max > k_max_moment_order) {
        throw std::invalid_argument("trig_interval_moments_all: order must be in [0, " +
                                    std::to_string(k_max_moment_order) + "]");
    }
    if (!(z2 >= z1)) throw std::invalid_argument("trig_interval_moments_all: need z2 >= z1");
    cos_out = Eigen::ArrayXd::Zero(l_max + 1);
    sin_out = Eigen::ArrayXd::Zero(l_max + 1);
    if (z2 == z1) return;

    const double zc = 0.5 * (z1 + z2);
    const double d = 0.5 * (z2 - z1);
    Eigen::ArrayXd cd, sd;
    trig_moments_all(l_max, omega, d, cd, sd);
    const long double cz = std::cos(static_cast<long double>(omega) * zc);
    const long double sz = std::sin(static_cast<long double>(omega) * zc);
    const Eigen::MatrixXd bin = binomial_table(l_max);

    Eigen::ArrayXd zc_pow(l_max + 1);
    zc_pow(0) = 1.0;
    for (int i = 1; i <= l_max; ++i) zc_pow(i) = zc_pow(i - 1) * zc;

    for (int l = 0; l <= l_max; ++l) {
        long double acc_c = 0.0L, acc_s = 0.0L;
        for (int i = 0; i <= l; ++i) {
            const long double w = bin(l, i) * static_cast<long double>(zc_pow(l - i));
            if (i % 2 == 0) {
                const long double even = 2.0L * static_cast<long double>(cd(i));
                acc_c += w * cz * even;
                acc_s += w * sz * even;
            } else {
                const long double odd = 2.0L * static_cast<long double>(sd(i));
                acc_c -= w * sz * odd;
                acc_s += w * cz * odd;
            }
        }
        cos_out(l) = static_cast<double>(acc_c);
        sin_out(l) = static_cast<double>(acc_s);
    }
}

Eigen::MatrixXd binomial_table(int n) {
    if (n < 0) throw std::invalid_argument("binomial_table: negative order");
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n + 1, n + 1);
    for (int r = 0; r <= n; ++r) {
        b(r, 0) = 1.0;
        for (int c = 1; c <= r; ++c) b(r, c) = b(r - 1, c - 1) + (c <= r - 1 ? b(r - 1, c) : 0.0);
    }
    return b;
}

}  // namespace layerwave
