#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <utility>

namespace layerwave {

using cplx = std::complex<double>;

// Highest supported polynomial order in the moment routines below.
inline constexpr int k_max_moment_order = 64;

// --- uniform meshes -------------------------------------------------------

struct UniformMesh {
    double start = 0.0;
    double step = 0.0;
    Eigen::Index count = 0;

    double point(Eigen::Index k) const { return start + step * static_cast<double>(k); }
    double stop() const { return point(count - 1); }
    double length() const { return step * static_cast<double>(count - 1); }
    Eigen::ArrayXd points() const {
        return Eigen::ArrayXd::LinSpaced(count, start, start + step * static_cast<double>(count - 1));
    }
};

// Mesh usable by the composite 6-node Newton-Cotes rule below: panel size 5,
// so the node count must be >= 6 and == 1 (mod 5). Rejects anything else.
UniformMesh make_conforming_mesh(double start, double stop, Eigen::Index count);

// --- cumulative composite Newton-Cotes (6 nodes per panel) ----------------
//
// Returns the running integral of the sampled function at every mesh node.
// Inside each 5-subinterval panel the degree-5 interpolant is integrated to
// each interior node with exact rational weights, so all nodes (not just
// panel boundaries) carry an O(step^6)-accurate value.
Eigen::ArrayXd nc6_cumulative(const Eigen::ArrayXd& samples, double step);
Eigen::ArrayXcd nc6_cumulative(const Eigen::ArrayXcd& samples, double step);

// --- cubic spline with not-a-knot ends ------------------------------------

template <typename T>
class CubicSpline {
  public:
    using ValueArray = Eigen::Array<T, Eigen::Dynamic, 1>;

    CubicSpline() = default;
    CubicSpline(const Eigen::ArrayXd& x, const ValueArray& y);

    T operator()(double xq) const;
    // Running integral from the first knot; integrate() is the difference form.
    T integral_from_start(double xq) const;
    T integrate(double a, double b) const { return integral_from_start(b) - integral_from_start(a); }

    double x_min() const { return x_(0); }
    double x_max() const { return x_(x_.size() - 1); }

  private:
    Eigen::Index interval(double xq) const;

    Eigen::ArrayXd x_;
    ValueArray y_;
    ValueArray m_;       // second derivatives at the knots
    ValueArray f_knot_;  // running integral at the knots
};

extern template class CubicSpline<double>;
extern template class CubicSpline<cplx>;

// --- monotone cubic interpolation (Steffen limiter) ------------------------
//
// Shape-preserving C^1 interpolant; used to invert monotone sampled maps.
class MonotoneCubic {
  public:
    MonotoneCubic() = default;
    MonotoneCubic(const Eigen::ArrayXd& x, const Eigen::ArrayXd& y);

    double operator()(double xq) const;
    double x_min() const { return x_(0); }
    double x_max() const { return x_(x_.size() - 1); }

  private:
    Eigen::ArrayXd x_, y_, dy_;
};

// --- trigonometric moments -------------------------------------------------
//
// cos_out[k] = int_0^xi tau^k cos(omega tau) dtau, sin_out[k] likewise with
// sin, for k = 0..k_max. A power-series branch handles the regimes where the
// upward closed-form recurrence cancels (|omega xi| < 1/2, and k > 2|omega xi|).
void trig_moments_all(int k_max, double omega, double xi,
                      Eigen::ArrayXd& cos_out, Eigen::ArrayXd& sin_out);
std::pair<double, double> trig_moments(int k, double omega, double xi);

// cos_out[l] = int_{z1}^{z2} z^l cos(omega z) dz, sin_out[l] likewise.
// Expanded about the interval midpoint so distant short intervals do not
// suffer the cancellation of an antiderivative difference.
void trig_interval_moments_all(int l_max, double omega, double z1, double z2,
                               Eigen::ArrayXd& cos_out, Eigen::ArrayXd& sin_out);

// Lower-triangular Pascal table: B(n, k) = C(n, k) for 0 <= k <= n.
Eigen::MatrixXd binomial_table(int n);

}  // namespace layerwave
