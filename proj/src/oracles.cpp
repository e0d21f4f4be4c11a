#include "layerwave/oracles.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace layerwave {

namespace {

void require_positive_argument(double alpha, double beta, double x) {
    if (alpha * x + beta <= 0.0) {
        std::ostringstream msg;
        msg << "medium argument alpha x + beta = " << alpha * x + beta
            << " must be positive (x = " << x << ")";
        throw std::domain_error(msg.str());
    }
}

void require_printed_configuration(const Example3Params& p) {
    const bool printed = std::abs(p.ell - 0.2) <= 1e-12 && std::abs(p.alpha - 5.0) <= 1e-12 &&
                         std::abs(p.beta - 1.0) <= 1e-12 && std::abs(p.mu - 1.0) <= 1e-12;
    if (!printed)
        throw std::invalid_argument(
            "closed-form kernels exist only for (ell, alpha, beta, mu) = (1/5, 5, 1, 1)");
}

// Coefficients of the kernels as polynomials in tau at fixed xi.
// K_f(xi, tau)     = [(3 tau - 1)(xi+1)^2 - 3 (tau-1)^2 (tau+1)] / (4 (xi+1)^2)
// K_{1/f}(xi, tau) = [3 xi^2 + 6 xi + 4 - 3 tau^2 + 2 tau] / (4 (xi+1))
int kernel_tau_coeffs(PowerFamily side, double xi, double coeff[4]) {
    if (side == PowerFamily::phi) {
        const double s = (xi + 1.0) * (xi + 1.0);
        coeff[0] = (-s - 3.0) / (4.0 * s);
        coeff[1] = (3.0 * s + 3.0) / (4.0 * s);
        coeff[2] = 3.0 / (4.0 * s);
        coeff[3] = -3.0 / (4.0 * s);
        return 3;
    }
    const double d = 4.0 * (xi + 1.0);
    coeff[0] = (3.0 * xi * xi + 6.0 * xi + 4.0) / d;
    coeff[1] = 2.0 / d;
    coeff[2] = -3.0 / d;
    coeff[3] = 0.0;
    return 2;
}

// int_{z1}^{z2} s^j e^{-a s^2} ds for j = 0..j_max, extended precision.
void gauss_strip_moments(double a, double z1, double z2, int j_max, long double* out) {
    const long double al = a;
    const long double x1 = z1, x2 = z2;
    const long double root_a = std::sqrt(al);
    const long double sqrt_pi = 1.7724538509055160272981674833411452L;
    const long double e1 = std::exp(-al * x1 * x1);
    const long double e2 = std::exp(-al * x2 * x2);
    out[0] = sqrt_pi / (2.0L * root_a) * (std::erf(root_a * x2) - std::erf(root_a * x1));
    if (j_max >= 1) out[1] = (e1 - e2) / (2.0L * al);
    long double p1 = x1, p2 = x2;  // x^{j-1} running powers
    for (int j = 2; j <= j_max; ++j) {
        out[j] = ((j - 1) * out[j - 2] - (p2 * e2 - p1 * e1)) / (2.0L * al);
        p1 *= x1;
        p2 *= x2;
    }
}

constexpr double small_binomial[4][4] = {
    {1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};

struct Example3Point {
    double xi, eps, speed;
};

Example3Point locate(const Example3Params& p, double x) {
    require_positive_argument(p.alpha, p.beta, x);
    const double eps = p.eps_of(x);
    return {p.xi_of(x), eps, 1.0 / std::sqrt(eps * p.mu)};
}

std::pair<cplx, cplx> fields_from_parts(const Example3Point& at, double mu, cplx u, cplx v) {
    const cplx e = u / std::sqrt(at.speed * at.eps);
    const cplx h = cplx(0.0, -1.0) * v / std::sqrt(at.speed * mu);
    return {e, h};
}

}  // namespace

std::pair<cplx, cplx> example1_fields(const Example1Params& p, double x, double t) {
    require_positive_argument(p.alpha, p.beta, x);
    const double root_mu = std::sqrt(p.mu);
    const double arg = p.alpha * x + p.beta;
    const double envelope = root_mu / p.alpha * p.slope * std::log(arg / p.beta) + p.offset;
    const cplx phase = std::polar(1.0, p.alpha * t / (2.0 * root_mu));
    const double quarter = std::pow(p.mu, 0.25);
    const cplx e = quarter * std::sqrt(arg) * phase * envelope;
    const cplx h =
        -phase / (quarter * std::sqrt(arg)) * (envelope + 2.0 * p.slope * root_mu / p.alpha);
    return {e, h};
}

std::pair<cplx, cplx> example2_fields(const Example2Params& p, double x, double t) {
    require_positive_argument(p.alpha, p.beta, x);
    const double rate = p.rate();
    const cplx root = p.root();
    if (std::abs(root - cplx(rate, 0.0)) <= 1e-12 * (1.0 + rate))
        throw std::invalid_argument("printed solution is singular when D = C");
    const double arg = p.alpha * x + p.beta;
    const double quarter = std::pow(p.mu, 0.25);
    const cplx carrier = std::exp(cplx(0.0, 1.0) * p.omega * t);
    const cplx up = std::exp(root * std::sqrt(p.mu) / p.alpha * std::log(arg / p.beta));
    const cplx down = 1.0 / up;
    const cplx e = p.amplitude * quarter * std::sqrt(arg) * carrier *
                   (up + (root + rate) / (root - rate) * down);
    const cplx h = p.amplitude / (root - rate) * p.omega * carrier /
                   (quarter * std::sqrt(arg)) * (up - down);
    return {e, h};
}

double Example3Params::xi_of(double x) const {
    return std::sqrt(mu) / (alpha * ell) *
           (std::pow(alpha * x + beta, ell) - std::pow(beta, ell));
}

double Example3Params::x_of(double xi) const {
    return beta / alpha *
           (std::pow(1.0 + alpha * ell * xi / (std::sqrt(mu) * std::pow(beta, ell)), 1.0 / ell) -
            1.0);
}

double Example3Params::eps_of(double x) const {
    return std::pow(alpha * x + beta, 2.0 * ell - 2.0);
}

double example3_kernel(const Example3Params& p, PowerFamily side, double xi, double tau) {
    require_printed_configuration(p);
    double coeff[4];
    const int degree = kernel_tau_coeffs(side, xi, coeff);
    double value = 0.0;
    for (int k = degree; k >= 0; --k) value = value * tau + coeff[k];
    return value;
}

std::pair<cplx, cplx> example3_reference(const Example3Params& p, double decay, cplx amplitude,
                                         double x, double t) {
    require_printed_configuration(p);
    if (!(decay > 0.0)) throw std::invalid_argument("pulse decay must be positive");
    const Example3Point at = locate(p, x);

    // Strip moments of e^{-decay s^2} over the dependency interval.
    long double moments[4];
    gauss_strip_moments(decay, t - at.xi, t + at.xi, 3, moments);

    // int_{-xi}^{xi} tau^k w-(t - tau) dtau with w-(z) = e^{-decay z^2}:
    // substituting s = t - tau turns it into sum_j C(k,j) t^{k-j} (-1)^j I_j.
    double tau_power[4];
    for (int k = 0; k <= 3; ++k) {
        long double acc = 0.0L;
        long double t_pow = 1.0L;  // t^{k-j}, built from j = k downward
        for (int j = k; j >= 0; --j) {
            const long double term = small_binomial[k][j] * t_pow * moments[j];
            acc += (j % 2 == 0) ? term : -term;
            t_pow *= t;
        }
        tau_power[k] = static_cast<double>(acc);
    }

    double coeff_f[4], coeff_r[4];
    kernel_tau_coeffs(PowerFamily::phi, at.xi, coeff_f);
    kernel_tau_coeffs(PowerFamily::psi, at.xi, coeff_r);
    double integral_f = 0.0, integral_r = 0.0;
    for (int k = 0; k <= 3; ++k) {
        integral_f += coeff_f[k] * tau_power[k];
        integral_r += coeff_r[k] * tau_power[k];
    }

    const double off = t - at.xi;
    const double boundary = std::exp(-decay * off * off);
    const cplx minus_f = amplitude * (boundary + integral_f);
    const cplx minus_r = amplitude * (boundary + integral_r);
    const cplx u = 0.5 * minus_f;
    const cplx v = -0.5 * minus_r;
    return fields_from_parts(at, p.mu, u, v);
}

std::pair<cplx, cplx> example3_reference(const Example3Params& p, const GeneralInitialData& data,
                                         double x, double t, Eigen::Index panels) {
    require_printed_configuration(p);
    if (panels < 2 || panels % 2 != 0)
        throw std::invalid_argument("quadrature fallback needs an even panel count >= 2");
    const Example3Point at = locate(p, x);
    if (t - at.xi < data.z_min || t + at.xi > data.z_max) {
        std::ostringstream msg;
        msg << "point (x=" << x << ", t=" << t << ") depends on boundary data over ["
            << t - at.xi << ", " << t + at.xi << "], outside the covered range [" << data.z_min
            << ", " << data.z_max << "]";
        throw std::invalid_argument(msg.str());
    }

    // Composite Simpson of K(xi, tau) w(t + s tau) over tau in [-xi, xi].
    auto kernel_integral = [&](PowerFamily side, const GeneralBranchData& branch, int sign) {
        double coeff[4];
        const int degree = kernel_tau_coeffs(side, at.xi, coeff);
        const double step = 2.0 * at.xi / static_cast<double>(panels);
        cplx acc(0.0, 0.0);
        for (Eigen::Index k = 0; k <= panels; ++k) {
            const double tau = -at.xi + step * static_cast<double>(k);
            double kv = 0.0;
            for (int j = degree; j >= 0; --j) kv = kv * tau + coeff[j];
            const double weight = (k == 0 || k == panels) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
            acc += weight * kv * branch.value(t + sign * tau);
        }
        return acc * (step / 3.0);
    };

    const cplx plus_f = data.plus.value(t + at.xi) +
                        kernel_integral(PowerFamily::phi, data.plus, +1);
    const cplx minus_f = data.minus.value(t - at.xi) +
                         kernel_integral(PowerFamily::phi, data.minus, -1);
    const cplx plus_r = data.plus.value(t + at.xi) +
                        kernel_integral(PowerFamily::psi, data.plus, +1);
    const cplx minus_r = data.minus.value(t - at.xi) +
                         kernel_integral(PowerFamily::psi, data.minus, -1);
    const cplx u = 0.5 * (plus_f + minus_f);
    const cplx v = 0.5 * (plus_r - minus_r);
    return fields_from_parts(at, p.mu, u, v);
}

}  // namespace layerwave
