#include "layerwave/formal_powers.hpp"

#include <stdexcept>
#include <string>

namespace layerwave {

FormalPowersTable build_powers(const MediumProfile& profile, int order) {
    if (order < 1 || order > k_max_power_order) {
        throw std::invalid_argument("build_powers: order must be in [1, " +
                                    std::to_string(k_max_power_order) + "], got " +
                                    std::to_string(order));
    }
    const Eigen::Index m = profile.f.size();
    const Eigen::ArrayXd w_pos = profile.f.square();
    const Eigen::ArrayXd w_neg = w_pos.inverse();

    FormalPowersTable t;
    t.order = order;
    t.x.resize(order + 1, m);
    t.x_tilde.resize(order + 1, m);
    t.x.row(0).setOnes();
    t.x_tilde.row(0).setOnes();
    for (int n = 1; n <= order; ++n) {
        const bool odd = (n % 2 == 1);
        const Eigen::ArrayXd gx = t.x.row(n - 1).transpose().array() * (odd ? w_neg : w_pos);
        const Eigen::ArrayXd gt = t.x_tilde.row(n - 1).transpose().array() * (odd ? w_pos : w_neg);
        t.x.row(n) = static_cast<double>(n) * integrate_in_xi(gx, profile).transpose();
        t.x_tilde.row(n) = static_cast<double>(n) * integrate_in_xi(gt, profile).transpose();
        if (!t.x.row(n).allFinite() || !t.x_tilde.row(n).allFinite()) {
            throw std::overflow_error("build_powers: recursion overflowed at order " +
                                      std::to_string(n) + "; mesh too coarse or interval too long");
        }
    }

    t.phi.resize(order + 1, m);
    t.psi.resize(order + 1, m);
    const Eigen::ArrayXd f = profile.f;
    for (int k = 0; k <= order; ++k) {
        const bool even = (k % 2 == 0);
        t.phi.row(k) = (even ? t.x_tilde.row(k) : t.x.row(k)).transpose().array() * f;
        t.psi.row(k) = (even ? t.x.row(k) : t.x_tilde.row(k)).transpose().array() / f;
    }
    return t;
}

WaveTraceTable wave_traces(const FormalPowersTable& powers, const Eigen::ArrayXd& xi) {
    const int n_top = powers.order;
    const Eigen::Index m = powers.phi.cols();
    if (xi.size() != m) throw std::invalid_argument("wave_traces: xi size mismatch");

    Eigen::MatrixXd xi_pow(n_top + 1, m);
    xi_pow.row(0).setOnes();
    for (int k = 1; k <= n_top; ++k) xi_pow.row(k) = xi_pow.row(k - 1).cwiseProduct(xi.matrix().transpose());

    const Eigen::MatrixXd bin = binomial_table(n_top);
    WaveTraceTable w;
    w.c_phi = Eigen::MatrixXd::Zero(n_top + 1, m);
    w.s_phi = Eigen::MatrixXd::Zero(n_top + 1, m);
    w.c_psi = Eigen::MatrixXd::Zero(n_top + 1, m);
    w.s_psi = Eigen::MatrixXd::Zero(n_top + 1, m);
    for (int n = 0; n <= n_top; ++n) {
        for (int k = 0; k <= n; ++k) {
            const auto term_phi = bin(n, k) * powers.phi.row(n - k).cwiseProduct(xi_pow.row(k));
            const auto term_psi = bin(n, k) * powers.psi.row(n - k).cwiseProduct(xi_pow.row(k));
            if (k % 2 == 0) {
                w.c_phi.row(n) += term_phi;
                w.c_psi.row(n) += term_psi;
            } else {
                w.s_phi.row(n) += term_phi;
                w.s_psi.row(n) += term_psi;
            }
        }
    }
    return w;
}

namespace {
double wave_poly_sum(const FormalPowersTable& powers, PowerFamily family, int n, Eigen::Index node,
                     double tau, int k_parity) {
    if (n < 0 || n > powers.order) throw std::invalid_argument("wave polynomial order out of range");
    static const Eigen::MatrixXd bin = binomial_table(k_max_power_order);
    const Eigen::MatrixXd& fam = (family == PowerFamily::phi) ? powers.phi : powers.psi;
    double acc = 0.0;
    double tau_k = (k_parity == 0) ? 1.0 : tau;
    for (int k = k_parity; k <= n; k += 2) {
        acc += bin(n, k) * fam(n - k, node) * tau_k;
        tau_k *= tau * tau;
    }
    return acc;
}
}  // namespace

double wave_poly_c(const FormalPowersTable& powers, PowerFamily family, int n, Eigen::Index node,
                   double tau) {
    return wave_poly_sum(powers, family, n, node, tau, 0);
}

double wave_poly_s(const FormalPowersTable& powers, PowerFamily family, int n, Eigen::Index node,
                   double tau) {
    return wave_poly_sum(powers, family, n, node, tau, 1);
}

}  // namespace layerwave
