#include "layerwave/transmutation.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace layerwave {

namespace {
// The sweep residuals drop geometrically (roughly one decade per order) until
// they hit a flat rounding floor whose members scatter over a factor ~15;
// pre-floor points sit >70x above the minimum. Anything within knee_factor of
// the minimum is therefore "on the floor" and ties break toward the smallest
// order. The absolute term keeps an identically-zero curve selectable.
constexpr double knee_factor = 20.0;
constexpr double knee_floor = 1e-14;
}

std::pair<Eigen::ArrayXd, Eigen::ArrayXd> goursat_data(const MediumProfile& profile) {
    const Eigen::ArrayXd g_b = 0.25 * integrate_in_xi(profile.q, profile);
    return {g_b + 0.5 * profile.h, g_b};
}

TransmutationCoeffs fit_coefficients(const MediumProfile& profile, const FormalPowersTable& powers,
                                     int order) {
    return fit_coefficients(profile, powers, wave_traces(powers, profile.xi), order);
}

TransmutationCoeffs fit_coefficients(const MediumProfile& profile, const FormalPowersTable& powers,
                                     const WaveTraceTable& traces, int order) {
    if (order < 1 || order > powers.order) {
        throw std::invalid_argument("fit_coefficients: order must be in [1, powers.order]");
    }
    const Eigen::Index m = profile.xi.size();
    const auto [g_a, g_b] = goursat_data(profile);

    // Two decoupled least-squares problems over the mesh: the even part of the
    // kernel's diagonal trace against G_a, the odd part against G_b. Columns
    // are equilibrated so rank detection sees dependence, not scale.
    Eigen::MatrixXd basis_a = traces.c_phi.topRows(order + 1).transpose();
    Eigen::MatrixXd basis_b = traces.s_phi.middleRows(1, order).transpose();

    const auto equilibrate = [](Eigen::MatrixXd& basis) {
        Eigen::VectorXd scale = basis.colwise().norm();
        for (Eigen::Index j = 0; j < scale.size(); ++j) {
            if (scale(j) == 0.0) scale(j) = 1.0;
        }
        basis.array().rowwise() /= scale.transpose().array();
        return scale;
    };
    const Eigen::VectorXd scale_a = equilibrate(basis_a);
    const Eigen::VectorXd scale_b = equilibrate(basis_b);

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr_a(basis_a);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr_b(basis_b);
    if (qr_a.rank() < basis_a.cols() || qr_b.rank() < basis_b.cols()) {
        throw std::runtime_error("fit_coefficients: rank-deficient trace basis at order " +
                                 std::to_string(order) + "; reduce the order");
    }

    TransmutationCoeffs c;
    c.order = order;
    c.a = qr_a.solve(g_a.matrix()).cwiseQuotient(scale_a);
    c.b.resize(order + 1);
    c.b(0) = 0.5 * profile.h;
    c.b.tail(order) = qr_b.solve(g_b.matrix()).cwiseQuotient(scale_b);
    c.residual_a = (basis_a * c.a.cwiseProduct(scale_a) - g_a.matrix()).cwiseAbs().maxCoeff();
    c.residual_b =
        (basis_b * c.b.tail(order).cwiseProduct(scale_b) - g_b.matrix()).cwiseAbs().maxCoeff();
    c.xi_max = profile.xi(m - 1);
    return c;
}

OrderSweep select_order(const MediumProfile& profile, const FormalPowersTable& powers, int n_max) {
    if (n_max < 1 || n_max > powers.order) {
        throw std::invalid_argument("select_order: n_max must be in [1, powers.order]");
    }
    const WaveTraceTable traces = wave_traces(powers, profile.xi);
    OrderSweep sweep;
    sweep.residual.resize(n_max + 1);
    sweep.residual(0) = std::numeric_limits<double>::infinity();  // order 0 unused
    for (int n = 1; n <= n_max; ++n) {
        const auto c = fit_coefficients(profile, powers, traces, n);
        sweep.residual(n) = std::max(c.residual_a, c.residual_b);
    }
    const double best = sweep.residual.tail(n_max).minCoeff();
    const double cut = std::max(knee_factor * best, knee_floor);
    sweep.selected = n_max;
    for (int n = 1; n <= n_max; ++n) {
        if (sweep.residual(n) <= cut) {
            sweep.selected = n;
            break;
        }
    }
    return sweep;
}

OperatorTables build_operator_tables(const TransmutationCoeffs& coeffs,
                                     const FormalPowersTable& powers, const MediumProfile& profile,
                                     Eigen::Index node) {
    const int n_top = coeffs.order;
    if (n_top > powers.order) throw std::invalid_argument("build_operator_tables: powers too short");
    static const Eigen::MatrixXd bin = binomial_table(k_max_power_order);

    OperatorTables t;
    t.node = node;
    t.xi = profile.xi(node);
    t.d_phi = Eigen::VectorXd::Zero(n_top + 1);
    t.d_psi = Eigen::VectorXd::Zero(n_top + 1);
    for (int k = 0; k <= n_top; ++k) {
        double acc_phi = 0.0, acc_psi = 0.0;
        const bool even = (k % 2 == 0);
        for (int n = k; n <= n_top; ++n) {
            const double cnk = bin(n, k);
            const double coef_phi = even ? coeffs.a(n) : coeffs.b(n);
            const double coef_psi = even ? -coeffs.b(n) : -coeffs.a(n);
            acc_phi += coef_phi * cnk * powers.phi(n - k, node);
            acc_psi += coef_psi * cnk * powers.psi(n - k, node);
        }
        t.d_phi(k) = acc_phi;
        t.d_psi(k) = acc_psi;
    }
    return t;
}

namespace {

cplx apply_exp_with(const Eigen::VectorXd& d, double xi, double omega, int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("apply exp: sign must be +1 or -1");
    const int n_top = static_cast<int>(d.size()) - 1;
    Eigen::ArrayXd mc, ms;
    trig_moments_all(n_top, omega, xi, mc, ms);
    double acc_c = 0.0, acc_s = 0.0;
    for (int k = 0; k <= n_top; ++k) {
        if (k % 2 == 0) acc_c += d(k) * mc(k);
        else acc_s += d(k) * ms(k);
    }
    const cplx boundary = std::polar(1.0, sign * omega * xi);
    return boundary + 2.0 * acc_c + cplx(0.0, 2.0 * sign) * acc_s;
}

cplx apply_general_with(const Eigen::VectorXd& d, double xi, const GeneralBranchData& data, double t,
                        int branch_sign) {
    if (branch_sign != 1 && branch_sign != -1) {
        throw std::invalid_argument("apply general: branch sign must be +1 or -1");
    }
    const int n_top = static_cast<int>(d.size()) - 1;
    static const Eigen::MatrixXd bin = binomial_table(k_max_power_order);

    Eigen::ArrayXd t_pow(n_top + 1);
    t_pow(0) = 1.0;
    for (int k = 1; k <= n_top; ++k) t_pow(k) = t_pow(k - 1) * t;

    // int_{-xi}^{xi} tau^k w(t + branch tau) dtau expanded in the data moments
    // I_l = int_{t-xi}^{t+xi} z^l w(z) dz: the + branch weights are
    // C(k,l) (-t)^{k-l}, the - branch weights C(k,l) t^{k-l} (-1)^l.
    cplx acc = 0.0;
    for (int l = 0; l <= n_top; ++l) {
        double p = 0.0;
        for (int k = l; k <= n_top; ++k) {
            double w = bin(k, l) * t_pow(k - l);
            if (branch_sign > 0 && (k - l) % 2 == 1) w = -w;
            p += d(k) * w;
        }
        if (branch_sign < 0 && l % 2 == 1) p = -p;
        if (p != 0.0) acc += p * data.moment(l, t - xi, t + xi);
    }
    return data.value(t + branch_sign * xi) + acc;
}

}  // namespace

cplx apply_tf_exp(const OperatorTables& tables, double omega, int sign) {
    return apply_exp_with(tables.d_phi, tables.xi, omega, sign);
}

cplx apply_t1f_exp(const OperatorTables& tables, double omega, int sign) {
    return apply_exp_with(tables.d_psi, tables.xi, omega, sign);
}

cplx apply_tf_exp(const TransmutationCoeffs& coeffs, const FormalPowersTable& powers,
                  const MediumProfile& profile, double omega, int sign, Eigen::Index node) {
    return apply_tf_exp(build_operator_tables(coeffs, powers, profile, node), omega, sign);
}

cplx apply_t1f_exp(const TransmutationCoeffs& coeffs, const FormalPowersTable& powers,
                   const MediumProfile& profile, double omega, int sign, Eigen::Index node) {
    return apply_t1f_exp(build_operator_tables(coeffs, powers, profile, node), omega, sign);
}

namespace {

cplx apply_exp_naive_with(const TransmutationCoeffs& coeffs, const FormalPowersTable& powers,
                          const MediumProfile& profile, double omega, int sign, Eigen::Index node,
                          bool reflected) {
    const int n_top = coeffs.order;
    const double xi = profile.xi(node);
    static const Eigen::MatrixXd bin = binomial_table(k_max_power_order);
    Eigen::ArrayXd mc, ms;
    trig_moments_all(n_top, omega, xi, mc, ms);

    const Eigen::MatrixXd& fam = reflected ? powers.psi : powers.phi;
    double acc_c = 0.0, acc_s = 0.0;
    for (int n = 0; n <= n_top; ++n) {
        const double coef_even = reflected ? -coeffs.b(n) : coeffs.a(n);
        const double coef_odd = reflected ? -coeffs.a(n) : coeffs.b(n);
        for (int k = 0; k <= n; ++k) {
            const double base = bin(n, k) * fam(n - k, node);
            if (k % 2 == 0) acc_c += coef_even * base * mc(k);
            else acc_s += coef_odd * base * ms(k);
        }
    }
    return std::polar(1.0, sign * omega * xi) + 2.0 * acc_c + cplx(0.0, 2.0 * sign) * acc_s;
}

}  // namespace

cplx apply_tf_exp_naive(const TransmutationCoeffs& coeffs, const FormalPowersTable& powers,
                        const MediumProfile& profile, double omega, int sign, Eigen::Index node) {
    return apply_exp_naive_with(coeffs, powers, profile, omega, sign, node, false);
}

cplx apply_t1f_exp_naive(const TransmutationCoeffs& coeffs, const FormalPowersTable& powers,
                         const MediumProfile& profile, double omega, int sign, Eigen::Index node) {
    return apply_exp_naive_with(coeffs, powers, profile, omega, sign, node, true);
}

cplx apply_tf_general(const OperatorTables& tables, const GeneralBranchData& data, double t,
                      int branch_sign) {
    return apply_general_with(tables.d_phi, tables.xi, data, t, branch_sign);
}

cplx apply_t1f_general(const OperatorTables& tables, const GeneralBranchData& data, double t,
                       int branch_sign) {
    return apply_general_with(tables.d_psi, tables.xi, data, t, branch_sign);
}

ExactKernelPair exact_kernels_l15(double alpha, double beta, double mu) {
    if (std::abs(alpha - 5.0) > 1e-12 || std::abs(beta - 1.0) > 1e-12 || std::abs(mu - 1.0) > 1e-12) {
        throw std::invalid_argument(
            "exact_kernels_l15: closed forms are only available for alpha=5, beta=1, mu=1");
    }
    ExactKernelPair pair;
    pair.k_f = [](double xi, double t) {
        const double w = xi + 1.0;
        return ((3.0 * t - 1.0) * w * w - 3.0 * (t - 1.0) * (t - 1.0) * (t + 1.0)) / (4.0 * w * w);
    };
    pair.k_one_over_f = [](double xi, double t) {
        return (3.0 * xi * xi + 6.0 * xi + 4.0 - 3.0 * t * t + 2.0 * t) / (4.0 * (xi + 1.0));
    };
    return pair;
}

double fitted_kernel(const TransmutationCoeffs& coeffs, const FormalPowersTable& powers,
                     PowerFamily side, Eigen::Index node, double tau) {
    double acc = 0.0;
    for (int n = 0; n <= coeffs.order; ++n) {
        const double coef_even = (side == PowerFamily::phi) ? coeffs.a(n) : -coeffs.b(n);
        const double coef_odd = (side == PowerFamily::phi) ? coeffs.b(n) : -coeffs.a(n);
        acc += coef_even * wave_poly_c(powers, side, n, node, tau);
        acc += coef_odd * wave_poly_s(powers, side, n, node, tau);
    }
    return acc;
}

void write_coefficient_report(const TransmutationCoeffs& coeffs, std::ostream& out) {
    out << "# n a_n b_n\n";
    for (int n = 0; n <= coeffs.order; ++n) {
        out << n << ' ' << coeffs.a(n) << ' ' << coeffs.b(n) << '\n';
    }
    out << "# residual_a " << coeffs.residual_a << '\n';
    out << "# residual_b " << coeffs.residual_b << '\n';
    out << "# xi_max " << coeffs.xi_max << '\n';
}

}  // namespace layerwave
