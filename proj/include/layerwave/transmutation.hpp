#pragma once

#include "layerwave/formal_powers.hpp"

#include <complex>
#include <functional>
#include <iosfwd>
#include <utility>

namespace layerwave {

// Coefficients of the degree-N kernel approximation
//   K_N(xi, tau) = sum_n a_n c_n(xi, tau) + b_n s_n(xi, tau)
// in the phi-based wave polynomials. The reflected-profile kernel uses the
// same numbers through the swap rule (a, b, phi) -> (-b, -a, psi); b(0)
// multiplies psi_0 there and is pinned to h/2 by the kernel's corner value
// K_{1/f}(0,0) = -h/2 (it never enters the phi side, where s_0 == 0).
struct TransmutationCoeffs {
    int order = 0;
    Eigen::VectorXd a;  // size order+1
    Eigen::VectorXd b;  // size order+1
    double residual_a = 0.0;  // max-norm misfit of the even Goursat trace
    double residual_b = 0.0;  // max-norm misfit of the odd Goursat trace
    double xi_max = 0.0;      // fit interval
};

// Diagonal data determining the kernel: G_a = h/2 + (1/4) int_0^xi q,
// G_b = (1/4) int_0^xi q; the kernel's even/odd parts in tau must meet these
// on the diagonal tau = xi.
std::pair<Eigen::ArrayXd, Eigen::ArrayXd> goursat_data(const MediumProfile& profile);

TransmutationCoeffs fit_coefficients(const MediumProfile& profile, const FormalPowersTable& powers,
                                     int order);
TransmutationCoeffs fit_coefficients(const MediumProfile& profile, const FormalPowersTable& powers,
                                     const WaveTraceTable& traces, int order);

struct OrderSweep {
    int selected = 0;
    Eigen::ArrayXd residual;  // residual(n) = max-norm misfit at order n, n = 1..n_max
};

// Sweeps orders 1..n_max reusing one trace table and picks the smallest order
// whose residual is within a small factor of the sweep minimum (the curves
// flatten into a noise floor; anything inside it is a tie broken downward).
OrderSweep select_order(const MediumProfile& profile, const FormalPowersTable& powers, int n_max);

// Per-point reordered coefficient tables: d(k) = sum_{n>=k} coef_n C(n,k)
// fam_{n-k}(xi) with coef = (a for even k, b for odd k) on the phi side and
// (-b even, -a odd) on the psi side. Built once per point, they make each
// operator application O(N).
struct OperatorTables {
    Eigen::Index node = 0;
    double xi = 0.0;
    Eigen::VectorXd d_phi;
    Eigen::VectorXd d_psi;
};

OperatorTables build_operator_tables(const TransmutationCoeffs& coeffs,
                                     const FormalPowersTable& powers, const MediumProfile& profile,
                                     Eigen::Index node);

// T_f and T_{1/f} applied to e^{sign * i omega xi} at the table's point.
cplx apply_tf_exp(const OperatorTables& tables, double omega, int sign);
cplx apply_t1f_exp(const OperatorTables& tables, double omega, int sign);

// Convenience forms matching the fit data; they rebuild the point tables.
cplx apply_tf_exp(const TransmutationCoeffs& coeffs, const FormalPowersTable& powers,
                  const MediumProfile& profile, double omega, int sign, Eigen::Index node);
cplx apply_t1f_exp(const TransmutationCoeffs& coeffs, const FormalPowersTable& powers,
                   const MediumProfile& profile, double omega, int sign, Eigen::Index node);

// Literal double-sum evaluations (reference paths for the reordered forms).
cplx apply_tf_exp_naive(const TransmutationCoeffs& coeffs, const FormalPowersTable& powers,
                        const MediumProfile& profile, double omega, int sign, Eigen::Index node);
cplx apply_t1f_exp_naive(const TransmutationCoeffs& coeffs, const FormalPowersTable& powers,
                         const MediumProfile& profile, double omega, int sign, Eigen::Index node);

// One characteristic branch of general initial data: its pointwise value and
// its polynomial moments int_{z1}^{z2} z^l w(z) dz.
struct GeneralBranchData {
    std::function<cplx(double)> value;
    std::function<cplx(int, double, double)> moment;
};

// T_f (or T_{1/f}) applied to w(t + branch_sign * xi) where w is the branch
// data; branch_sign is +1 or -1. Uses moments over [t - xi, t + xi].
cplx apply_tf_general(const OperatorTables& tables, const GeneralBranchData& data, double t,
                      int branch_sign);
cplx apply_t1f_general(const OperatorTables& tables, const GeneralBranchData& data, double t,
                       int branch_sign);

// Printed closed-form kernels for the power-law layer with exponent -8/5
// (profile f = (1+xi)^{-2} after normalization; alpha=5, beta=1, mu=1).
struct ExactKernelPair {
    std::function<double(double, double)> k_f;
    std::function<double(double, double)> k_one_over_f;
};
ExactKernelPair exact_kernels_l15(double alpha, double beta, double mu);

// Kernel reconstruction from fitted coefficients at (mesh node, tau);
// PowerFamily::phi gives K_f, PowerFamily::psi the swap-rule K_{1/f}.
double fitted_kernel(const TransmutationCoeffs& coeffs, const FormalPowersTable& powers,
                     PowerFamily side, Eigen::Index node, double tau);

void write_coefficient_report(const TransmutationCoeffs& coeffs, std::ostream& out);

}  // namespace layerwave
