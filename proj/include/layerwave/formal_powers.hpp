#pragma once

#include "layerwave/medium.hpp"

namespace layerwave {

inline constexpr int k_max_power_order = 64;

// Two families of recursive integrals of the profile f,
//   X^{(n)}(xi) = n int_0^xi X^{(n-1)} (f^2)^{(-1)^n},
//   Xt^{(n)}(xi) = n int_0^xi Xt^{(n-1)} (f^2)^{(-1)^{n-1}},
// and the formal powers assembled from them,
//   phi_k = f * (k even ? Xt^{(k)} : X^{(k)}),
//   psi_k = (k even ? X^{(k)} : Xt^{(k)}) / f.
// Row n, column = mesh node; everything sampled at xi(x_k).
struct FormalPowersTable {
    int order = 0;
    Eigen::MatrixXd x;
    Eigen::MatrixXd x_tilde;
    Eigen::MatrixXd phi;
    Eigen::MatrixXd psi;
};

FormalPowersTable build_powers(const MediumProfile& profile, int order);

// Diagonal traces of the generalized wave polynomials at tau = xi:
//   c_n(xi, xi) with c_n(xi, tau) = sum_{even k <= n} C(n,k) phi_{n-k}(xi) tau^k,
//   s_n(xi, xi) with s_n(xi, tau) = sum_{odd  k <= n} C(n,k) phi_{n-k}(xi) tau^k,
// plus the psi-based counterparts. Traces at tau = -xi follow by parity:
// c_n(xi,-xi) = c_n(xi,xi), s_n(xi,-xi) = -s_n(xi,xi).
struct WaveTraceTable {
    Eigen::MatrixXd c_phi, s_phi, c_psi, s_psi;  // row n, column mesh node
};

WaveTraceTable wave_traces(const FormalPowersTable& powers, const Eigen::ArrayXd& xi);

enum class PowerFamily { phi, psi };

// Pointwise wave polynomials at (mesh node, arbitrary tau).
double wave_poly_c(const FormalPowersTable& powers, PowerFamily family, int n, Eigen::Index node,
                   double tau);
double wave_poly_s(const FormalPowersTable& powers, PowerFamily family, int n, Eigen::Index node,
                   double tau);

}  // namespace layerwave
