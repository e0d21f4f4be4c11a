#pragma once

#include "layerwave/quadrature.hpp"

#include <cmath>
#include <functional>
#include <string>

namespace layerwave {

// Permittivity profile eps(x) with optional analytic derivatives. When the
// derivative callables are empty the profile builder falls back to finite
// differences on the mesh.
struct PermittivityModel {
    std::function<double(double)> eps;
    std::function<double(double)> eps1;
    std::function<double(double)> eps2;
};

// eps(x) = (alpha x + beta)^p with exact derivatives.
PermittivityModel power_law_permittivity(double alpha, double beta, double p);
PermittivityModel constant_permittivity(double eps0);

// Sampled profile on a uniform x grid; derivative columns are optional.
struct MediumTable {
    Eigen::ArrayXd x, eps, eps1, eps2;
    bool has_derivatives() const { return eps1.size() > 0; }
};

// Text format: 2 or 4 columns (x, eps[, eps', eps'']), whitespace or comma
// separated, '#' starts a comment. The x column must be uniformly spaced.
MediumTable load_medium_table(const std::string& path);

// Everything downstream needs about the layer, tabulated on the x mesh:
// the travel-time coordinate xi(x) = sqrt(mu) int_0^x sqrt(eps), the
// normalized quarter-power profile f = (eps/eps(0))^{1/4} as a function of
// xi, its potential q = f''(xi)/f, and the logarithmic slope f'(xi)/f.
struct MediumProfile {
    UniformMesh x_mesh;
    double mu = 1.0;
    Eigen::ArrayXd eps;
    Eigen::ArrayXd xi;
    Eigen::ArrayXd f;
    Eigen::ArrayXd q;
    Eigen::ArrayXd f_log_slope;
    double h = 0.0;  // f'(0)/f(0) in the travel-time variable
    bool analytic_derivatives = false;
    MonotoneCubic x_of_xi;

    double eps0() const { return eps(0); }
    double c0() const { return 1.0 / std::sqrt(eps(0) * mu); }
    double xi_max() const { return xi(xi.size() - 1); }
    double speed_at(Eigen::Index k) const { return 1.0 / std::sqrt(eps(k) * mu); }
    double x_at_xi(double xiq) const { return x_of_xi(xiq); }
};

MediumProfile build_profile(const PermittivityModel& model, double mu, double x_max,
                            Eigen::Index n_points);
MediumProfile build_profile(const MediumTable& table, double mu);

// q at the mesh nodes by the chain rule,
//   q = [eps''/(4 eps) - 5 eps'^2 / (16 eps^2)] / (mu eps),
// where primes are x derivatives.
Eigen::ArrayXd potential_from_derivatives(const Eigen::ArrayXd& eps, const Eigen::ArrayXd& eps1,
                                          const Eigen::ArrayXd& eps2, double mu);

// Mesh finite differences for sampled eps: fourth order in the interior,
// second order at the two near-boundary nodes, one-sided fourth/fourth order
// at the ends.
void derivative_tables_fd(const Eigen::ArrayXd& eps, double step, Eigen::ArrayXd& eps1,
                          Eigen::ArrayXd& eps2);

// Integral from xi = 0 to xi(x_k) for integrands sampled at the mesh nodes,
// computed in the uniform x variable: int g dxi = int g sqrt(mu eps) dx.
Eigen::ArrayXd integrate_in_xi(const Eigen::ArrayXd& g, const MediumProfile& profile);
Eigen::ArrayXcd integrate_in_xi(const Eigen::ArrayXcd& g, const MediumProfile& profile);

}  // namespace layerwave
