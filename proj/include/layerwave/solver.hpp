#pragma once

#include "layerwave/bicomplex.hpp"
#include "layerwave/medium.hpp"
#include "layerwave/signals.hpp"
#include "layerwave/transmutation.hpp"

#include <functional>
#include <utility>

namespace layerwave {

// Rectangular output grid. The x rows are an equal-stride subset of the
// profile mesh (never interpolated in xi), so x_count - 1 must divide the
// mesh segment count. The t columns are uniform on [t_min, t_max].
struct GridSpec {
    Eigen::Index x_count = 2;
    double t_min = 0.0;
    double t_max = 1.0;
    Eigen::Index t_count = 2;
};

// Solution W = u + jv sampled on the grid (rows follow x, columns follow t)
// together with the recovered transverse fields.
struct FieldGrid {
    Eigen::ArrayXd x, xi, t;
    Eigen::ArrayXi node;    // profile mesh node behind each row
    Eigen::MatrixXcd u, v;  // bicomplex components of W
    Eigen::MatrixXcd e, h;  // transverse electric / magnetic field
    int order = 0;          // kernel order used (0 on the single-wave path)
    bool single_wave = false;

    Bicomplexd w(Eigen::Index ix, Eigen::Index it) const { return {u(ix, it), v(ix, it)}; }
};

// Half-sum / half-difference reassembly of a wave from its characteristic
// parts: W(xi, t) = [w+(t+xi) + w-(t-xi)]/2 + j [w+(t+xi) - w-(t-xi)]/2.
Bicomplexd dalembert(const std::function<cplx(double)>& w_plus,
                     const std::function<cplx(double)>& w_minus, double xi, double t);

// Propagates modulated-carrier boundary data through the layer. Each row
// builds its operator tables once; each sideband costs four operator
// applications per row, after which every t column is a plain carrier sum.
FieldGrid solve_trig(const TrigInitialData& data, const TransmutationCoeffs& coeffs,
                     const FormalPowersTable& powers, const MediumProfile& profile,
                     const GridSpec& spec);

// Propagates arbitrary boundary data given through branch providers. Every
// grid point queries moments of the data over [t - xi, t + xi]; the whole
// grid is checked against [z_min, z_max] up front and the first uncovered
// point is reported before any work starts.
FieldGrid solve_general(const GeneralInitialData& data, const TransmutationCoeffs& coeffs,
                        const FormalPowersTable& powers, const MediumProfile& profile,
                        const GridSpec& spec);

// Same assembly with both transmutation operators replaced by the identity:
// exact for a homogeneous layer, a leading-order reference elsewhere.
FieldGrid single_wave(const TrigInitialData& data, const MediumProfile& profile,
                      const GridSpec& spec);
FieldGrid single_wave(const GeneralInitialData& data, const MediumProfile& profile,
                      const GridSpec& spec);

// Pointwise change of variables W = sqrt(c)(sqrt(eps) E + ij sqrt(mu) H)
// and its inverse E = Re_j(W)/sqrt(c eps), H = -i Im_j(W)/sqrt(c mu).
Bicomplexd w_from_fields(cplx e, cplx h, double c, double eps, double mu);
std::pair<cplx, cplx> fields_from_w(const Bicomplexd& w, double c, double eps, double mu);

// Fills grid.e / grid.h from grid.u / grid.v using the medium at each row.
void recover_fields(FieldGrid& grid, const MediumProfile& profile);

// Max-norm finite-difference defect of the first-order systems the grid
// should satisfy, over interior grid points (both directions need at least
// three). vekua_residual differences W in (xi, t), where the xi spacing is
// nonuniform; maxwell_residual differences E and H in (x, t), checking
// eps dE/dt = i dH/dx and i dE/dx = -mu dH/dt.
double vekua_residual(const FieldGrid& grid, const MediumProfile& profile);
double maxwell_residual(const FieldGrid& grid, const MediumProfile& profile);

}  // namespace layerwave
