#pragma once

#include "layerwave/bicomplex.hpp"
#include "layerwave/medium.hpp"
#include "layerwave/transmutation.hpp"

#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace layerwave {

// --- modulated carrier sums -------------------------------------------------
//
// Incident fields given as partial trigonometric sums around a carrier,
//   E_0(t) = sum_m alpha_m e^{i(omega0 + m omega) t},  m = -M..M,
// and likewise H_0 with beta_m. The characteristic components of the boundary
// data combine them through the layer's face impedance:
//   gamma_m^{+-} = sqrt(c0) (sqrt(eps0) alpha_m +- i sqrt(mu) beta_m).
struct TrigInitialData {
    double omega0 = 0.0;  // carrier frequency
    double omega = 0.0;   // sideband spacing
    int side_count = 0;   // sidebands on each side of the carrier
    double eps0 = 1.0;
    double mu = 1.0;
    Eigen::ArrayXcd alpha, beta;              // index m + side_count
    Eigen::ArrayXcd gamma_plus, gamma_minus;  // characteristic components

    int term_count() const { return 2 * side_count + 1; }
    double frequency(int m) const { return omega0 + m * omega; }

    cplx w_plus(double t) const;
    cplx w_minus(double t) const;
    Bicomplexd w0(double t) const;
    // Inverts the gamma relations back to the field coefficient arrays.
    std::pair<Eigen::ArrayXcd, Eigen::ArrayXcd> field_coefficients() const;
};

TrigInitialData trig_data_from_fields(const Eigen::ArrayXcd& alpha, const Eigen::ArrayXcd& beta,
                                      double omega0, double omega, double eps0, double mu);
TrigInitialData trig_data_from_fields(const Eigen::ArrayXcd& alpha, const Eigen::ArrayXcd& beta,
                                      double omega0, double omega, const MediumProfile& profile);

// --- closed-form Gaussian moments -------------------------------------------
//
// int_{z1}^{z2} z^l e^{-a z^2} dz for a > 0, via erf/erfc (picked sign-aware
// so tail queries do not cancel) and the integration-by-parts recurrence.
double gaussian_moment(double a, int l, double z1, double z2);

// --- keyed carrier symbol streams -------------------------------------------
//
// s(t) = sum_n [c_n cos(omega0 t) + s_n sin(omega0 t)] on [n d, (n+1) d),
// zero outside the stream's support [0, count*d); d is the symbol duration.
struct SymbolStream {
    Eigen::ArrayXd c, s;
    double omega0 = 0.0;
    double symbol_duration = 1.0;

    Eigen::Index count() const { return c.size(); }
    double support_end() const { return symbol_duration * static_cast<double>(count()); }
};

double psk_value(const SymbolStream& stream, double t);
// int_{z1}^{z2} z^l s(z) dz; out-of-support stretches contribute zero.
cplx psk_moment(const SymbolStream& stream, int l, double z1, double z2);
std::pair<Eigen::ArrayXd, Eigen::ArrayXd> load_symbol_stream(const std::string& path);

// --- sampled signals ---------------------------------------------------------
//
// Arbitrary boundary data known only on a strictly increasing sample grid.
// Values interpolate a not-a-knot cubic spline; the moment of order l
// integrates the spline fitted to the premultiplied samples z^l w(z).
// Queries outside the sampled range throw std::domain_error.
class SampledSignal {
  public:
    SampledSignal() = default;
    SampledSignal(const Eigen::ArrayXd& t, const Eigen::ArrayXcd& w, int l_max);

    cplx value(double t) const { return value_(t); }
    cplx moment(int l, double z1, double z2) const;

    int moment_order() const { return static_cast<int>(premultiplied_.size()) - 1; }
    double t_min() const { return value_.x_min(); }
    double t_max() const { return value_.x_max(); }

  private:
    CubicSpline<cplx> value_;
    std::vector<CubicSpline<cplx>> premultiplied_;  // index l
};

// Rows "t re [im]" (two or three columns, '#' comments, commas allowed).
SampledSignal load_sampled_signal(const std::string& path, int l_max);

// --- branch providers for the general solver ---------------------------------

GeneralBranchData zero_branch();
GeneralBranchData gaussian_branch(double a, cplx amplitude = cplx(1.0, 0.0), double center = 0.0);
// sign +1 adapts the gamma_plus component, -1 the gamma_minus component.
GeneralBranchData trig_branch(const TrigInitialData& data, int sign);
GeneralBranchData psk_branch(SymbolStream stream);
GeneralBranchData sampled_branch(SampledSignal signal);

// Boundary data for the general solver: both characteristic components plus
// the interval on which moment queries are answerable (infinite for the
// closed-form providers, the sample range for sampled ones).
struct GeneralInitialData {
    GeneralBranchData plus, minus;
    double z_min = -std::numeric_limits<double>::infinity();
    double z_max = std::numeric_limits<double>::infinity();
};

}  // namespace layerwave
