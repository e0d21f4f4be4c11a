#pragma once

#include "layerwave/bicomplex.hpp"
#include "layerwave/formal_powers.hpp"
#include "layerwave/signals.hpp"

#include <utility>

namespace layerwave {

// Closed-form reference solutions for three exactly solvable layer profiles.
// Everything here is evaluated from the printed formulas alone -- no formal
// powers, no fitted kernels, no solver -- so agreement with the production
// pipeline is meaningful evidence rather than a tautology.

// eps(x) = (alpha x + beta)^{-2}: the transmitted wave is a linear-in-log
// envelope on a single carrier. `slope` weights the log term, `offset` is the
// face amplitude of the electric envelope.
struct Example1Params {
    double alpha = 2.0;
    double beta = 1.0;
    double mu = 1.0;
    double slope = 1.0;
    double offset = 3.0;

    // Constant coefficient of the first-order field equation in travel time.
    double gamma() const { return alpha / (4.0 * std::sqrt(mu)); }
    // Carrier frequency of the closed-form solution.
    double carrier() const { return 2.0 * gamma(); }
};

// (E, H) at one point; throws std::domain_error when alpha x + beta <= 0.
std::pair<cplx, cplx> example1_fields(const Example1Params& p, double x, double t);

// Same medium, standing combination of two power-law envelopes at carrier
// `omega`. The complex root D = i sqrt(omega^2 - C^2) with C = alpha/(2 sqrt(mu))
// controls both envelopes; D = C makes the printed form singular.
struct Example2Params {
    double alpha = 2.0;
    double beta = 1.0;
    double mu = 1.0;
    cplx amplitude{1.0, 0.0};
    cplx omega{2.0, 0.0};

    double rate() const { return alpha / (2.0 * std::sqrt(mu)); }
    cplx root() const {
        return cplx(0.0, 1.0) * std::sqrt(omega * omega - cplx(rate() * rate(), 0.0));
    }
};

std::pair<cplx, cplx> example2_fields(const Example2Params& p, double x, double t);

// eps(x) = (alpha x + beta)^{2 ell - 2}. For the printed configuration
// (ell, alpha, beta, mu) = (1/5, 5, 1, 1) both transmutation kernels are
// known in closed form and the layer problem is solvable by two quadratures.
struct Example3Params {
    double ell = 0.2;
    double alpha = 5.0;
    double beta = 1.0;
    double mu = 1.0;

    double xi_of(double x) const;
    double x_of(double xi) const;
    double eps_of(double x) const;
};

// The closed-form kernels of the printed configuration: PowerFamily::phi
// selects the K_f side, PowerFamily::psi the K_{1/f} side. Throws
// std::invalid_argument for any other parameter set.
double example3_kernel(const Example3Params& p, PowerFamily side, double xi, double tau);

// Reference fields for the pulse W0+ = 0, W0-(t) = amplitude e^{-decay t^2}:
// the kernels are polynomial in tau, so both operator integrals reduce to
// Gaussian strip moments evaluated with erf in extended precision.
std::pair<cplx, cplx> example3_reference(const Example3Params& p, double decay, cplx amplitude,
                                         double x, double t);

// Fallback for arbitrary boundary data: integrates kernel times data values
// with composite Simpson on `panels` panels per branch. Needs values of the
// data on [t - xi, t + xi].
std::pair<cplx, cplx> example3_reference(const Example3Params& p, const GeneralInitialData& data,
                                         double x, double t, Eigen::Index panels = 4096);

}  // namespace layerwave
