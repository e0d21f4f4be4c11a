#include "layerwave/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace layerwave {

namespace {

Eigen::Index subset_stride(const MediumProfile& profile, const GridSpec& spec) {
    if (spec.x_count < 2) throw std::invalid_argument("grid: x_count must be at least 2");
    if (spec.t_count < 2) throw std::invalid_argument("grid: t_count must be at least 2");
    if (!(spec.t_max > spec.t_min))
        throw std::invalid_argument("grid: t_max must exceed t_min");
    const Eigen::Index segments = profile.x_mesh.count - 1;
    if (segments % (spec.x_count - 1) != 0) {
        std::ostringstream msg;
        msg << "grid: x_count " << spec.x_count << " does not subdivide the "
            << profile.x_mesh.count << "-point profile mesh (" << segments << " segments)";
        throw std::invalid_argument(msg.str());
    }
    return segments / (spec.x_count - 1);
}

FieldGrid make_grid(const MediumProfile& profile, const GridSpec& spec) {
    const Eigen::Index stride = subset_stride(profile, spec);
    FieldGrid grid;
    grid.x.resize(spec.x_count);
    grid.xi.resize(spec.x_count);
    grid.node.resize(spec.x_count);
    for (Eigen::Index i = 0; i < spec.x_count; ++i) {
        const Eigen::Index node = i * stride;
        grid.node(i) = static_cast<int>(node);
        grid.x(i) = profile.x_mesh.point(node);
        grid.xi(i) = profile.xi(node);
    }
    grid.t = Eigen::ArrayXd::LinSpaced(spec.t_count, spec.t_min, spec.t_max);
    grid.u.setZero(spec.x_count, spec.t_count);
    grid.v.setZero(spec.x_count, spec.t_count);
    grid.e.setZero(spec.x_count, spec.t_count);
    grid.h.setZero(spec.x_count, spec.t_count);
    return grid;
}

void check_fit_covers(const TransmutationCoeffs& coeffs, const FieldGrid& grid) {
    const double last = grid.xi(grid.xi.size() - 1);
    const double slack = 1e-12 * std::max(1.0, std::abs(coeffs.xi_max));
    if (last > coeffs.xi_max + slack) {
        std::ostringstream msg;
        msg << "grid: xi reaches " << last << " but the kernel fit covers only [0, "
            << coeffs.xi_max << "]";
        throw std::invalid_argument(msg.str());
    }
}

// The general path integrates the boundary data over [t - xi, t + xi] at
// every grid point; refuse up front anything the data cannot answer.
void check_domain_of_dependence(const GeneralInitialData& data, const FieldGrid& grid) {
    for (Eigen::Index ix = 0; ix < grid.x.size(); ++ix) {
        for (Eigen::Index it = 0; it < grid.t.size(); ++it) {
            const double lo = grid.t(it) - grid.xi(ix);
            const double hi = grid.t(it) + grid.xi(ix);
            if (lo < data.z_min || hi > data.z_max) {
                std::ostringstream msg;
                msg << "grid point (x=" << grid.x(ix) << ", t=" << grid.t(it)
                    << ") depends on boundary data over [" << lo << ", " << hi
                    << "], outside the covered range [" << data.z_min << ", " << data.z_max
                    << "]";
                throw std::invalid_argument(msg.str());
            }
        }
    }
}

// Nonuniform three-point centered first derivative at the middle node.
template <typename Scalar>
Scalar centered_nonuniform(Scalar lo, Scalar mid, Scalar hi, double step_lo, double step_hi) {
    const double denom = step_lo * step_hi * (step_lo + step_hi);
    return (step_lo * step_lo * hi - step_hi * step_hi * lo +
            (step_hi * step_hi - step_lo * step_lo) * mid) /
           denom;
}

}  // namespace

Bicomplexd dalembert(const std::function<cplx(double)>& w_plus,
                     const std::function<cplx(double)>& w_minus, double xi, double t) {
    return from_characteristic_parts(w_plus(t + xi), w_minus(t - xi));
}

FieldGrid solve_trig(const TrigInitialData& data, const TransmutationCoeffs& coeffs,
                     const FormalPowersTable& powers, const MediumProfile& profile,
                     const GridSpec& spec) {
    FieldGrid grid = make_grid(profile, spec);
    check_fit_covers(coeffs, grid);
    grid.order = coeffs.order;

    const int terms = data.term_count();
    Eigen::ArrayXcd amp_u(terms), amp_v(terms);
    for (Eigen::Index ix = 0; ix < spec.x_count; ++ix) {
        const OperatorTables tables = build_operator_tables(coeffs, powers, profile, grid.node(ix));
        for (int m = -data.side_count; m <= data.side_count; ++m) {
            const int idx = m + data.side_count;
            const double freq = data.frequency(m);
            const cplx gp = data.gamma_plus(idx);
            const cplx gm = data.gamma_minus(idx);
            amp_u(idx) = 0.5 * (gp * apply_tf_exp(tables, freq, +1) +
                                gm * apply_tf_exp(tables, freq, -1));
            amp_v(idx) = 0.5 * (gp * apply_t1f_exp(tables, freq, +1) -
                                gm * apply_t1f_exp(tables, freq, -1));
        }
        for (Eigen::Index it = 0; it < spec.t_count; ++it) {
            cplx sum_u(0.0, 0.0), sum_v(0.0, 0.0);
            for (int m = -data.side_count; m <= data.side_count; ++m) {
                const cplx carrier = std::polar(1.0, data.frequency(m) * grid.t(it));
                const int idx = m + data.side_count;
                sum_u += amp_u(idx) * carrier;
                sum_v += amp_v(idx) * carrier;
            }
            grid.u(ix, it) = sum_u;
            grid.v(ix, it) = sum_v;
        }
    }
    recover_fields(grid, profile);
    return grid;
}

FieldGrid solve_general(const GeneralInitialData& data, const TransmutationCoeffs& coeffs,
                        const FormalPowersTable& powers, const MediumProfile& profile,
                        const GridSpec& spec) {
    FieldGrid grid = make_grid(profile, spec);
    check_fit_covers(coeffs, grid);
    check_domain_of_dependence(data, grid);
    grid.order = coeffs.order;

    for (Eigen::Index ix = 0; ix < spec.x_count; ++ix) {
        const OperatorTables tables = build_operator_tables(coeffs, powers, profile, grid.node(ix));
        for (Eigen::Index it = 0; it < spec.t_count; ++it) {
            const double t = grid.t(it);
            const cplx tf_p = apply_tf_general(tables, data.plus, t, +1);
            const cplx tf_m = apply_tf_general(tables, data.minus, t, -1);
            const cplx t1f_p = apply_t1f_general(tables, data.plus, t, +1);
            const cplx t1f_m = apply_t1f_general(tables, data.minus, t, -1);
            grid.u(ix, it) = 0.5 * (tf_p + tf_m);
            grid.v(ix, it) = 0.5 * (t1f_p - t1f_m);
        }
    }
    recover_fields(grid, profile);
    return grid;
}

FieldGrid single_wave(const TrigInitialData& data, const MediumProfile& profile,
                      const GridSpec& spec) {
    FieldGrid grid = make_grid(profile, spec);
    grid.single_wave = true;
    for (Eigen::Index ix = 0; ix < spec.x_count; ++ix) {
        const double xi = grid.xi(ix);
        for (Eigen::Index it = 0; it < spec.t_count; ++it) {
            const Bicomplexd w =
                from_characteristic_parts(data.w_plus(grid.t(it) + xi), data.w_minus(grid.t(it) - xi));
            grid.u(ix, it) = w.u;
            grid.v(ix, it) = w.v;
        }
    }
    recover_fields(grid, profile);
    return grid;
}

FieldGrid single_wave(const GeneralInitialData& data, const MediumProfile& profile,
                      const GridSpec& spec) {
    FieldGrid grid = make_grid(profile, spec);
    check_domain_of_dependence(data, grid);
    grid.single_wave = true;
    for (Eigen::Index ix = 0; ix < spec.x_count; ++ix) {
        const double xi = grid.xi(ix);
        for (Eigen::Index it = 0; it < spec.t_count; ++it) {
            const Bicomplexd w = from_characteristic_parts(data.plus.value(grid.t(it) + xi),
                                                           data.minus.value(grid.t(it) - xi));
            grid.u(ix, it) = w.u;
            grid.v(ix, it) = w.v;
        }
    }
    recover_fields(grid, profile);
    return grid;
}

Bicomplexd w_from_fields(cplx e, cplx h, double c, double eps, double mu) {
    const double root_c = std::sqrt(c);
    return {root_c * std::sqrt(eps) * e, cplx(0.0, 1.0) * root_c * std::sqrt(mu) * h};
}

std::pair<cplx, cplx> fields_from_w(const Bicomplexd& w, double c, double eps, double mu) {
    return {w.u / std::sqrt(c * eps), cplx(0.0, -1.0) * w.v / std::sqrt(c * mu)};
}

void recover_fields(FieldGrid& grid, const MediumProfile& profile) {
    for (Eigen::Index ix = 0; ix < grid.x.size(); ++ix) {
        const Eigen::Index node = grid.node(ix);
        const double eps = profile.eps(node);
        const double c = profile.speed_at(node);
        const double scale_e = 1.0 / std::sqrt(c * eps);
        const cplx scale_h = cplx(0.0, -1.0) / std::sqrt(c * profile.mu);
        grid.e.row(ix) = scale_e * grid.u.row(ix);
        grid.h.row(ix) = scale_h * grid.v.row(ix);
    }
}

double vekua_residual(const FieldGrid& grid, const MediumProfile& profile) {
    const Eigen::Index nx = grid.x.size();
    const Eigen::Index nt = grid.t.size();
    if (nx < 3 || nt < 3)
        throw std::invalid_argument("vekua_residual: need at least 3 grid points per direction");
    const double dt = grid.t(1) - grid.t(0);
    double worst = 0.0;
    for (Eigen::Index ix = 1; ix + 1 < nx; ++ix) {
        const double step_lo = grid.xi(ix) - grid.xi(ix - 1);
        const double step_hi = grid.xi(ix + 1) - grid.xi(ix);
        const double slope = 0.5 * profile.f_log_slope(grid.node(ix));
        for (Eigen::Index it = 1; it + 1 < nt; ++it) {
            const cplx u_xi = centered_nonuniform(grid.u(ix - 1, it), grid.u(ix, it),
                                                  grid.u(ix + 1, it), step_lo, step_hi);
            const cplx v_xi = centered_nonuniform(grid.v(ix - 1, it), grid.v(ix, it),
                                                  grid.v(ix + 1, it), step_lo, step_hi);
            const cplx u_t = (grid.u(ix, it + 1) - grid.u(ix, it - 1)) / (2.0 * dt);
            const cplx v_t = (grid.v(ix, it + 1) - grid.v(ix, it - 1)) / (2.0 * dt);
            const cplx defect_u = 0.5 * (u_xi - v_t) - slope * grid.u(ix, it);
            const cplx defect_v = 0.5 * (v_xi - u_t) + slope * grid.v(ix, it);
            worst = std::max(worst, std::max(std::abs(defect_u), std::abs(defect_v)));
        }
    }
    return worst;
}

double maxwell_residual(const FieldGrid& grid, const MediumProfile& profile) {
    const Eigen::Index nx = grid.x.size();
    const Eigen::Index nt = grid.t.size();
    if (nx < 3 || nt < 3)
        throw std::invalid_argument("maxwell_residual: need at least 3 grid points per direction");
    const double dx = grid.x(1) - grid.x(0);
    const double dt = grid.t(1) - grid.t(0);
    const cplx im(0.0, 1.0);
    double worst = 0.0;
    for (Eigen::Index ix = 1; ix + 1 < nx; ++ix) {
        const double eps = profile.eps(grid.node(ix));
        for (Eigen::Index it = 1; it + 1 < nt; ++it) {
            const cplx e_x = (grid.e(ix + 1, it) - grid.e(ix - 1, it)) / (2.0 * dx);
            const cplx h_x = (grid.h(ix + 1, it) - grid.h(ix - 1, it)) / (2.0 * dx);
            const cplx e_t = (grid.e(ix, it + 1) - grid.e(ix, it - 1)) / (2.0 * dt);
            const cplx h_t = (grid.h(ix, it + 1) - grid.h(ix, it - 1)) / (2.0 * dt);
            const cplx defect_e = eps * e_t - im * h_x;
            const cplx defect_h = im * e_x + profile.mu * h_t;
            worst = std::max(worst, std::max(std::abs(defect_e), std::abs(defect_h)));
        }
    }
    return worst;
}

}  // namespace layerwave
