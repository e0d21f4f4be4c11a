#include "layerwave/medium.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace layerwave {

PermittivityModel power_law_permittivity(double alpha, double beta, double p) {
    auto base = [alpha, beta](double x) { return alpha * x + beta; };
    return PermittivityModel{
        [base, p](double x) { return std::pow(base(x), p); },
        [base, alpha, p](double x) { return p * alpha * std::pow(base(x), p - 1.0); },
        [base, alpha, p](double x) { return p * (p - 1.0) * alpha * alpha * std::pow(base(x), p - 2.0); },
    };
}

PermittivityModel constant_permittivity(double eps0) {
    return PermittivityModel{
        [eps0](double) { return eps0; },
        [](double) { return 0.0; },
        [](double) { return 0.0; },
    };
}

MediumTable load_medium_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_medium_table: cannot open '" + path + "'");

    std::vector<std::array<double, 4>> rows;
    int n_cols = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        std::array<double, 4> row{};
        int got = 0;
        double v;
        while (got < 4 && (ss >> v)) row[got++] = v;
        if (got == 0) continue;  // blank or comment line
        double extra;
        if (ss >> extra) {
            throw std::runtime_error("load_medium_table: line " + std::to_string(line_no) +
                                     ": more than 4 columns");
        }
        if (got != 2 && got != 4) {
            throw std::runtime_error("load_medium_table: line " + std::to_string(line_no) +
                                     ": expected 2 or 4 columns, got " + std::to_string(got));
        }
        if (n_cols == 0) n_cols = got;
        if (got != n_cols) {
            throw std::runtime_error("load_medium_table: line " + std::to_string(line_no) +
                                     ": inconsistent column count");
        }
        rows.push_back(row);
    }
    if (rows.size() < 2) throw std::runtime_error("load_medium_table: need at least 2 rows");

    MediumTable t;
    const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
    t.x.resize(n);
    t.eps.resize(n);
    if (n_cols == 4) {
        t.eps1.resize(n);
        t.eps2.resize(n);
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        t.x(i) = rows[i][0];
        t.eps(i) = rows[i][1];
        if (n_cols == 4) {
            t.eps1(i) = rows[i][2];
            t.eps2(i) = rows[i][3];
        }
    }
    const double step = t.x(1) - t.x(0);
    if (!(step > 0.0)) throw std::runtime_error("load_medium_table: x column must be increasing");
    for (Eigen::Index i = 1; i < n; ++i) {
        if (std::abs((t.x(i) - t.x(i - 1)) - step) > 1e-9 * std::max(1.0, std::abs(step))) {
            throw std::runtime_error("load_medium_table: x column must be uniformly spaced (row " +
                                     std::to_string(i + 1) + ")");
        }
    }
    return t;
}

void derivative_tables_fd(const Eigen::ArrayXd& eps, double step, Eigen::ArrayXd& eps1,
                          Eigen::ArrayXd& eps2) {
    const Eigen::Index n = eps.size();
    if (n < 7) throw std::invalid_argument("derivative_tables_fd: need at least 7 samples");
    eps1.resize(n);
    eps2.resize(n);
    const double d = step, d2 = step * step;
    auto e = [&](Eigen::Index k) { return eps(k); };

    // Interior: standard fourth-order central stencils.
    for (Eigen::Index k = 2; k + 2 < n; ++k) {
        eps1(k) = (e(k - 2) - 8 * e(k - 1) + 8 * e(k + 1) - e(k + 2)) / (12 * d);
        eps2(k) = (-e(k - 2) + 16 * e(k - 1) - 30 * e(k) + 16 * e(k + 1) - e(k + 2)) / (12 * d2);
    }
    // One node in from each boundary: fourth-order offset stencils.
    eps1(1) = (-3 * e(0) - 10 * e(1) + 18 * e(2) - 6 * e(3) + e(4)) / (12 * d);
    eps2(1) = (10 * e(0) - 15 * e(1) - 4 * e(2) + 14 * e(3) - 6 * e(4) + e(5)) / (12 * d2);
    eps1(n - 2) = (3 * e(n - 1) + 10 * e(n - 2) - 18 * e(n - 3) + 6 * e(n - 4) - e(n - 5)) / (12 * d);
    eps2(n - 2) =
        (10 * e(n - 1) - 15 * e(n - 2) - 4 * e(n - 3) + 14 * e(n - 4) - 6 * e(n - 5) + e(n - 6)) / (12 * d2);
    // Boundary nodes: fifth-order one-sided stencils.
    eps1(0) = (-137.0 / 60 * e(0) + 5 * e(1) - 5 * e(2) + 10.0 / 3 * e(3) - 5.0 / 4 * e(4) +
               1.0 / 5 * e(5)) / d;
    eps2(0) = (203.0 / 45 * e(0) - 87.0 / 5 * e(1) + 117.0 / 4 * e(2) - 254.0 / 9 * e(3) +
               33.0 / 2 * e(4) - 27.0 / 5 * e(5) + 137.0 / 180 * e(6)) / d2;
    eps1(n - 1) = (137.0 / 60 * e(n - 1) - 5 * e(n - 2) + 5 * e(n - 3) - 10.0 / 3 * e(n - 4) +
                   5.0 / 4 * e(n - 5) - 1.0 / 5 * e(n - 6)) / d;
    eps2(n - 1) = (203.0 / 45 * e(n - 1) - 87.0 / 5 * e(n - 2) + 117.0 / 4 * e(n - 3) -
                   254.0 / 9 * e(n - 4) + 33.0 / 2 * e(n - 5) - 27.0 / 5 * e(n - 6) +
                   137.0 / 180 * e(n - 7)) / d2;
}

Eigen::ArrayXd potential_from_derivatives(const Eigen::ArrayXd& eps, const Eigen::ArrayXd& eps1,
                                          const Eigen::ArrayXd& eps2, double mu) {
    if (eps1.size() != eps.size() || eps2.size() != eps.size()) {
        throw std::invalid_argument("potential_from_derivatives: array sizes differ");
    }
    return (eps2 / (4.0 * eps) - 5.0 * eps1.square() / (16.0 * eps.square())) / (mu * eps);
}

namespace {

MediumProfile build_from_arrays(const UniformMesh& mesh, double mu, const Eigen::ArrayXd& eps,
                                Eigen::ArrayXd eps1, Eigen::ArrayXd eps2, bool analytic) {
    for (Eigen::Index k = 0; k < eps.size(); ++k) {
        if (!(eps(k) > 0.0) || !std::isfinite(eps(k))) {
            throw std::invalid_argument("medium: permittivity must be positive and finite; bad value " +
                                        std::to_string(eps(k)) + " at x = " + std::to_string(mesh.point(k)));
        }
    }
    if (!(mu > 0.0)) throw std::invalid_argument("medium: permeability must be positive");

    MediumProfile p;
    p.x_mesh = mesh;
    p.mu = mu;
    p.eps = eps;
    p.analytic_derivatives = analytic;
    if (!analytic) derivative_tables_fd(eps, mesh.step, eps1, eps2);

    p.xi = nc6_cumulative(Eigen::ArrayXd((mu * eps).sqrt()), mesh.step);
    p.f = (eps / eps(0)).pow(0.25);
    p.q = potential_from_derivatives(eps, eps1, eps2, mu);
    p.f_log_slope = eps1 / (4.0 * eps * (mu * eps).sqrt());
    p.h = p.f_log_slope(0);
    p.x_of_xi = MonotoneCubic(p.xi, mesh.points());
    return p;
}

}  // namespace

MediumProfile build_profile(const PermittivityModel& model, double mu, double x_max,
                            Eigen::Index n_points) {
    if (!model.eps) throw std::invalid_argument("build_profile: model has no permittivity callable");
    const UniformMesh mesh = make_conforming_mesh(0.0, x_max, n_points);
    const Eigen::ArrayXd x = mesh.points();
    Eigen::ArrayXd eps(n_points), eps1, eps2;
    for (Eigen::Index k = 0; k < n_points; ++k) eps(k) = model.eps(x(k));
    const bool analytic = static_cast<bool>(model.eps1) && static_cast<bool>(model.eps2);
    if (analytic) {
        eps1.resize(n_points);
        eps2.resize(n_points);
        for (Eigen::Index k = 0; k < n_points; ++k) {
            eps1(k) = model.eps1(x(k));
            eps2(k) = model.eps2(x(k));
        }
    }
    return build_from_arrays(mesh, mu, eps, std::move(eps1), std::move(eps2), analytic);
}

MediumProfile build_profile(const MediumTable& table, double mu) {
    const Eigen::Index n = table.x.size();
    if (n < 6 || (n - 1) % 5 != 0) {
        throw std::invalid_argument("build_profile: table needs >= 6 rows with count == 1 (mod 5), got " +
                                    std::to_string(n));
    }
    const UniformMesh mesh{table.x(0), table.x(1) - table.x(0), n};
    if (std::abs(mesh.start) > 1e-12) {
        throw std::invalid_argument("build_profile: table must start at x = 0");
    }
    return build_from_arrays(mesh, mu, table.eps, table.eps1, table.eps2, table.has_derivatives());
}

Eigen::ArrayXd integrate_in_xi(const Eigen::ArrayXd& g, const MediumProfile& profile) {
    if (g.size() != profile.eps.size()) throw std::invalid_argument("integrate_in_xi: size mismatch");
    return nc6_cumulative(Eigen::ArrayXd(g * (profile.mu * profile.eps).sqrt()), profile.x_mesh.step);
}

Eigen::ArrayXcd integrate_in_xi(const Eigen::ArrayXcd& g, const MediumProfile& profile) {
    if (g.size() != profile.eps.size()) throw std::invalid_argument("integrate_in_xi: size mismatch");
    const Eigen::ArrayXd w = (profile.mu * profile.eps).sqrt();
    return nc6_cumulative(Eigen::ArrayXcd(g * w.cast<cplx>()), profile.x_mesh.step);
}

}  // namespace layerwave
