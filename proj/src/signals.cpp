#include "layerwave/signals.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace layerwave {

namespace {

cplx trig_sum(const Eigen::ArrayXcd& coeff, double omega0, double omega, int side_count, double t) {
    cplx acc = 0.0;
    for (int m = -side_count; m <= side_count; ++m) {
        acc += coeff(m + side_count) * std::polar(1.0, (omega0 + m * omega) * t);
    }
    return acc;
}

}  // namespace

cplx TrigInitialData::w_plus(double t) const {
    return trig_sum(gamma_plus, omega0, omega, side_count, t);
}

cplx TrigInitialData::w_minus(double t) const {
    return trig_sum(gamma_minus, omega0, omega, side_count, t);
}

Bicomplexd TrigInitialData::w0(double t) const {
    return from_characteristic_parts(w_plus(t), w_minus(t));
}

std::pair<Eigen::ArrayXcd, Eigen::ArrayXcd> TrigInitialData::field_coefficients() const {
    const double c0 = 1.0 / std::sqrt(mu * eps0);
    const double to_e = 2.0 * std::sqrt(c0 * eps0);
    const cplx to_h = cplx(0.0, 2.0) * std::sqrt(c0 * mu);
    return {(gamma_plus + gamma_minus) / to_e, (gamma_plus - gamma_minus) / to_h};
}

TrigInitialData trig_data_from_fields(const Eigen::ArrayXcd& alpha, const Eigen::ArrayXcd& beta,
                                      double omega0, double omega, double eps0, double mu) {
    if (alpha.size() != beta.size() || alpha.size() % 2 == 0 || alpha.size() == 0) {
        throw std::invalid_argument(
            "trig_data_from_fields: coefficient arrays must share an odd size");
    }
    if (eps0 <= 0.0 || mu <= 0.0) {
        throw std::invalid_argument("trig_data_from_fields: eps0 and mu must be positive");
    }
    TrigInitialData d;
    d.omega0 = omega0;
    d.omega = omega;
    d.side_count = static_cast<int>(alpha.size() / 2);
    d.eps0 = eps0;
    d.mu = mu;
    d.alpha = alpha;
    d.beta = beta;
    const double c0 = 1.0 / std::sqrt(mu * eps0);
    const double se = std::sqrt(c0 * eps0);
    const cplx sh = cplx(0.0, 1.0) * std::sqrt(c0 * mu);
    d.gamma_plus = se * alpha + sh * beta;
    d.gamma_minus = se * alpha - sh * beta;
    return d;
}

TrigInitialData trig_data_from_fields(const Eigen::ArrayXcd& alpha, const Eigen::ArrayXcd& beta,
                                      double omega0, double omega, const MediumProfile& profile) {
    return trig_data_from_fields(alpha, beta, omega0, omega, profile.eps0(), profile.mu);
}

double gaussian_moment(double a, int l, double z1, double z2) {
    if (a <= 0.0) throw std::invalid_argument("gaussian_moment: a must be positive");
    if (l < 0 || l > k_max_moment_order) {
        throw std::invalid_argument("gaussian_moment: order out of range");
    }
    const long double la = a;
    const long double ra = std::sqrt(la);
    const long double x1 = ra * z1;
    const long double x2 = ra * z2;

    // erf difference on the side where the tails do not cancel
    long double diff;
    if (x1 >= 0.0L && x2 >= 0.0L) {
        diff = std::erfc(x1) - std::erfc(x2);
    } else if (x1 <= 0.0L && x2 <= 0.0L) {
        diff = std::erfc(-x2) - std::erfc(-x1);
    } else {
        diff = std::erf(x2) - std::erf(x1);
    }
    const long double sqrt_pi = 1.7724538509055160272981674833411452L;
    long double even = sqrt_pi / (2.0L * ra) * diff;  // I_0
    if (l == 0) return static_cast<double>(even);

    const long double e1 = std::exp(-la * z1 * z1);
    const long double e2 = std::exp(-la * z2 * z2);
    long double odd = (e1 - e2) / (2.0L * la);  // I_1
    if (l == 1) return static_cast<double>(odd);

    // I_k = ((k-1) I_{k-2} - (z2^{k-1} e2 - z1^{k-1} e1)) / (2a)
    long double p1 = z1;  // z1^{k-1} at k = 2
    long double p2 = z2;
    for (int k = 2; k <= l; ++k) {
        long double& lane = (k % 2 == 0) ? even : odd;
        lane = ((k - 1) * lane - (p2 * e2 - p1 * e1)) / (2.0L * la);
        p1 *= z1;
        p2 *= z2;
    }
    return static_cast<double>(l % 2 == 0 ? even : odd);
}

double psk_value(const SymbolStream& stream, double t) {
    if (stream.symbol_duration <= 0.0) {
        throw std::invalid_argument("psk_value: symbol duration must be positive");
    }
    if (t < 0.0 || t >= stream.support_end()) return 0.0;
    const auto n = std::min<Eigen::Index>(static_cast<Eigen::Index>(t / stream.symbol_duration),
                                          stream.count() - 1);
    return stream.c(n) * std::cos(stream.omega0 * t) + stream.s(n) * std::sin(stream.omega0 * t);
}

cplx psk_moment(const SymbolStream& stream, int l, double z1, double z2) {
    if (stream.symbol_duration <= 0.0) {
        throw std::invalid_argument("psk_moment: symbol duration must be positive");
    }
    if (l < 0 || l > k_max_moment_order) {
        throw std::invalid_argument("psk_moment: order out of range");
    }
    double sign = 1.0;
    if (z2 < z1) {
        std::swap(z1, z2);
        sign = -1.0;
    }
    const double d = stream.symbol_duration;
    const double lo_all = std::max(z1, 0.0);
    const double hi_all = std::min(z2, stream.support_end());
    if (hi_all <= lo_all) return 0.0;

    const auto n_lo = static_cast<Eigen::Index>(std::floor(lo_all / d));
    double acc = 0.0;
    Eigen::ArrayXd mc, ms;
    for (Eigen::Index n = n_lo; n < stream.count(); ++n) {
        const double lo = std::max(lo_all, static_cast<double>(n) * d);
        const double hi = std::min(hi_all, static_cast<double>(n + 1) * d);
        if (hi <= lo) {
            if (lo >= hi_all) break;
            continue;
        }
        trig_interval_moments_all(l, stream.omega0, lo, hi, mc, ms);
        acc += stream.c(n) * mc(l) + stream.s(n) * ms(l);
    }
    return cplx(sign * acc, 0.0);
}

std::pair<Eigen::ArrayXd, Eigen::ArrayXd> load_symbol_stream(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_symbol_stream: cannot open '" + path + "'");

    std::vector<std::array<double, 2>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        std::array<double, 2> row{};
        int got = 0;
        double v;
        while (got < 2 && (ss >> v)) row[got++] = v;
        if (got == 0) continue;
        double extra;
        if (got != 2 || (ss >> extra)) {
            throw std::runtime_error("load_symbol_stream: line " + std::to_string(line_no) +
                                     ": expected exactly 2 columns");
        }
        rows.push_back(row);
    }
    if (rows.empty()) throw std::runtime_error("load_symbol_stream: no symbols in '" + path + "'");

    const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
    Eigen::ArrayXd c(n), s(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        c(i) = rows[i][0];
        s(i) = rows[i][1];
    }
    return {c, s};
}

SampledSignal::SampledSignal(const Eigen::ArrayXd& t, const Eigen::ArrayXcd& w, int l_max) {
    if (l_max < 0 || l_max > k_max_moment_order) {
        throw std::invalid_argument("SampledSignal: moment order out of range");
    }
    value_ = CubicSpline<cplx>(t, w);
    premultiplied_.reserve(l_max + 1);
    Eigen::ArrayXcd scaled = w;
    for (int l = 0; l <= l_max; ++l) {
        premultiplied_.emplace_back(t, scaled);
        scaled *= t.cast<cplx>();
    }
}

cplx SampledSignal::moment(int l, double z1, double z2) const {
    if (l < 0 || l > moment_order()) {
        throw std::invalid_argument("SampledSignal::moment: order exceeds the table");
    }
    return premultiplied_[static_cast<std::size_t>(l)].integrate(z1, z2);
}

SampledSignal load_sampled_signal(const std::string& path, int l_max) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_sampled_signal: cannot open '" + path + "'");

    std::vector<std::array<double, 3>> rows;
    int n_cols = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        std::array<double, 3> row{};
        int got = 0;
        double v;
        while (got < 3 && (ss >> v)) row[got++] = v;
        if (got == 0) continue;
        double extra;
        if (ss >> extra) {
            throw std::runtime_error("load_sampled_signal: line " + std::to_string(line_no) +
                                     ": more than 3 columns");
        }
        if (got < 2) {
            throw std::runtime_error("load_sampled_signal: line " + std::to_string(line_no) +
                                     ": expected 2 or 3 columns");
        }
        if (n_cols == 0) n_cols = got;
        if (got != n_cols) {
            throw std::runtime_error("load_sampled_signal: line " + std::to_string(line_no) +
                                     ": inconsistent column count");
        }
        rows.push_back(row);
    }
    if (rows.size() < 4) {
        throw std::runtime_error("load_sampled_signal: need at least 4 samples");
    }

    const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
    Eigen::ArrayXd t(n);
    Eigen::ArrayXcd w(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        t(i) = rows[i][0];
        w(i) = cplx(rows[i][1], n_cols == 3 ? rows[i][2] : 0.0);
    }
    return SampledSignal(t, w, l_max);
}

GeneralBranchData zero_branch() {
    GeneralBranchData d;
    d.value = [](double) { return cplx(0.0, 0.0); };
    d.moment = [](int, double, double) { return cplx(0.0, 0.0); };
    return d;
}

GeneralBranchData gaussian_branch(double a, cplx amplitude, double center) {
    if (a <= 0.0) throw std::invalid_argument("gaussian_branch: a must be positive");
    GeneralBranchData d;
    d.value = [a, amplitude, center](double z) {
        return amplitude * std::exp(-a * (z - center) * (z - center));
    };
    d.moment = [a, amplitude, center](int l, double z1, double z2) {
        static const Eigen::MatrixXd bin = binomial_table(k_max_moment_order);
        double acc = 0.0;
        double center_pow = 1.0;  // center^{l-i}, accumulated from i = l down
        for (int i = l; i >= 0; --i) {
            acc += bin(l, i) * center_pow * gaussian_moment(a, i, z1 - center, z2 - center);
            center_pow *= center;
        }
        return amplitude * acc;
    };
    return d;
}

GeneralBranchData trig_branch(const TrigInitialData& data, int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("trig_branch: sign must be +1 or -1");
    const Eigen::ArrayXcd gamma = (sign > 0) ? data.gamma_plus : data.gamma_minus;
    const double omega0 = data.omega0;
    const double omega = data.omega;
    const int side_count = data.side_count;

    GeneralBranchData d;
    d.value = [gamma, omega0, omega, side_count](double t) {
        return trig_sum(gamma, omega0, omega, side_count, t);
    };
    d.moment = [gamma, omega0, omega, side_count](int l, double z1, double z2) {
        cplx acc = 0.0;
        Eigen::ArrayXd mc, ms;
        for (int m = -side_count; m <= side_count; ++m) {
            trig_interval_moments_all(l, omega0 + m * omega, z1, z2, mc, ms);
            acc += gamma(m + side_count) * cplx(mc(l), ms(l));
        }
        return acc;
    };
    return d;
}

GeneralBranchData psk_branch(SymbolStream stream) {
    auto shared = std::make_shared<const SymbolStream>(std::move(stream));
    GeneralBranchData d;
    d.value = [shared](double t) { return cplx(psk_value(*shared, t), 0.0); };
    d.moment = [shared](int l, double z1, double z2) { return psk_moment(*shared, l, z1, z2); };
    return d;
}

GeneralBranchData sampled_branch(SampledSignal signal) {
    auto shared = std::make_shared<const SampledSignal>(std::move(signal));
    GeneralBranchData d;
    d.value = [shared](double t) { return shared->value(t); };
    d.moment = [shared](int l, double z1, double z2) { return shared->moment(l, z1, z2); };
    return d;
}

}  // namespace layerwave
