#include "dqo/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "dqo/errors.hpp"
#include "dqo/kernels.hpp"

namespace dqo {

namespace {

constexpr double pi = std::numbers::pi;

// Re mu~ (w) / |lambda|^2 summed over the three field channels lambda, lambda -+ m wc w,
// which is Im tr alpha^s / w.
double channel_weight_3d(const SystemSpec& sys, const BathSpec& bath, double omega) {
    const complex lam = lambda_fn(sys, bath, omega);
    const double kappa = sys.mass * sys.omega_c * omega;
    const double re_mu = memory_kernel_ft(bath, sys.mass, omega).real();
    return re_mu * (1.0 / std::norm(lam - kappa) + 1.0 / std::norm(lam + kappa) + 1.0 / std::norm(lam));
}

double channel_weight_1d(const SystemSpec& sys, const BathSpec& bath, double omega) {
    return memory_kernel_ft(bath, sys.mass, omega).real() / std::norm(lambda_fn(sys, bath, omega));
}

// sum_k w_k c_k / (c_k^2 + omega^2) for weights with sum_k w_k c_k = 0. Above the largest
// pole the equivalent form -sum w c^3 / (omega^2 (c^2 + omega^2)) avoids cancelling the
// 1/omega^2 parts.
template <std::size_t K>
complex lorentz_sum(const std::array<complex, K>& c, const std::array<double, K>& w, double omega) {
    double top = 0.0;
    for (const auto& ck : c) top = std::max(top, std::abs(ck));
    const double w2 = omega * omega;
    complex s{};
    if (omega > top) {
        for (std::size_t k = 0; k < K; ++k) s -= w[k] * c[k] * c[k] * c[k] / (c[k] * c[k] + w2);
        return s / w2;
    }
    for (std::size_t k = 0; k < K; ++k) s += w[k] * c[k] / (c[k] * c[k] + w2);
    return s;
}

double checked_real(complex v, double tol, const char* what) {
    if (std::abs(v.imag()) > tol * std::max(1.0, std::abs(v.real()))) {
        throw ResidueError(std::string(what) + ": imaginary residue " + std::to_string(v.imag()));
    }
    return v.real();
}

}  // namespace

double p_E_1d(const SystemSpec& sys, const BathSpec& bath, double omega) {
    const double w02 = sys.omega0 * sys.omega0;
    return sys.mass / pi * (omega * omega + w02) * channel_weight_1d(sys, bath, omega);
}

double p_k_1d(const SystemSpec& sys, const BathSpec& bath, double omega) {
    return 2.0 * sys.mass / pi * omega * omega * channel_weight_1d(sys, bath, omega);
}

double p_p_1d(const SystemSpec& sys, const BathSpec& bath, double omega) {
    return 2.0 * sys.mass / pi * sys.omega0 * sys.omega0 * channel_weight_1d(sys, bath, omega);
}

double p_U_1d(const SystemSpec& /*sys*/, const DrudePoles& poles, double omega,
              double residue_tolerance) {
    const double omega_cut = poles.Omega + poles.Gamma;
    const std::array<complex, 4> c{complex{poles.Omega}, poles.z_plus, poles.z_minus,
                                   complex{omega_cut}};
    const std::array<double, 4> w{1.0, 1.0, 1.0, -1.0};
    return checked_real(lorentz_sum(c, w, omega), residue_tolerance, "p_U_1d") / pi;
}

double p_U_1d(const SystemSpec& sys, const BathSpec& bath, double omega) {
    if (bath.is_drude()) return p_U_1d(sys, invert_drude(sys, bath), omega);
    const complex lam = lambda_fn(sys, bath, omega);
    const complex dlam = lambda_derivative(sys, bath, omega);
    return -(dlam * std::conj(lam)).imag() / (pi * std::norm(lam));
}

double p_E_3d(const SystemSpec& sys, const BathSpec& bath, double omega) {
    const double w02 = sys.omega0 * sys.omega0;
    return sys.mass / (3.0 * pi) * (omega * omega + w02) * channel_weight_3d(sys, bath, omega);
}

double p_k_3d(const SystemSpec& sys, const BathSpec& bath, double omega) {
    return 2.0 * sys.mass / (3.0 * pi) * omega * omega * channel_weight_3d(sys, bath, omega);
}

double p_p_3d(const SystemSpec& sys, const BathSpec& bath, double omega) {
    return 2.0 * sys.mass / (3.0 * pi) * sys.omega0 * sys.omega0 *
           channel_weight_3d(sys, bath, omega);
}

double p_U_3d(const SystemSpec& /*sys*/, const DrudePoles& poles, const MagnetoPoles& magneto,
              double omega, double residue_tolerance) {
    const double omega_cut = poles.Omega + poles.Gamma;
    const std::array<complex, 8> c{complex{poles.Omega}, complex{omega_cut}, poles.z_plus,
                                   poles.z_minus,        magneto.Omega1,     std::conj(magneto.Omega1),
                                   magneto.Omega2,       std::conj(magneto.Omega2)};
    constexpr double third = 1.0 / 3.0;
    const std::array<double, 8> w{1.0, -1.0, third, third, third, third, third, third};
    return checked_real(lorentz_sum(c, w, omega), residue_tolerance, "p_U_3d") / pi;
}

std::vector<double> model_features(const SystemSpec& sys, const BathSpec& bath) {
    const double w0 = sys.omega0;
    std::vector<double> f{0.5 * w0, w0, 2.0 * w0};
    if (sys.omega_c > 0.0) {
        const double r = std::hypot(w0, 0.5 * sys.omega_c);
        for (double x : {r - 0.5 * sys.omega_c, r + 0.5 * sys.omega_c, sys.omega_c}) f.push_back(x);
    }
    if (bath.is_drude()) f.push_back(bath.omega_cut);
    // Resonance widths of order gamma around each resonance.
    const std::size_t n = f.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (double d : {-bath.gamma, bath.gamma}) {
            if (f[i] + d > 0.0) f.push_back(f[i] + d);
        }
    }
    std::sort(f.begin(), f.end());
    return f;
}

double default_split(const SystemSpec& sys, const BathSpec& bath) {
    double s = std::max(10.0 * sys.omega0, 10.0 * sys.omega_c);
    if (bath.is_drude()) s = std::max(s, 10.0 * bath.omega_cut);
    return s;
}

Density energy_density_1d(const SystemSpec& sys, const BathSpec& bath) {
    return {[sys, bath](double w) { return p_E_1d(sys, bath, w); }, model_features(sys, bath),
            default_split(sys, bath)};
}

Density internal_density_1d(const SystemSpec& sys, const BathSpec& bath) {
    if (!bath.is_drude()) {
        return {[sys, bath](double w) { return p_U_1d(sys, bath, w); }, model_features(sys, bath),
                default_split(sys, bath)};
    }
    const DrudePoles poles = invert_drude(sys, bath);
    return {[sys, poles](double w) { return p_U_1d(sys, poles, w); }, model_features(sys, bath),
            default_split(sys, bath)};
}

Density energy_density_3d(const SystemSpec& sys, const BathSpec& bath) {
    return {[sys, bath](double w) { return p_E_3d(sys, bath, w); }, model_features(sys, bath),
            default_split(sys, bath)};
}

Density internal_density_3d(const SystemSpec& sys, const BathSpec& bath) {
    const DrudePoles poles = invert_drude(sys, bath);
    const MagnetoPoles magneto = magneto_poles(poles, sys.omega_c);
    return {[sys, poles, magneto](double w) { return p_U_3d(sys, poles, magneto, w); },
            model_features(sys, bath), default_split(sys, bath)};
}

std::vector<double> linear_grid(double lo, double hi, std::size_t points) {
    if (points < 2 || !(hi > lo)) throw InvalidGridError("linear_grid: need hi > lo and >= 2 points");
    std::vector<double> g(points);
    const double step = (hi - lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) g[i] = lo + step * static_cast<double>(i);
    g.back() = hi;
    return g;
}

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
    if (points < 2 || !(lo > 0.0) || !(hi > lo)) {
        throw InvalidGridError("log_grid: need 0 < lo < hi and >= 2 points");
    }
    std::vector<double> g(points);
    const double a = std::log(lo);
    const double step = (std::log(hi) - a) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) g[i] = std::exp(a + step * static_cast<double>(i));
    g.front() = lo;
    g.back() = hi;
    return g;
}

SpectralSample sample_density(const Density& density, std::vector<double> grid,
                              const QuadratureConfig& cfg, bool parallel) {
    if (grid.empty()) throw InvalidGridError("sample_density: empty grid");
    if (!std::is_sorted(grid.begin(), grid.end()) || grid.front() < 0.0) {
        throw InvalidGridError("sample_density: grid must be ascending and non-negative");
    }
    SpectralSample s;
    s.omega_grid = std::move(grid);
    s.values = parallel ? kernels::parallel::evaluate(s.omega_grid, density.f)
                        : kernels::serial::evaluate(s.omega_grid, density.f);
    s.norm_estimate = integrate_half_line(density.f, density.features, density.split, cfg).value;
    s.peaks = find_peaks(s, density.f);
    return s;
}

namespace {

double golden_maximum(const std::function<double(double)>& f, double a, double b, double tol) {
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - r * (b - a);
    double x2 = a + r * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < 200 && b - a > tol; ++it) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

std::vector<Peak> find_peaks(const SpectralSample& sample,
                             const std::function<double(double)>& density, double omega_tol) {
    const auto& x = sample.omega_grid;
    const auto& v = sample.values;
    std::vector<Peak> peaks;
    const std::size_t n = std::min(x.size(), v.size());
    std::size_t i = 1;
    while (i + 1 < n) {
        if (!(v[i] > v[i - 1])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < n && v[j + 1] == v[i]) ++j;
        if (j + 1 >= n) break;  // rises into the right edge
        if (v[j + 1] < v[i]) {
            if (j > i) {
                peaks.push_back({x[i], v[i]});
            } else {
                const double w = golden_maximum(density, x[i - 1], x[i + 1], omega_tol);
                peaks.push_back({w, density(w)});
            }
        }
        i = j + 1;
    }
    return peaks;
}

}  // namespace dqo
