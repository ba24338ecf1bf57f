#include "dqo/normal_modes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "dqo/errors.hpp"
#include "dqo/quadrature.hpp"

namespace dqo {

DiscreteBath discretize_bath(const BathSpec& bath, double mass, std::size_t N, double omega_max) {
    bath.validate();
    if (!bath.is_drude()) {
        throw InvalidParameter("discretize_bath: Ohmic kernel is a delta function, no finite bath");
    }
    if (N < 1) throw InvalidParameter("discretize_bath: N must be >= 1");
    if (!(omega_max > bath.omega_cut) || !std::isfinite(omega_max)) {
        throw InvalidGridError("discretize_bath: omega_max must exceed omega_cut");
    }
    DiscreteBath d;
    d.spacing = omega_max / static_cast<double>(N);
    const double delta = 0.5 * d.spacing;
    if (!(delta > 0.0)) throw InvalidGridError("discretize_bath: grid lower edge must be positive");
    d.frequencies.resize(N);
    d.weights.resize(N);
    for (std::size_t j = 0; j < N; ++j) {
        const double w = delta + d.spacing * static_cast<double>(j);
        d.frequencies[j] = w;
        d.weights[j] = 2.0 / std::numbers::pi * memory_kernel_ft(bath, mass, w).real() * d.spacing;
    }
    return d;
}

NormalModeSet normal_modes(const SystemSpec& sys, const DiscreteBath& bath) {
    sys.validate();
    const auto N = static_cast<Eigen::Index>(bath.size());
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N + 1, N + 1);
    double total = 0.0;
    for (Eigen::Index j = 0; j < N; ++j) {
        const double w = bath.frequencies[static_cast<std::size_t>(j)];
        const double c = bath.weights[static_cast<std::size_t>(j)];
        total += c;
        A(j + 1, j + 1) = w * w;
        A(0, j + 1) = A(j + 1, 0) = -w * std::sqrt(c / sys.mass);
    }
    A(0, 0) = sys.omega0 * sys.omega0 + total / sys.mass;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(A, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw EigenSolverError("normal_modes: eigensolver failed");
    const auto& ev = solver.eigenvalues();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    NormalModeSet modes;
    modes.frequencies.resize(static_cast<std::size_t>(N + 1));
    for (Eigen::Index k = 0; k <= N; ++k) {
        double lam = ev(k);
        if (lam < -1e-10 * scale) {
            throw EigenSolverError("normal_modes: negative eigenvalue of the stiffness matrix");
        }
        modes.frequencies[static_cast<std::size_t>(k)] = std::sqrt(std::max(lam, 0.0));
    }
    std::sort(modes.frequencies.begin(), modes.frequencies.end());
    return modes;
}

double internal_energy_finite_N(const NormalModeSet& modes, const DiscreteBath& bath,
                                const ThermalState& state) {
    const double beta = state.beta();
    std::vector<double> bath_w = bath.frequencies;
    std::sort(bath_w.begin(), bath_w.end());
    // Modes interlace with the bath frequencies, so pairing k with j = k - 1 keeps each
    // difference small.
    const auto& Om = modes.frequencies;
    double sum = 0.0;
    const std::size_t n = std::min(Om.size(), bath_w.size() + 1);
    for (std::size_t k = n; k-- > 1;) {
        sum += beta_epsilon(beta * Om[k]) - beta_epsilon(beta * bath_w[k - 1]);
    }
    if (!Om.empty()) sum += beta_epsilon(beta * Om[0]);
    for (std::size_t k = n; k < Om.size(); ++k) sum += beta_epsilon(beta * Om[k]);
    for (std::size_t j = n > 0 ? n - 1 : 0; j < bath_w.size(); ++j) {
        sum -= beta_epsilon(beta * bath_w[j]);
    }
    return sum;
}

double internal_energy_finite_N(const SystemSpec& sys, const DiscreteBath& bath,
                                const ThermalState& state) {
    return internal_energy_finite_N(normal_modes(sys, bath), bath, state);
}

long discrete_P_U_check(const DiscreteBath& bath, const NormalModeSet& modes) {
    return static_cast<long>(modes.frequencies.size()) - static_cast<long>(bath.size());
}

double discrete_kernel(const DiscreteBath& bath, double t) {
    double s = 0.0;
    for (std::size_t j = bath.size(); j-- > 0;) s += bath.weights[j] * std::cos(bath.frequencies[j] * t);
    return s;
}

double kernel_reconstruction_error(const DiscreteBath& dbath, const BathSpec& bath, double mass,
                                   double t_max, std::size_t samples) {
    if (!bath.is_drude()) throw InvalidParameter("kernel_reconstruction_error: Drude bath only");
    if (samples < 2 || !(t_max > 0.0)) throw InvalidGridError("kernel_reconstruction_error: bad grid");
    const double h = t_max / static_cast<double>(samples - 1);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double t = h * static_cast<double>(i);
        const double exact = mass * bath.gamma * bath.omega_cut * std::exp(-bath.omega_cut * t);
        const double diff = discrete_kernel(dbath, t) - exact;
        const double w = (i == 0 || i + 1 == samples) ? 0.5 : 1.0;
        num += w * diff * diff;
        den += w * exact * exact;
    }
    return std::sqrt(num / den);
}

}  // namespace dqo
