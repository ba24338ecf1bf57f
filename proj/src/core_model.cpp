#include "dqo/core_model.hpp"

#include <cmath>

#include "dqo/errors.hpp"

namespace dqo {

namespace {

constexpr complex I{0.0, 1.0};

void check_pole(const complex& denom, const SystemSpec& sys, double pole_epsilon,
                double omega) {
    const double scale = sys.mass * sys.omega0 * sys.omega0;
    if (std::abs(denom) < pole_epsilon * scale) {
        throw PoleError("susceptibility pole at omega = " + std::to_string(omega));
    }
}

}  // namespace

std::string to_string(BathKind kind) {
    return kind == BathKind::Ohmic ? "ohmic" : "drude";
}

BathSpec BathSpec::ohmic(double gamma) {
    BathSpec b{BathKind::Ohmic, gamma, 0.0};
    b.validate();
    return b;
}

BathSpec BathSpec::drude(double gamma, double omega_cut) {
    BathSpec b{BathKind::Drude, gamma, omega_cut};
    b.validate();
    return b;
}

void BathSpec::validate() const {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw InvalidParameter("bath: gamma must be positive and finite");
    }
    if (kind == BathKind::Drude && (!(omega_cut > 0.0) || !std::isfinite(omega_cut))) {
        throw InvalidParameter("bath: Drude cutoff must be positive and finite");
    }
}

void SystemSpec::validate() const {
    if (!(omega0 > 0.0) || !std::isfinite(omega0)) {
        throw InvalidParameter("system: omega0 must be positive and finite");
    }
    if (!(mass > 0.0) || !std::isfinite(mass)) {
        throw InvalidParameter("system: mass must be positive and finite");
    }
    if (!(omega_c >= 0.0) || !std::isfinite(omega_c)) {
        throw InvalidParameter("system: omega_c must be non-negative and finite");
    }
}

ThermalState ThermalState::from_temperature(const SystemSpec& sys, double temperature) {
    if (!(temperature > 0.0) || !std::isfinite(temperature)) {
        throw InvalidParameter("temperature must be positive and finite");
    }
    return ThermalState(temperature, sys.omega0 / temperature);
}

ThermalState ThermalState::from_alpha(const SystemSpec& sys, double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw InvalidParameter("alpha must be positive and finite");
    }
    return ThermalState(sys.omega0 / alpha, alpha);
}

complex memory_kernel_ft(const BathSpec& bath, double mass, double omega) {
    const double mg = mass * bath.gamma;
    if (bath.kind == BathKind::Ohmic) return {mg, 0.0};
    const double wc = bath.omega_cut;
    const double d = omega * omega + wc * wc;
    return {mg * wc * wc / d, mg * omega * wc / d};
}

complex memory_kernel_ft_derivative(const BathSpec& bath, double mass, double omega) {
    if (bath.kind == BathKind::Ohmic) return {0.0, 0.0};
    // mu~ = m gamma wc / (wc - i omega)
    const complex q{bath.omega_cut, -omega};
    return I * mass * bath.gamma * bath.omega_cut / (q * q);
}

complex lambda_fn(const SystemSpec& sys, const BathSpec& bath, double omega) {
    const complex mu = memory_kernel_ft(bath, sys.mass, omega);
    return sys.mass * (sys.omega0 * sys.omega0 - omega * omega) - I * omega * mu;
}

complex lambda_derivative(const SystemSpec& sys, const BathSpec& bath, double omega) {
    const complex mu = memory_kernel_ft(bath, sys.mass, omega);
    const complex dmu = memory_kernel_ft_derivative(bath, sys.mass, omega);
    return -2.0 * sys.mass * omega - I * (mu + omega * dmu);
}

complex susceptibility_1d(const SystemSpec& sys, const BathSpec& bath, double omega,
                          double pole_epsilon) {
    const complex lam = lambda_fn(sys, bath, omega);
    check_pole(lam, sys, pole_epsilon, omega);
    return 1.0 / lam;
}

SusceptibilityTensor susceptibility_tensor(const SystemSpec& sys, const BathSpec& bath,
                                           double omega, double pole_epsilon) {
    const complex lam = lambda_fn(sys, bath, omega);
    check_pole(lam, sys, pole_epsilon, omega);
    const double mwc = sys.mass * sys.omega_c * omega;
    // lambda^2 / det D and lambda / det D with det D = lambda (lambda^2 - (m wc w)^2).
    const complex reduced = lam * lam - mwc * mwc;
    check_pole(reduced / (sys.mass * sys.omega0 * sys.omega0), sys, pole_epsilon, omega);
    SusceptibilityTensor t;
    t.alpha_xx_s = lam / reduced;
    t.alpha_zz_s = 1.0 / lam;
    t.alpha_xy = -I * mwc / reduced;
    return t;
}

}  // namespace dqo
