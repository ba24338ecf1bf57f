#include "dqo/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dqo/errors.hpp"
#include "dqo/spectral.hpp"

namespace dqo {

namespace {

void require_band_limit_if_ohmic(const BathSpec& bath, const QuadratureConfig& cfg,
                                 const char* what) {
    if (!bath.is_drude() && !cfg.band_limit) {
        throw DivergenceError(std::string(what) +
                              ": integral diverges for Ohmic friction; set a band limit");
    }
}

double thermal_integral(const Density& d, const ThermalState& state, const QuadratureConfig& cfg) {
    const double beta = state.beta();
    auto f = [&](double w) { return beta_epsilon(beta * w) * d.f(w); };
    auto features = d.features;
    // coth changes from 1/x to 1 around omega ~ T.
    features.push_back(state.temperature());
    return integrate_half_line(f, features, d.split, cfg).value;
}

}  // namespace

double beta_epsilon(double x) noexcept {
    const double h = 0.5 * std::abs(x);
    if (h < 1e-4) return 1.0 + h * h / 3.0;
    if (h > 40.0) return h;
    return h / std::tanh(h);
}

double mean_energy_1d_quad(const SystemSpec& sys, const BathSpec& bath, const ThermalState& state,
                           const QuadratureConfig& cfg) {
    require_band_limit_if_ohmic(bath, cfg, "mean_energy_1d_quad");
    return thermal_integral(energy_density_1d(sys, bath), state, cfg);
}

double internal_energy_1d_quad(const SystemSpec& sys, const DrudePoles& poles,
                               const ThermalState& state, const QuadratureConfig& cfg) {
    const BathSpec bath = BathSpec::drude(forward_map(poles).gamma, poles.Omega + poles.Gamma);
    Density d{[sys, poles](double w) { return p_U_1d(sys, poles, w); }, model_features(sys, bath),
              default_split(sys, bath)};
    return thermal_integral(d, state, cfg);
}

double internal_energy_1d_quad(const SystemSpec& sys, const BathSpec& bath,
                               const ThermalState& state, const QuadratureConfig& cfg) {
    require_band_limit_if_ohmic(bath, cfg, "internal_energy_1d_quad");
    return thermal_integral(internal_density_1d(sys, bath), state, cfg);
}

double mean_energy_3d_quad(const SystemSpec& sys, const BathSpec& bath, const ThermalState& state,
                           const QuadratureConfig& cfg) {
    require_band_limit_if_ohmic(bath, cfg, "mean_energy_3d_quad");
    return 3.0 * thermal_integral(energy_density_3d(sys, bath), state, cfg);
}

double internal_energy_3d_quad(const SystemSpec& sys, const DrudePoles& poles,
                               const MagnetoPoles& magneto, const ThermalState& state,
                               const QuadratureConfig& cfg) {
    const BathSpec bath = BathSpec::drude(forward_map(poles).gamma, poles.Omega + poles.Gamma);
    Density d{[sys, poles, magneto](double w) { return p_U_3d(sys, poles, magneto, w); },
              model_features(sys, bath), default_split(sys, bath)};
    return 3.0 * thermal_integral(d, state, cfg);
}

double magnetic_shift_quad(const SystemSpec& sys, const BathSpec& bath, const ThermalState& state,
                           const QuadratureConfig& cfg) {
    if (sys.omega_c == 0.0) return 0.0;
    const double mwc = sys.mass * sys.omega_c;
    Density d{[sys, bath, mwc](double w) {
                  const complex lam = lambda_fn(sys, bath, w);
                  const complex a0 = 1.0 / lam;
                  const complex da0 = -a0 * a0 * lambda_derivative(sys, bath, w);
                  const complex g = mwc * w * a0;
                  const complex dg = mwc * (a0 + w * da0);
                  // -(1/pi) Im d ln(1 - g^2) = (1/pi) Im[2 g g' / (1 - g^2)]
                  return (2.0 * g * dg / (1.0 - g * g)).imag() / std::numbers::pi;
              },
              model_features(sys, bath), default_split(sys, bath)};
    return thermal_integral(d, state, cfg);
}

double internal_energy_3d_quad_decomposed(const SystemSpec& sys, const BathSpec& bath,
                                          const ThermalState& state,
                                          const QuadratureConfig& cfg) {
    return 3.0 * internal_energy_1d_quad(sys, bath, state, cfg) +
           magnetic_shift_quad(sys, bath, state, cfg);
}

}  // namespace dqo
