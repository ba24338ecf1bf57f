// Energies as frequency integrals  beta X = int_0^inf beta eps(omega, T) P_X(omega) domega,
// eps = (omega/2) coth(omega / 2T), independent of the Matsubara route.

#pragma once

#include "dqo/core_model.hpp"
#include "dqo/drude_parameters.hpp"
#include "dqo/integration.hpp"

namespace dqo {

// beta eps as a function of x = beta omega: (x/2) coth(x/2), equal to 1 at x = 0.
double beta_epsilon(double x) noexcept;

// The full-range integrals diverge for Ohmic friction (eps P ~ 1/omega); they throw
// DivergenceError unless cfg.band_limit is set.
double mean_energy_1d_quad(const SystemSpec& sys, const BathSpec& bath, const ThermalState& state,
                           const QuadratureConfig& cfg = {});
double internal_energy_1d_quad(const SystemSpec& sys, const DrudePoles& poles,
                               const ThermalState& state, const QuadratureConfig& cfg = {});
double internal_energy_1d_quad(const SystemSpec& sys, const BathSpec& bath,
                               const ThermalState& state, const QuadratureConfig& cfg = {});

double mean_energy_3d_quad(const SystemSpec& sys, const BathSpec& bath, const ThermalState& state,
                           const QuadratureConfig& cfg = {});

// With the closed-form magneto poles.
double internal_energy_3d_quad(const SystemSpec& sys, const DrudePoles& poles,
                               const MagnetoPoles& magneto, const ThermalState& state,
                               const QuadratureConfig& cfg = {});

// beta dU = -(beta/pi) int eps Im d/domega ln(1 - g^2),  g = m wc omega alpha0(omega),
// the field contribution to  ln det alpha = 3 ln alpha0 - ln(1 - g^2).
double magnetic_shift_quad(const SystemSpec& sys, const BathSpec& bath, const ThermalState& state,
                           const QuadratureConfig& cfg = {});

// 3 beta U_1d + beta dU.
double internal_energy_3d_quad_decomposed(const SystemSpec& sys, const BathSpec& bath,
                                          const ThermalState& state,
                                          const QuadratureConfig& cfg = {});

}  // namespace dqo
