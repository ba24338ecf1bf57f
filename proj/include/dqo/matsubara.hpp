// Matsubara-series evaluation of the thermal energy functions.
//
// Every energy is returned as beta * X (units of k_B T).  With nu_n = 2 pi n T and the
// Drude friction at imaginary frequency  gh(nu) = gamma wcut / (wcut + nu),
//     D_n = nu_n^2 + omega0^2 + nu_n gh(nu_n):
//   mean energy      beta E  = 1 + sum (2 omega0^2 + nu gh) / D
//   internal energy  beta U  = 1 + sum [Omega/(Omega+nu) + z+/(z++nu) + z-/(z-+nu) - wcut/(wcut+nu)]
//   Gibbs energy     beta Ec = 1 + sum (2 omega0^2 + nu gh - nu^2 gh') / D
// and the magneto-oscillator analogues (3 classical degrees of freedom).

#pragma once

#include <cstddef>

#include "dqo/core_model.hpp"
#include "dqo/drude_parameters.hpp"

namespace dqo {

struct EnergyResult {
    double beta_energy{};   // partial sum with terms_used Matsubara terms
    std::size_t terms_used{};
    double tail_estimate{}; // bound on |beta_energy - limit|
    double extrapolated{};  // Richardson estimate of the N -> infinity limit
};

// nu_n = 2 pi n T for n = 1..size.
class MatsubaraGrid {
public:
    MatsubaraGrid(const ThermalState& state, std::size_t size)
        : spacing_(2.0 * 3.14159265358979323846 * state.temperature()), size_(size) {}

    double operator()(std::size_t n) const noexcept { return spacing_ * static_cast<double>(n); }
    double spacing() const noexcept { return spacing_; }
    std::size_t size() const noexcept { return size_; }

private:
    double spacing_;
    std::size_t size_;
};

struct TruncationConfig {
    std::size_t terms{10000};
    bool parallel{true};
    double residue_tolerance{1e-10};
};

// (alpha/2) coth(alpha/2).
double weak_coupling_energy(double alpha);

// ---- single Matsubara terms (n-th summand at frequency nu) ----
//
// For an Ohmic bath gh is constant and gh' = 0, so the Gibbs and mean-energy terms
// coincide; both sums then diverge like 1/n.

struct FrictionAtImaginaryFrequency {
    double value;      // gh(nu)
    double derivative; // d gh / d nu
};

FrictionAtImaginaryFrequency friction_at(const BathSpec& bath, double nu);

double mean_energy_term_1d(const SystemSpec& sys, const BathSpec& bath, double nu);
double gibbs_energy_term_1d(const SystemSpec& sys, const BathSpec& bath, double nu);
complex internal_energy_term_1d(const DrudePoles& poles, double omega_cut, double nu);

// ---- 1D ----

// Throws DivergenceError for an Ohmic bath.
EnergyResult mean_energy_1d(const SystemSpec& sys, const BathSpec& bath,
                            const ThermalState& state, const TruncationConfig& trunc = {});

// omega_cut = Omega + Gamma is recovered from the poles.  Throws ResidueError if the
// imaginary parts of the z pair fail to cancel.
EnergyResult internal_energy_1d(const SystemSpec& sys, const DrudePoles& poles,
                                const ThermalState& state, const TruncationConfig& trunc = {});

// Throws DivergenceError for an Ohmic bath.
EnergyResult gibbs_energy_1d(const SystemSpec& sys, const BathSpec& bath,
                             const ThermalState& state, const TruncationConfig& trunc = {});

// ---- 3D magneto-oscillator (field along z, cyclotron frequency sys.omega_c) ----

// Two xy channels with  [D (2 omega0^2 + nu gh) + (wc nu)^2] / [D^2 + (wc nu)^2]  plus the
// 1D z channel.  Throws DivergenceError for an Ohmic bath.
EnergyResult mean_energy_3d(const SystemSpec& sys, const BathSpec& bath,
                            const ThermalState& state, const TruncationConfig& trunc = {});

// Series built from the closed-form magneto poles (Omega1, Omega2 and conjugates).
EnergyResult internal_energy_3d(const SystemSpec& sys, const DrudePoles& poles,
                                const MagnetoPoles& magneto, const ThermalState& state,
                                const TruncationConfig& trunc = {});

// Same series with the exact roots of the xy response cubics in place of the closed-form
// magneto poles; equals the Matsubara sum of (1/pi) Im d/dw ln det alpha.
EnergyResult internal_energy_3d_exact(const SystemSpec& sys, const BathSpec& bath,
                                      const ThermalState& state,
                                      const TruncationConfig& trunc = {});

// Gibbs energy Ec = Ec_xy + Ec_z (Ec_z is the 1D Gibbs energy).
EnergyResult gibbs_energy_3d(const SystemSpec& sys, const BathSpec& bath,
                             const ThermalState& state, const TruncationConfig& trunc = {});

// The xy part alone (2 classical degrees of freedom).
EnergyResult gibbs_energy_xy(const SystemSpec& sys, const BathSpec& bath,
                             const ThermalState& state, const TruncationConfig& trunc = {});

}  // namespace dqo
