// Bath models, memory kernels and the oscillator response functions.
//
// Units: hbar = k_B = 1.  Frequencies are absolute, temperatures are energies, and all
// reported energies are dimensionless (units of k_B T).  The magnetic field enters only
// through the cyclotron frequency omega_c = eB/(mc).

#pragma once

#include <complex>
#include <string>

namespace dqo {

using complex = std::complex<double>;

// --------------------------------- Parameters --------------------------------

enum class BathKind { Ohmic, Drude };

std::string to_string(BathKind kind);

struct BathSpec {
    BathKind kind{BathKind::Drude};
    double gamma{1.0};      // friction strength
    double omega_cut{10.0}; // Drude cutoff; ignored for Ohmic

    static BathSpec ohmic(double gamma);
    static BathSpec drude(double gamma, double omega_cut);

    bool is_drude() const noexcept { return kind == BathKind::Drude; }

    // Throws InvalidParameter unless gamma > 0 and (Drude) omega_cut > 0.
    void validate() const;
};

struct SystemSpec {
    double omega0{1.0};  // trap frequency
    double mass{1.0};
    double omega_c{0.0}; // cyclotron frequency; 0 means no field

    // Throws InvalidParameter unless omega0 > 0, mass > 0, omega_c >= 0.
    void validate() const;
};

// Temperature together with the cached ratio alpha = omega0 / T.
class ThermalState {
public:
    static ThermalState from_temperature(const SystemSpec& sys, double temperature);
    static ThermalState from_alpha(const SystemSpec& sys, double alpha);

    double temperature() const noexcept { return temperature_; }
    double beta() const noexcept { return 1.0 / temperature_; }
    double alpha() const noexcept { return alpha_; }

private:
    ThermalState(double temperature, double alpha) : temperature_(temperature), alpha_(alpha) {}

    double temperature_;
    double alpha_;
};

// ------------------------------ Response functions ----------------------------

// Default pole threshold relative to m * omega0^2.
inline constexpr double default_pole_epsilon = 1e-14;

// Fourier transform of the friction kernel, mu~(omega).
complex memory_kernel_ft(const BathSpec& bath, double mass, double omega);

// d mu~ / d omega.
complex memory_kernel_ft_derivative(const BathSpec& bath, double mass, double omega);

// lambda(omega) = m (omega0^2 - omega^2) - i omega mu~(omega).
complex lambda_fn(const SystemSpec& sys, const BathSpec& bath, double omega);

// d lambda / d omega.
complex lambda_derivative(const SystemSpec& sys, const BathSpec& bath, double omega);

// alpha^(0)(omega) = 1 / lambda(omega).  Throws PoleError when |lambda| falls below
// pole_epsilon * m omega0^2.
complex susceptibility_1d(const SystemSpec& sys, const BathSpec& bath, double omega,
                          double pole_epsilon = default_pole_epsilon);

struct SusceptibilityTensor {
    complex alpha_xx_s; // = alpha_yy_s
    complex alpha_zz_s;
    complex alpha_xy;   // = -alpha_yx
};

// Non-vanishing elements for a field along z.
SusceptibilityTensor susceptibility_tensor(const SystemSpec& sys, const BathSpec& bath,
                                           double omega,
                                           double pole_epsilon = default_pole_epsilon);

}  // namespace dqo
