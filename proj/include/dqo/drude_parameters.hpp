// Pole parameters of the Drude-damped oscillator.
//
// With s = -i omega, lambda(omega) (omega_cut + s) / m factorises as
// (s + Omega)(s + z+)(s + z-), where
//     gamma     = Gamma [Omega (Omega + Gamma) + Omega0^2] / (Omega + Gamma)^2
//     omega0^2  = Omega0^2 Omega / (Omega + Gamma)
//     omega_cut = Omega + Gamma
//     z+-       = Gamma/2 +- sqrt(Gamma^2/4 - Omega0^2).
// invert_drude solves these relations for (Gamma, Omega0, Omega).

#pragma once

#include <array>

#include "dqo/core_model.hpp"

namespace dqo {

struct DrudePoles {
    double Gamma{};
    double Omega0{};
    double Omega{};
    complex z_plus{};
    complex z_minus{};

    // Under-damped when the z pair is complex conjugate.
    bool underdamped() const noexcept { return z_plus.imag() != 0.0; }
};

struct DrudeParameters {
    double gamma;
    double omega0;
    double omega_cut;
};

// Roots of the xy response in a field, in closed form for the
// dissipative magneto-oscillator:
//   a = (wc/2)^2 + (Omega0^2 - Gamma^2/4),  b = sqrt(a^2 + (Gamma wc / 2)^2)
//   Omega1 = [Gamma/2 + sqrt((b-a)/2)] - i [wc/2 + sqrt((b+a)/2)]
//   Omega2 = [Gamma/2 - sqrt((b-a)/2)] - i [wc/2 - sqrt((b+a)/2)]
// Omega1, Omega2 and their conjugates are the roots of s^2 + (Gamma -+ i wc) s + Omega0^2,
// i.e. the cyclotron shift is applied to the z pair while Omega is held fixed.
struct MagnetoPoles {
    double a{};
    double b{};
    complex Omega1{};
    complex Omega2{};
};

// Cubic whose unique root in (0, omega_cut) is Omega:
//   Omega^3 - wcut Omega^2 + (omega0^2 + gamma wcut) Omega - omega0^2 wcut.
double drude_cubic(double gamma, double omega0, double omega_cut, double Omega) noexcept;

// Bracketed bisection followed by Newton polishing; throws NoRealRootError if the
// cubic has no sign change on the bracket.
DrudePoles invert_drude(double gamma, double omega0, double omega_cut);
DrudePoles invert_drude(const SystemSpec& sys, const BathSpec& bath);

// (Gamma, Omega0, Omega) -> (gamma, omega0, omega_cut).
DrudeParameters forward_map(const DrudePoles& poles) noexcept;

MagnetoPoles magneto_poles(const DrudePoles& poles, double omega_c);

// Exact roots c_k (Re c_k > 0) of the two xy cubics
//   s^3 + (wcut +- i wc) s^2 + (omega0^2 + gamma wcut +- i wc wcut) s + omega0^2 wcut,
// i.e. (lambda +- m wc omega)(omega_cut - i omega)/m = prod_k (s + c_k).
// The first three belong to the '+' cubic, the last three are their conjugates.
std::array<complex, 6> xy_response_roots(const SystemSpec& sys, const BathSpec& bath);

}  // namespace dqo
