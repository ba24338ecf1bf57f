// Finite bath of N oscillators coupled to the system coordinate.
//
//   H = p^2/2m + m omega0^2 q^2/2 + sum_j [p_j^2/2m_j + m_j omega_j^2 (q_j - q)^2 / 2]
// with weights c_j = m_j omega_j^2 chosen so that sum_j c_j cos(omega_j t) is the
// midpoint rule for mu(t) = (2/pi) int_0^inf Re mu~(omega) cos(omega t) domega.

#pragma once

#include <cstddef>
#include <vector>

#include "dqo/core_model.hpp"

namespace dqo {

struct DiscreteBath {
    std::vector<double> frequencies;  // ascending, > 0
    std::vector<double> weights;      // c_j = m_j omega_j^2 >= 0
    double spacing{};                 // grid step domega

    std::size_t size() const noexcept { return frequencies.size(); }
};

struct NormalModeSet {
    std::vector<double> frequencies;  // ascending, N + 1 of them
};

// omega_j = (j - 1/2) omega_max / N. Throws InvalidParameter for an Ohmic bath or N < 1,
// InvalidGridError unless omega_max > omega_cut.
DiscreteBath discretize_bath(const BathSpec& bath, double mass, std::size_t N, double omega_max);

// Eigenfrequencies of the mass-weighted stiffness matrix. Throws EigenSolverError if the
// solver fails or returns a negative eigenvalue beyond round-off.
NormalModeSet normal_modes(const SystemSpec& sys, const DiscreteBath& bath);

// beta [sum_k eps(Omega_k) - sum_j eps(omega_j)], summed as differences of matched modes.
double internal_energy_finite_N(const SystemSpec& sys, const DiscreteBath& bath,
                                const ThermalState& state);
double internal_energy_finite_N(const NormalModeSet& modes, const DiscreteBath& bath,
                                const ThermalState& state);

// Number of normal modes minus number of bath oscillators; the discrete P_U integrates
// to this count.
long discrete_P_U_check(const DiscreteBath& bath, const NormalModeSet& modes);

// Reconstructed kernel sum_j c_j cos(omega_j t).
double discrete_kernel(const DiscreteBath& bath, double t);

// Relative L2 error of the reconstructed kernel against m gamma wcut exp(-wcut t) on
// [0, t_max], trapezoid rule on `samples` points.
double kernel_reconstruction_error(const DiscreteBath& dbath, const BathSpec& bath, double mass,
                                   double t_max, std::size_t samples = 4001);

}  // namespace dqo
