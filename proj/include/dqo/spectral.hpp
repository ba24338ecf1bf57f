// Equipartition densities P(omega) over bath frequencies.
//
//   P_k = (2m omega / pi) Im alpha,   P_p = (2m omega0^2 / (pi omega)) Im alpha,
//   P_E = (P_k + P_p) / 2,            P_U = (1/pi) Im d/domega ln alpha.
// In 3D Im alpha is replaced by Im tr alpha^s / 3.

#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "dqo/core_model.hpp"
#include "dqo/drude_parameters.hpp"
#include "dqo/integration.hpp"

namespace dqo {

double p_E_1d(const SystemSpec& sys, const BathSpec& bath, double omega);
double p_k_1d(const SystemSpec& sys, const BathSpec& bath, double omega);
double p_p_1d(const SystemSpec& sys, const BathSpec& bath, double omega);

// Partial fractions in the Drude poles. Throws ResidueError if the imaginary parts of
// the z pair fail to cancel to residue_tolerance.
double p_U_1d(const SystemSpec& sys, const DrudePoles& poles, double omega,
              double residue_tolerance = 1e-10);

// Drude: via invert_drude and the pole form. Ohmic: -(1/pi) Im(lambda'/lambda) in closed
// form, which coincides with P_E.
double p_U_1d(const SystemSpec& sys, const BathSpec& bath, double omega);

double p_E_3d(const SystemSpec& sys, const BathSpec& bath, double omega);
double p_k_3d(const SystemSpec& sys, const BathSpec& bath, double omega);
double p_p_3d(const SystemSpec& sys, const BathSpec& bath, double omega);

// Weights 1 on Omega and -omega_cut, 1/3 on z+, z-, Omega1, Omega1*, Omega2, Omega2*.
double p_U_3d(const SystemSpec& sys, const DrudePoles& poles, const MagnetoPoles& magneto,
              double omega, double residue_tolerance = 1e-10);

// Density with the natural frequency scales of the model, used for quadrature panels.
struct Density {
    std::function<double(double)> f;
    std::vector<double> features;  // resonance locations and widths
    double split{};                // start of the algebraic tail
};

Density energy_density_1d(const SystemSpec& sys, const BathSpec& bath);
Density internal_density_1d(const SystemSpec& sys, const BathSpec& bath);
Density energy_density_3d(const SystemSpec& sys, const BathSpec& bath);
Density internal_density_3d(const SystemSpec& sys, const BathSpec& bath);

// Frequencies where the integrands above change character.
std::vector<double> model_features(const SystemSpec& sys, const BathSpec& bath);
double default_split(const SystemSpec& sys, const BathSpec& bath);

struct Peak {
    double omega;
    double density;
};

struct SpectralSample {
    std::vector<double> omega_grid;
    std::vector<double> values;
    double norm_estimate{};
    std::vector<Peak> peaks;
};

std::vector<double> linear_grid(double lo, double hi, std::size_t points);
std::vector<double> log_grid(double lo, double hi, std::size_t points);

// Evaluates the density on the grid (in parallel when requested), integrates it over
// the half line for the norm and locates the peaks.
SpectralSample sample_density(const Density& density, std::vector<double> grid,
                              const QuadratureConfig& cfg = {}, bool parallel = true);

// Interior local maxima of the sampled values refined by golden-section search on the
// analytic density to 1e-10 in omega. Plateaus report their leftmost point. Empty when
// the samples are monotone.
std::vector<Peak> find_peaks(const SpectralSample& sample,
                             const std::function<double(double)>& density,
                             double omega_tol = 1e-10);

}  // namespace dqo
