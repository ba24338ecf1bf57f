#include "dqo/matsubara.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "dqo/errors.hpp"
#include "dqo/kernels.hpp"

namespace dqo {

namespace {

template <class T>
struct PartialSums {
    std::array<std::size_t, 3> n{};
    std::array<T, 3> s{};
    int levels{0};
};

// Partial sums at roughly N/4, N/2 and N, each range summed from the top index down.
template <class T, class Term>
PartialSums<T> accumulate(std::size_t N, const TruncationConfig& trunc, Term&& term) {
    auto range = [&](std::size_t first, std::size_t last) {
        return trunc.parallel ? kernels::parallel::sum_descending<T>(first, last, term)
                              : kernels::serial::sum_descending<T>(first, last, term);
    };
    PartialSums<T> out;
    if (N < 4) {
        out.n[0] = N;
        out.s[0] = range(1, N);
        out.levels = 1;
        return out;
    }
    const std::size_t q = N / 4;
    const std::size_t h = N / 2;
    const T low = range(1, q);
    const T mid = range(q + 1, h);
    const T high = range(h + 1, N);
    out.n = {q, h, N};
    out.s = {low, low + mid, low + mid + high};
    out.levels = 3;
    return out;
}

// Quadratic extrapolation of S(1/N) to 1/N = 0.
double richardson(const PartialSums<double>& p) {
    if (p.levels < 3) return p.s[0];
    const double h[3] = {1.0 / static_cast<double>(p.n[0]), 1.0 / static_cast<double>(p.n[1]),
                         1.0 / static_cast<double>(p.n[2])};
    double value = 0.0;
    for (int i = 0; i < 3; ++i) {
        double w = 1.0;
        for (int j = 0; j < 3; ++j) {
            if (j != i) w *= h[j] / (h[j] - h[i]);
        }
        value += w * p.s[i];
    }
    return value;
}

PartialSums<double> real_part(const PartialSums<complex>& p, double tol, const char* what) {
    PartialSums<double> out;
    out.n = p.n;
    out.levels = p.levels;
    for (int i = 0; i < p.levels; ++i) {
        const double re = p.s[i].real();
        const double im = p.s[i].imag();
        if (std::abs(im) > tol * std::max(1.0, std::abs(re))) {
            throw ResidueError(std::string(what) + ": imaginary residue " + std::to_string(im) +
                               " exceeds tolerance");
        }
        out.s[i] = re;
    }
    return out;
}

// Terms decaying like 1/n^2. N * t_N alone undershoots while n^2 t_n is still rising
// toward its limit, so the extrapolation correction is added on top.
EnergyResult finish_positive(double classical, const PartialSums<double>& p, double last_term) {
    const int top = p.levels - 1;
    EnergyResult r;
    r.terms_used = p.n[top];
    r.beta_energy = classical + p.s[top];
    r.extrapolated = classical + richardson(p);
    r.tail_estimate = static_cast<double>(r.terms_used) * last_term +
                      std::abs(r.extrapolated - r.beta_energy);
    return r;
}

EnergyResult finish_cancelling(double classical, const PartialSums<double>& p) {
    const int top = p.levels - 1;
    EnergyResult r;
    r.terms_used = p.n[top];
    r.beta_energy = classical + p.s[top];
    r.extrapolated = classical + richardson(p);
    r.tail_estimate = std::abs(r.extrapolated - r.beta_energy);
    return r;
}

void require_terms(const TruncationConfig& trunc) {
    if (trunc.terms < 1) throw InvalidParameter("truncation: at least one Matsubara term");
}

void require_convergent(const BathSpec& bath, const char* what) {
    if (!bath.is_drude()) {
        throw DivergenceError(std::string(what) +
                              ": series diverges for Ohmic friction (terms decay like 1/n)");
    }
}

complex pole_term(complex c, double nu) { return c / (c + nu); }

}  // namespace

double weak_coupling_energy(double alpha) {
    if (!(alpha > 0.0)) throw InvalidParameter("weak_coupling_energy: alpha must be positive");
    const double x = 0.5 * alpha;
    if (x < 1e-6) return 1.0 + x * x / 3.0;
    return x / std::tanh(x);
}

FrictionAtImaginaryFrequency friction_at(const BathSpec& bath, double nu) {
    if (!bath.is_drude()) return {bath.gamma, 0.0};
    const double s = bath.omega_cut + nu;
    return {bath.gamma * bath.omega_cut / s, -bath.gamma * bath.omega_cut / (s * s)};
}

double mean_energy_term_1d(const SystemSpec& sys, const BathSpec& bath, double nu) {
    const double w02 = sys.omega0 * sys.omega0;
    const double ng = nu * friction_at(bath, nu).value;
    return (2.0 * w02 + ng) / (nu * nu + w02 + ng);
}

double gibbs_energy_term_1d(const SystemSpec& sys, const BathSpec& bath, double nu) {
    const double w02 = sys.omega0 * sys.omega0;
    const auto f = friction_at(bath, nu);
    const double ng = nu * f.value;
    return (2.0 * w02 + ng - nu * nu * f.derivative) / (nu * nu + w02 + ng);
}

complex internal_energy_term_1d(const DrudePoles& poles, double omega_cut, double nu) {
    return pole_term(poles.Omega, nu) + pole_term(poles.z_plus, nu) +
           pole_term(poles.z_minus, nu) - omega_cut / (omega_cut + nu);
}

EnergyResult mean_energy_1d(const SystemSpec& sys, const BathSpec& bath,
                            const ThermalState& state, const TruncationConfig& trunc) {
    require_terms(trunc);
    require_convergent(bath, "mean_energy_1d");
    const MatsubaraGrid nu(state, trunc.terms);
    auto term = [&](std::size_t n) { return mean_energy_term_1d(sys, bath, nu(n)); };
    return finish_positive(1.0, accumulate<double>(trunc.terms, trunc, term), term(trunc.terms));
}

EnergyResult internal_energy_1d(const SystemSpec& /*sys*/, const DrudePoles& poles,
                                const ThermalState& state, const TruncationConfig& trunc) {
    require_terms(trunc);
    const double omega_cut = poles.Omega + poles.Gamma;
    const MatsubaraGrid nu(state, trunc.terms);
    auto term = [&](std::size_t n) { return internal_energy_term_1d(poles, omega_cut, nu(n)); };
    const auto sums = accumulate<complex>(trunc.terms, trunc, term);
    return finish_cancelling(1.0, real_part(sums, trunc.residue_tolerance, "internal_energy_1d"));
}

EnergyResult gibbs_energy_1d(const SystemSpec& sys, const BathSpec& bath,
                             const ThermalState& state, const TruncationConfig& trunc) {
    require_terms(trunc);
    require_convergent(bath, "gibbs_energy_1d");
    const MatsubaraGrid nu(state, trunc.terms);
    auto term = [&](std::size_t n) { return gibbs_energy_term_1d(sys, bath, nu(n)); };
    return finish_positive(1.0, accumulate<double>(trunc.terms, trunc, term), term(trunc.terms));
}

EnergyResult mean_energy_3d(const SystemSpec& sys, const BathSpec& bath,
                            const ThermalState& state, const TruncationConfig& trunc) {
    require_terms(trunc);
    require_convergent(bath, "mean_energy_3d");
    const MatsubaraGrid nu(state, trunc.terms);
    const double w02 = sys.omega0 * sys.omega0;
    auto term = [&](std::size_t n) {
        const double v = nu(n);
        const double ng = v * friction_at(bath, v).value;
        const double D = v * v + w02 + ng;
        const double num = 2.0 * w02 + ng;
        const double cyc = sys.omega_c * v;
        const double cyc2 = cyc * cyc;
        return 2.0 * (D * num + cyc2) / (D * D + cyc2) + num / D;
    };
    return finish_positive(3.0, accumulate<double>(trunc.terms, trunc, term), term(trunc.terms));
}

EnergyResult internal_energy_3d(const SystemSpec& /*sys*/, const DrudePoles& poles,
                                const MagnetoPoles& magneto, const ThermalState& state,
                                const TruncationConfig& trunc) {
    require_terms(trunc);
    const double omega_cut = poles.Omega + poles.Gamma;
    const MatsubaraGrid nu(state, trunc.terms);
    const std::array<complex, 6> shifted{poles.z_plus,          poles.z_minus,
                                         magneto.Omega1,        std::conj(magneto.Omega1),
                                         magneto.Omega2,        std::conj(magneto.Omega2)};
    auto term = [&](std::size_t n) {
        const double v = nu(n);
        complex t = 3.0 * (poles.Omega / (poles.Omega + v) - omega_cut / (omega_cut + v));
        for (const auto& c : shifted) t += pole_term(c, v);
        return t;
    };
    const auto sums = accumulate<complex>(trunc.terms, trunc, term);
    return finish_cancelling(3.0, real_part(sums, trunc.residue_tolerance, "internal_energy_3d"));
}

EnergyResult internal_energy_3d_exact(const SystemSpec& sys, const BathSpec& bath,
                                      const ThermalState& state,
                                      const TruncationConfig& trunc) {
    require_terms(trunc);
    const DrudePoles poles = invert_drude(sys, bath);
    const auto xy = xy_response_roots(sys, bath);
    const double omega_cut = bath.omega_cut;
    const MatsubaraGrid nu(state, trunc.terms);
    auto term = [&](std::size_t n) {
        const double v = nu(n);
        complex t = internal_energy_term_1d(poles, omega_cut, v);
        for (const auto& c : xy) t += pole_term(c, v);
        return t - 2.0 * omega_cut / (omega_cut + v);
    };
    const auto sums = accumulate<complex>(trunc.terms, trunc, term);
    return finish_cancelling(3.0,
                             real_part(sums, trunc.residue_tolerance, "internal_energy_3d_exact"));
}

EnergyResult gibbs_energy_xy(const SystemSpec& sys, const BathSpec& bath,
                             const ThermalState& state, const TruncationConfig& trunc) {
    require_terms(trunc);
    require_convergent(bath, "gibbs_energy_3d");
    const MatsubaraGrid nu(state, trunc.terms);
    const double w02 = sys.omega0 * sys.omega0;
    auto term = [&](std::size_t n) {
        const double v = nu(n);
        const auto f = friction_at(bath, v);
        const double D = v * v + w02 + v * f.value;
        const double dng = f.value + v * f.derivative;  // d(nu gh)/d nu
        const double cyc2 = sys.omega_c * sys.omega_c * v * v;
        return (2.0 * cyc2 + 4.0 * D * D - 2.0 * v * D * (dng + 2.0 * v)) / (cyc2 + D * D);
    };
    return finish_positive(2.0, accumulate<double>(trunc.terms, trunc, term), term(trunc.terms));
}

EnergyResult gibbs_energy_3d(const SystemSpec& sys, const BathSpec& bath,
                             const ThermalState& state, const TruncationConfig& trunc) {
    const EnergyResult xy = gibbs_energy_xy(sys, bath, state, trunc);
    const EnergyResult z = gibbs_energy_1d(sys, bath, state, trunc);
    EnergyResult r;
    r.terms_used = xy.terms_used;
    r.beta_energy = xy.beta_energy + z.beta_energy;
    r.extrapolated = xy.extrapolated + z.extrapolated;
    r.tail_estimate = xy.tail_estimate + z.tail_estimate;
    return r;
}

}  // namespace dqo
