#include "dqo/verify.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "dqo/errors.hpp"
#include "dqo/matsubara.hpp"
#include "dqo/normal_modes.hpp"
#include "dqo/quadrature.hpp"
#include "dqo/spectral.hpp"

namespace dqo {

namespace {

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

CheckResult measured(std::string name, double tol, double value) {
    return {std::move(name), tol, value, value <= tol, false, {}};
}

CheckResult skipped(std::string name, double tol, std::string reason) {
    return {std::move(name), tol, 0.0, true, true, std::move(reason)};
}

// Runs body; a library error becomes a failed check carrying the message.
template <class Body>
CheckResult guarded(const std::string& name, double tol, Body&& body) {
    try {
        return measured(name, tol, body());
    } catch (const std::exception& e) {
        CheckResult r{name, tol, std::nan(""), false, false, e.what()};
        return r;
    }
}

}  // namespace

bool all_passed(const std::vector<CheckResult>& checks) noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::vector<CheckResult> run_verification(const VerifyConfig& cfg) {
    cfg.sys.validate();
    cfg.bath.validate();
    const auto state = ThermalState::from_alpha(cfg.sys, cfg.alpha);
    TruncationConfig trunc;
    trunc.terms = cfg.terms;
    QuadratureConfig quad;
    quad.rel_tol = cfg.quad_tol;
    const bool drude = cfg.bath.is_drude();
    const std::string ohmic_reason = "series and full-range integrals diverge for Ohmic friction";
    std::vector<CheckResult> out;

    // Ohmic equality is a property of the Ohmic model; check it for the configured gamma.
    {
        const BathSpec ohmic = BathSpec::ohmic(cfg.bath.gamma);
        out.push_back(guarded("ohmic_pe_equals_pu", 1e-12, [&] {
            double worst = 0.0;
            for (double w : log_grid(1e-4 * cfg.sys.omega0, 1e4 * cfg.sys.omega0, 2001)) {
                worst = std::max(worst, std::abs(p_E_1d(cfg.sys, ohmic, w) - p_U_1d(cfg.sys, ohmic, w)));
            }
            return worst;
        }));
    }

    if (!drude) {
        for (const char* name : {"series_vs_quad_E_1d", "series_vs_quad_U_1d", "series_vs_quad_E_3d",
                                 "series_vs_quad_U_3d", "u_series_residue"}) {
            out.push_back(skipped(name, 1e-6, ohmic_reason));
        }
        out.push_back(skipped("drude_round_trip", 1e-12, "no pole parameters for Ohmic friction"));
        out.push_back(skipped("normal_mode_convergence", 1e-2, "Ohmic kernel has no finite bath"));
    } else {
        DrudePoles poles = invert_drude(cfg.sys, cfg.bath);
        if (cfg.pole_mutator) cfg.pole_mutator(poles);
        const MagnetoPoles magneto = magneto_poles(poles, cfg.sys.omega_c);

        out.push_back(guarded("series_vs_quad_E_1d", 1e-6, [&] {
            return rel_diff(mean_energy_1d(cfg.sys, cfg.bath, state, trunc).extrapolated,
                            mean_energy_1d_quad(cfg.sys, cfg.bath, state, quad));
        }));
        out.push_back(guarded("series_vs_quad_U_1d", 1e-6, [&] {
            return rel_diff(internal_energy_1d(cfg.sys, poles, state, trunc).extrapolated,
                            internal_energy_1d_quad(cfg.sys, poles, state, quad));
        }));
        out.push_back(guarded("series_vs_quad_E_3d", 1e-6, [&] {
            return rel_diff(mean_energy_3d(cfg.sys, cfg.bath, state, trunc).extrapolated,
                            mean_energy_3d_quad(cfg.sys, cfg.bath, state, quad));
        }));
        out.push_back(guarded("series_vs_quad_U_3d", 1e-6, [&] {
            return rel_diff(internal_energy_3d(cfg.sys, poles, magneto, state, trunc).extrapolated,
                            internal_energy_3d_quad(cfg.sys, poles, magneto, state, quad));
        }));
        out.push_back(guarded("u_series_residue", 1e-10, [&] {
            const MatsubaraGrid nu(state, cfg.terms);
            const double omega_cut = poles.Omega + poles.Gamma;
            complex s{};
            for (std::size_t n = cfg.terms; n >= 1; --n) {
                s += internal_energy_term_1d(poles, omega_cut, nu(n));
            }
            return std::abs(s.imag()) / std::max(1.0, std::abs(s.real()));
        }));
        out.push_back(guarded("drude_round_trip", 1e-12, [&] {
            const DrudeParameters back = forward_map(poles);
            return std::max({rel_diff(back.gamma, cfg.bath.gamma),
                             rel_diff(back.omega0, cfg.sys.omega0),
                             rel_diff(back.omega_cut, cfg.bath.omega_cut)});
        }));
        out.push_back(guarded("normal_mode_convergence", 1e-2, [&] {
            // Spacing fixed at 50 omega_cut / 2000.
            const double spacing = 50.0 * cfg.bath.omega_cut / 2000.0;
            const std::size_t N = cfg.normal_modes;
            const auto dbath = discretize_bath(cfg.bath, cfg.sys.mass, N, spacing * static_cast<double>(N));
            SystemSpec field_free = cfg.sys;
            field_free.omega_c = 0.0;
            const double finite = internal_energy_finite_N(field_free, dbath, state);
            return rel_diff(finite, internal_energy_1d(cfg.sys, poles, state, trunc).extrapolated);
        }));
    }

    auto norm_check = [&](const char* name, const Density& d) {
        out.push_back(guarded(name, 1e-8, [&] {
            return std::abs(integrate_half_line(d.f, d.features, d.split, quad).value - 1.0);
        }));
    };
    norm_check("norm_p_E_1d", energy_density_1d(cfg.sys, cfg.bath));
    norm_check("norm_p_k_1d", {[&](double w) { return p_k_1d(cfg.sys, cfg.bath, w); },
                               model_features(cfg.sys, cfg.bath), default_split(cfg.sys, cfg.bath)});
    norm_check("norm_p_p_1d", {[&](double w) { return p_p_1d(cfg.sys, cfg.bath, w); },
                               model_features(cfg.sys, cfg.bath), default_split(cfg.sys, cfg.bath)});
    if (drude) {
        DrudePoles poles = invert_drude(cfg.sys, cfg.bath);
        if (cfg.pole_mutator) cfg.pole_mutator(poles);
        const MagnetoPoles magneto = magneto_poles(poles, cfg.sys.omega_c);
        norm_check("norm_p_U_1d", {[&](double w) { return p_U_1d(cfg.sys, poles, w); },
                                   model_features(cfg.sys, cfg.bath), default_split(cfg.sys, cfg.bath)});
        norm_check("norm_p_E_3d", energy_density_3d(cfg.sys, cfg.bath));
        norm_check("norm_p_U_3d", {[&](double w) { return p_U_3d(cfg.sys, poles, magneto, w); },
                                   model_features(cfg.sys, cfg.bath), default_split(cfg.sys, cfg.bath)});
    } else {
        norm_check("norm_p_U_1d", internal_density_1d(cfg.sys, cfg.bath));
        norm_check("norm_p_E_3d", energy_density_3d(cfg.sys, cfg.bath));
        out.push_back(skipped("norm_p_U_3d", 1e-8, "3D P_U partial fractions need Drude poles"));
    }
    return out;
}

}  // namespace dqo
