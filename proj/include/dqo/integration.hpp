// Adaptive integration over the half line [0, inf).
//
// [0, split] is cut at the supplied breakpoints and each panel is integrated with
// adaptive Gauss-Kronrod; the tail [split, inf) is mapped with u = 1/omega onto
// (0, 1/split].

#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace dqo {

enum class TailMap { InverseSubstitution };

struct QuadratureConfig {
    double rel_tol{1e-9};
    std::optional<double> split_point;  // default chosen by the caller from the model scales
    TailMap tail_map{TailMap::InverseSubstitution};
    unsigned max_depth{18};
    // Integrate over [0, band_limit] only. Needed for integrands whose tail diverges.
    std::optional<double> band_limit;

    // Throws InvalidParameter unless rel_tol > 0 and band_limit (if set) > 0.
    void validate() const;
};

struct IntegralResult {
    double value{};
    double error_estimate{};
    double l1_norm{};
};

// Throws NonConvergenceError if the error estimate stays above rel_tol * L1 after
// max_depth bisections on some panel.
IntegralResult integrate_half_line(const std::function<double(double)>& f,
                                   std::vector<double> breakpoints, double split,
                                   const QuadratureConfig& cfg);

// Plain finite interval, same convergence contract.
IntegralResult integrate_interval(const std::function<double(double)>& f, double a, double b,
                                  std::vector<double> breakpoints, const QuadratureConfig& cfg);

}  // namespace dqo
