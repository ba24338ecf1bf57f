#include "dqo/integration.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "dqo/errors.hpp"

namespace dqo {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

// scale: magnitude of the whole integral so far, so that negligible panels pass.
void add_panel(IntegralResult& acc, const std::function<double(double)>& f, double a, double b,
               const QuadratureConfig& cfg, double scale = 0.0) {
    if (!(b > a)) return;
    double err = 0.0;
    double l1 = 0.0;
    const double v = GK::integrate(f, a, b, cfg.max_depth, cfg.rel_tol, &err, &l1);
    if (!std::isfinite(v)) {
        throw NonConvergenceError("quadrature: non-finite value on [" + std::to_string(a) + ", " +
                                  std::to_string(b) + "]");
    }
    // Boost stops at max_depth without complaint. Converged leaves satisfy
    // err <= tol * (L1 + |coarse estimate|), so a large excess means it ran out of depth.
    if (err > 10.0 * cfg.rel_tol * std::max({l1, std::abs(v), scale}) && err > 1e-300) {
        throw NonConvergenceError("quadrature: error estimate " + std::to_string(err) +
                                  " above tolerance on [" + std::to_string(a) + ", " +
                                  std::to_string(b) + "]");
    }
    acc.value += v;
    acc.error_estimate += err;
    acc.l1_norm += l1;
}

std::vector<double> panel_edges(double a, double b, std::vector<double> breakpoints) {
    // Sliver panels (breakpoints a rounding error apart) never meet a relative tolerance.
    const double gap = 1e-9 * (b - a);
    std::vector<double> edges{a};
    std::sort(breakpoints.begin(), breakpoints.end());
    for (double x : breakpoints) {
        if (std::isfinite(x) && x > edges.back() + gap && x < b - gap) edges.push_back(x);
    }
    edges.push_back(b);
    return edges;
}

}  // namespace

void QuadratureConfig::validate() const {
    if (!(rel_tol > 0.0)) throw InvalidParameter("quadrature: rel_tol must be positive");
    if (band_limit && !(*band_limit > 0.0)) {
        throw InvalidParameter("quadrature: band_limit must be positive");
    }
    if (split_point && !(*split_point > 0.0)) {
        throw InvalidParameter("quadrature: split_point must be positive");
    }
}

IntegralResult integrate_interval(const std::function<double(double)>& f, double a, double b,
                                  std::vector<double> breakpoints, const QuadratureConfig& cfg) {
    cfg.validate();
    IntegralResult r;
    const auto edges = panel_edges(a, b, std::move(breakpoints));
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) add_panel(r, f, edges[i], edges[i + 1], cfg);
    return r;
}

IntegralResult integrate_half_line(const std::function<double(double)>& f,
                                   std::vector<double> breakpoints, double split,
                                   const QuadratureConfig& cfg) {
    cfg.validate();
    if (cfg.band_limit) return integrate_interval(f, 0.0, *cfg.band_limit, breakpoints, cfg);
    if (!(split > 0.0)) throw InvalidParameter("quadrature: split point must be positive");

    IntegralResult r = integrate_interval(f, 0.0, split, std::move(breakpoints), cfg);
    auto tail = [&f](double u) {
        const double w = 1.0 / u;
        return f(w) * w * w;
    };
    // Second panel keeps the map's near-singular end (u -> 0) away from the bulk.
    const double u_hi = 1.0 / split;
    IntegralResult t;
    add_panel(t, tail, 0.5 * u_hi, u_hi, cfg, r.l1_norm);
    add_panel(t, tail, 0.0, 0.5 * u_hi, cfg, r.l1_norm + t.l1_norm);
    r.value += t.value;
    r.error_estimate += t.error_estimate;
    r.l1_norm += t.l1_norm;
    return r;
}

}  // namespace dqo
