// Acceptance checks, one per criterion. Prints one PASS/FAIL line per criterion.
//   acceptance                  run all
//   acceptance --criterion N    run criterion N only (exit 1 on FAIL)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dqo/cli.hpp"
#include "dqo/drude_parameters.hpp"
#include "dqo/errors.hpp"
#include "dqo/integration.hpp"
#include "dqo/kernels.hpp"
#include "dqo/matsubara.hpp"
#include "dqo/normal_modes.hpp"
#include "dqo/quadrature.hpp"
#include "dqo/reference_tables.hpp"
#include "dqo/spectral.hpp"

using namespace dqo;

namespace {

struct Outcome {
    bool pass{true};
    std::string detail;
};

class Notes {
public:
    void fail(const std::string& s) {
        pass_ = false;
        add("FAILED " + s);
    }
    void add(const std::string& s) {
        if (!text_.empty()) text_ += "; ";
        text_ += s;
    }
    void require(bool ok, const std::string& s) {
        if (ok) add(s);
        else fail(s);
    }
    Outcome done() const { return {pass_, text_}; }

private:
    bool pass_{true};
    std::string text_;
};

std::string fmt(const char* f, double a) {
    char buf[96];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string fmt(const char* f, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

TruncationConfig terms(std::size_t n) {
    TruncationConfig t;
    t.terms = n;
    return t;
}

const SystemSpec unit{1.0, 1.0, 0.0};

// ---- 1, 2: reference tables at N = 10^4 ----

Outcome table_reproduction(int table, double tol, double runtime_limit) {
    const auto t0 = std::chrono::steady_clock::now();
    const SystemSpec sys{1.0, 1.0, table == 2 ? 2.5 : 0.0};
    const auto bath = BathSpec::drude(1.0, 10.0);
    const auto poles = invert_drude(sys, bath);
    const auto m = magneto_poles(poles, sys.omega_c);
    const auto rows = reference_table(table);
    Notes n;
    double worst[3] = {0, 0, 0};
    std::string misses;
    for (const auto& r : rows) {
        const auto st = ThermalState::from_alpha(sys, r.alpha);
        double v[3];
        if (table == 1) {
            v[0] = mean_energy_1d(sys, bath, st).beta_energy;
            v[1] = internal_energy_1d(sys, poles, st).beta_energy;
            v[2] = gibbs_energy_1d(sys, bath, st).beta_energy;
        } else {
            v[0] = mean_energy_3d(sys, bath, st).beta_energy;
            v[1] = internal_energy_3d(sys, poles, m, st).beta_energy;
            v[2] = gibbs_energy_3d(sys, bath, st).beta_energy;
        }
        const double ref[3] = {r.E, r.U, r.Egibbs};
        const char* name[3] = {"E", "U", "Eg"};
        for (int k = 0; k < 3; ++k) {
            const double d = v[k] - ref[k];
            worst[k] = std::max(worst[k], std::abs(d));
            if (!(std::abs(d) <= tol)) misses += std::string(" ") + name[k] + fmt("@%g:%+.2e", r.alpha, d);
        }
    }
    const double secs = seconds_since(t0);
    n.add(fmt("max|dE|=%.2e max|dU|=%.2e", worst[0], worst[1]) + fmt(" max|dEg|=%.2e", worst[2]));
    if (!misses.empty()) n.fail("cells over " + fmt("%g:", tol) + misses);
    n.require(secs < runtime_limit, fmt("runtime %.3f s", secs));
    return n.done();
}

Outcome c1() { return table_reproduction(1, 2e-5, 1.0); }
Outcome c2() { return table_reproduction(2, 2e-4, 1.0); }

// ---- 3: series (N = 10^5, extrapolated) against quadrature ----

Outcome c3() {
    const auto t0 = std::chrono::steady_clock::now();
    constexpr int sets = 60;
    std::mt19937_64 rng(314159);
    std::uniform_real_distribution<double> g(0.1, 2.0), cut(5.0, 100.0), wc(0.0, 5.0), al(0.2, 5.0);
    struct Case {
        SystemSpec sys;
        BathSpec bath;
        double alpha;
        double worst{};
        std::string error;
    };
    std::vector<Case> cases;
    for (int i = 0; i < sets; ++i) {
        const double gg = g(rng), cc = cut(rng), ww = wc(rng), aa = al(rng);
        cases.push_back({SystemSpec{1.0, 1.0, ww}, BathSpec::drude(gg, cc), aa});
    }
    kernels::parallel::for_each_index(cases.size(), [&](std::size_t i) {
        auto& c = cases[i];
        try {
            TruncationConfig t = terms(100000);
            t.parallel = false;
            const SystemSpec flat{c.sys.omega0, c.sys.mass, 0.0};
            const auto st = ThermalState::from_alpha(flat, c.alpha);
            const auto poles = invert_drude(flat, c.bath);
            const auto m = magneto_poles(poles, c.sys.omega_c);
            const double d[4] = {
                rel(mean_energy_1d(flat, c.bath, st, t).extrapolated,
                    mean_energy_1d_quad(flat, c.bath, st)),
                rel(internal_energy_1d(flat, poles, st, t).extrapolated,
                    internal_energy_1d_quad(flat, poles, st)),
                rel(mean_energy_3d(c.sys, c.bath, st, t).extrapolated,
                    mean_energy_3d_quad(c.sys, c.bath, st)),
                rel(internal_energy_3d(c.sys, poles, m, st, t).extrapolated,
                    internal_energy_3d_quad(c.sys, poles, m, st))};
            c.worst = *std::max_element(d, d + 4);
        } catch (const std::exception& e) {
            c.error = e.what();
            c.worst = INFINITY;
        }
    });
    Notes n;
    double worst = 0.0;
    int bad = 0;
    for (const auto& c : cases) {
        worst = std::max(worst, c.worst);
        if (!(c.worst < 1e-6)) {
            ++bad;
            if (!c.error.empty()) n.add("error: " + c.error);
        }
    }
    const double secs = seconds_since(t0);
    n.require(bad == 0, fmt("%g sets, max rel diff %.2e", sets, worst) + fmt(" (%g over 1e-6)", bad));
    n.require(secs < 30.0, fmt("runtime %.2f s", secs));
    return n.done();
}

// ---- 4: normalisation and positivity ----

double norm_of(const std::function<double(double)>& f, const SystemSpec& sys, const BathSpec& bath) {
    QuadratureConfig q;
    q.rel_tol = 1e-11;
    return integrate_half_line(f, model_features(sys, bath), default_split(sys, bath), q).value;
}

Outcome c4() {
    constexpr int sets = 24;
    std::mt19937_64 rng(2718);
    std::uniform_real_distribution<double> g(0.1, 2.0), cut(5.0, 100.0), wc(0.0, 5.0);
    const auto grid = log_grid(1e-4, 1e4, 2001);
    double worst_norm = 0.0, most_negative = 0.0;
    for (int i = 0; i < sets; ++i) {
        const SystemSpec sys{1.0, 1.0, wc(rng)};
        const SystemSpec flat{1.0, 1.0, 0.0};
        const auto bath = BathSpec::drude(g(rng), cut(rng));
        const auto p1 = invert_drude(flat, bath);
        const auto p3 = invert_drude(sys, bath);
        const auto m = magneto_poles(p3, sys.omega_c);
        const std::vector<std::function<double(double)>> d1{
            [&](double w) { return p_E_1d(flat, bath, w); },
            [&](double w) { return p_U_1d(flat, p1, w); },
            [&](double w) { return p_k_1d(flat, bath, w); },
            [&](double w) { return p_p_1d(flat, bath, w); }};
        const std::vector<std::function<double(double)>> d3{
            [&](double w) { return p_E_3d(sys, bath, w); },
            [&](double w) { return p_U_3d(sys, p3, m, w); },
            [&](double w) { return p_k_3d(sys, bath, w); },
            [&](double w) { return p_p_3d(sys, bath, w); }};
        for (const auto& f : d1) {
            worst_norm = std::max(worst_norm, std::abs(norm_of(f, flat, bath) - 1.0));
            for (double w : grid) most_negative = std::min(most_negative, f(w));
        }
        for (const auto& f : d3) {
            worst_norm = std::max(worst_norm, std::abs(norm_of(f, sys, bath) - 1.0));
            for (double w : grid) most_negative = std::min(most_negative, f(w));
        }
    }
    Notes n;
    n.require(worst_norm < 1e-8, fmt("%g sets x 8 densities, max |norm - 1| = %.2e", sets, worst_norm));
    n.require(most_negative >= -1e-12, fmt("min density %.2e", most_negative));
    return n.done();
}

// ---- 5: Ohmic P_E = P_U ----

Outcome c5() {
    Notes n;
    double worst = 0.0, worst_int = 0.0;
    for (double g : {0.05, 0.5, 1.0, 3.0}) {
        const auto o = BathSpec::ohmic(g);
        for (double w : log_grid(1e-4, 1e4, 2001)) {
            worst = std::max(worst, std::abs(p_E_1d(unit, o, w) - p_U_1d(unit, o, w)));
        }
        for (double alpha : {0.5, 2.0}) {
            QuadratureConfig q;
            q.band_limit = 1e3;
            const auto st = ThermalState::from_alpha(unit, alpha);
            worst_int = std::max(worst_int, std::abs(internal_energy_1d_quad(unit, o, st, q) -
                                                     mean_energy_1d_quad(unit, o, st, q)));
        }
    }
    n.require(worst < 1e-12, fmt("max |P_E - P_U| = %.2e", worst));
    n.require(worst_int < 1e-9, fmt("max |U_quad - E_quad| = %.2e (band limit 1e3)", worst_int));
    return n.done();
}

// ---- 6: limits ----

Outcome c6() {
    Notes n;
    const auto bath = BathSpec::drude(1.0, 10.0);

    // (a) classical
    double dev1 = 0.0, dev3 = 0.0;
    {
        const auto st = ThermalState::from_alpha(unit, 1e-4);
        const auto p = invert_drude(unit, bath);
        for (double v : {mean_energy_1d(unit, bath, st).beta_energy,
                         internal_energy_1d(unit, p, st).beta_energy,
                         gibbs_energy_1d(unit, bath, st).beta_energy}) {
            dev1 = std::max(dev1, std::abs(v - 1.0));
        }
        for (double wc : {0.0, 2.5, 5.0}) {
            const SystemSpec sys{1.0, 1.0, wc};
            const auto m = magneto_poles(p, wc);
            for (double v : {mean_energy_3d(sys, bath, st).beta_energy,
                             internal_energy_3d(sys, p, m, st).beta_energy,
                             gibbs_energy_3d(sys, bath, st).beta_energy}) {
                dev3 = std::max(dev3, std::abs(v - 3.0));
            }
        }
    }
    n.require(dev1 < 1e-3 && dev3 < 3e-3, fmt("(a) alpha=1e-4: max|X-1| = %.2e, max|X-3| = %.2e", dev1, dev3));

    // (b) weak coupling
    double weak = 0.0;
    {
        const auto weakbath = BathSpec::drude(1e-6, 10.0);
        const auto p = invert_drude(unit, weakbath);
        const auto m = magneto_poles(p, 0.0);
        for (double alpha : {0.1, 0.5, 2.0, 5.0, 7.5}) {
            const auto st = ThermalState::from_alpha(unit, alpha);
            const double ref = weak_coupling_energy(alpha);
            const double v1[3] = {mean_energy_1d(unit, weakbath, st).extrapolated,
                                  internal_energy_1d(unit, p, st).extrapolated,
                                  gibbs_energy_1d(unit, weakbath, st).extrapolated};
            const double v3[3] = {mean_energy_3d(unit, weakbath, st).extrapolated,
                                  internal_energy_3d(unit, p, m, st).extrapolated,
                                  gibbs_energy_3d(unit, weakbath, st).extrapolated};
            for (int k = 0; k < 3; ++k) {
                weak = std::max(weak, std::abs(v1[k] - ref));
                weak = std::max(weak, std::abs(v3[k] - 3.0 * ref));
            }
        }
    }
    n.require(weak < 1e-4, fmt("(b) gamma=1e-6: max dev from weak-coupling energy %.2e", weak));

    // (c) large cutoff. Truncation must reach well past omega_cut, so take the limit.
    double gap = 0.0;
    {
        const auto big = BathSpec::drude(1.0, 1e4);
        for (double alpha : {0.5, 2.0}) {
            const auto st = ThermalState::from_alpha(unit, alpha);
            const double E = mean_energy_1d(unit, big, st, terms(4000000)).extrapolated;
            const double G = gibbs_energy_1d(unit, big, st, terms(4000000)).extrapolated;
            gap = std::max(gap, std::abs(G - E));
        }
    }
    n.require(gap < 1e-3, fmt("(c) omega_cut=1e4: max |Eg - E| = %.3e", gap));
    return n.done();
}

// ---- 7: Drude inversion round trip ----

Outcome c7() {
    std::mt19937_64 rng(161803);
    std::uniform_real_distribution<double> lw(std::log(0.1), std::log(10.0)),
        lg(std::log(1e-3), std::log(10.0)), lc(std::log(2.0), std::log(1e3));
    double fwd = 0.0, ident = 0.0;
    int under = 0;
    for (int i = 0; i < 1000; ++i) {
        const double w0 = std::exp(lw(rng));
        const double g = std::exp(lg(rng)) * w0;
        const double wc = std::exp(lc(rng)) * w0;
        const auto p = invert_drude(g, w0, wc);
        under += p.underdamped();
        const auto b = forward_map(p);
        fwd = std::max({fwd, rel(b.gamma, g), rel(b.omega0, w0), rel(b.omega_cut, wc)});
        const double O2 = p.Omega0 * p.Omega0;
        ident = std::max({ident, std::abs(p.z_plus + p.z_minus - p.Gamma) / p.Gamma,
                          std::abs(p.z_plus * p.z_minus - O2) / O2,
                          std::abs(p.Omega + p.z_plus + p.z_minus - wc) / wc,
                          std::abs(p.Omega * p.z_plus * p.z_minus - w0 * w0 * wc) / (w0 * w0 * wc)});
    }
    Notes n;
    n.require(fwd < 1e-12, fmt("1000 inputs (%g under-damped), forward map max rel %.2e", under, fwd));
    n.require(ident < 1e-12, fmt("pole identities max rel %.2e", ident));
    return n.done();
}

// ---- 8: normal-mode oracle ----

Outcome c8() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto bath = BathSpec::drude(1.0, 10.0);
    const auto st = ThermalState::from_alpha(unit, 0.5);
    constexpr double target = 1.13288;
    // Fixed spacing 0.25: N = 2000 reaches omega_max = 50 omega_cut.
    const std::vector<std::size_t> sizes{250, 500, 1000, 2000};
    std::vector<double> err(sizes.size());
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const auto d = discretize_bath(bath, 1.0, sizes[i], 0.25 * static_cast<double>(sizes[i]));
        err[i] = std::abs(internal_energy_finite_N(unit, d, st) - target) / target;
    }
    Notes n;
    std::ostringstream s;
    for (std::size_t i = 0; i < sizes.size(); ++i) s << (i ? " " : "") << sizes[i] << ":" << fmt("%.2e", err[i]);
    n.add("rel err " + s.str());
    bool decreasing = true;
    for (std::size_t i = 1; i < err.size(); ++i) decreasing = decreasing && err[i] < err[i - 1];
    n.require(err.back() < 1e-2, "N=2000 within 1%");
    n.require(decreasing, "error decreases with N");
    const double secs = seconds_since(t0);
    n.require(secs < 60.0, fmt("runtime %.2f s", secs));
    return n.done();
}

// ---- 9: peaks ----

Outcome c9() {
    const auto bath = BathSpec::drude(0.5, 10.0);
    const auto grid = log_grid(1e-2, 1e2, 4001);
    Notes n;
    for (double wc : {0.5, 5.0}) {
        const SystemSpec sys{1.0, 1.0, wc};
        const auto e = sample_density(energy_density_3d(sys, bath), grid).peaks;
        const auto u = sample_density(internal_density_3d(sys, bath), grid).peaks;
        const std::size_t want = wc < 1.0 ? 1 : 3;
        std::ostringstream s;
        s << "omega_c=" << wc << ": P_E peaks";
        for (const auto& p : e) s << ' ' << fmt("%.4g", p.omega);
        s << ", P_U peaks";
        for (const auto& p : u) s << ' ' << fmt("%.4g", p.omega);
        n.require(e.size() == want && u.size() == want, s.str());
        if (e.size() == u.size()) {
            bool differ = false;
            for (std::size_t i = 0; i < e.size(); ++i) differ = differ || std::abs(e[i].omega - u[i].omega) > 1e-3;
            n.require(differ, "P_E and P_U peak locations differ");
        }
    }
    return n.done();
}

// ---- 10: Ohmic divergence guard ----

Outcome c10() {
    const auto o = BathSpec::ohmic(1.0);
    const auto st = ThermalState::from_alpha(unit, 0.5);
    const SystemSpec field{1.0, 1.0, 2.5};
    Notes n;
    auto diverges = [](const std::function<void()>& f) {
        try {
            f();
        } catch (const DivergenceError&) {
            return true;
        } catch (...) {
            return false;
        }
        return false;
    };
    n.require(diverges([&] { mean_energy_1d(unit, o, st); }) && diverges([&] { gibbs_energy_1d(unit, o, st); }) &&
                  diverges([&] { mean_energy_3d(field, o, st); }) &&
                  diverges([&] { gibbs_energy_3d(field, o, st); }),
              "E and Eg series raise DivergenceError");
    bool no_poles = false;
    try {
        invert_drude(unit, o);
    } catch (const InvalidParameter&) {
        no_poles = true;
    }
    n.require(no_poles, "no pole series for Ohmic U");
    n.require(diverges([&] { internal_energy_1d_quad(unit, o, st); }), "unbounded U integral refused");
    QuadratureConfig q;
    q.band_limit = 1e3;
    const double U = internal_energy_1d_quad(unit, o, st, q);
    n.require(std::isfinite(U) && U > 1.0, fmt("band-limited U_quad = %.6f", U));
    // Same through the command line: the row carries the error, U is filled in.
    std::ostringstream out, err;
    const char* argv[] = {"dqo", "energy", "--bath", "ohmic", "--gamma", "1", "--alpha", "0.5", "--band-limit", "1000"};
    const int code = cli::run(10, argv, out, err);
    const std::string text = out.str();
    n.require(code != 2 && text.find("diverges") != std::string::npos, "CLI row reports the divergence");
    return n.done();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria"};
    int only = 0;
    app.add_option("--criterion", only, "run a single criterion (1-10)")->check(CLI::Range(1, 10));
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<const char*, Outcome (*)()>> all{
        {"reference table 1 reproduction", c1},          {"reference table 2 reproduction", c2},
        {"series vs quadrature", c3},          {"distribution certificates", c4},
        {"Ohmic P_E = P_U", c5},               {"limits", c6},
        {"Drude inversion round trip", c7},    {"normal-mode oracle", c8},
        {"peak structure", c9},                {"Ohmic divergence guard", c10}};
    bool ok = true;
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (only != 0 && static_cast<std::size_t>(only) != i + 1) continue;
        Outcome r;
        try {
            r = all[i].second();
        } catch (const std::exception& e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s criterion %zu (%s): %s\n", r.pass ? "PASS" : "FAIL", i + 1, all[i].first,
                    r.detail.c_str());
        ok = ok && r.pass;
    }
    return ok ? 0 : 1;
}
