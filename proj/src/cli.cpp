#include "dqo/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dqo/errors.hpp"
#include "dqo/kernels.hpp"
#include "dqo/matsubara.hpp"
#include "dqo/quadrature.hpp"
#include "dqo/reference_tables.hpp"
#include "dqo/spectral.hpp"
#include "dqo/verify.hpp"

namespace dqo::cli {

using nlohmann::json;

namespace {

int digits(const RunConfig& cfg) { return cfg.report ? 6 : 17; }

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

json number_or_null(double v) { return std::isnan(v) ? json(nullptr) : json(v); }

struct EnergyRow {
    double alpha{}, gamma{}, omega_c{};
    double E = std::nan(""), U = std::nan(""), G = std::nan("");
    double tailE = std::nan(""), tailU = std::nan(""), tailG = std::nan("");
    std::string error;
};

void note(std::string& error, const char* what, const std::exception& e) {
    if (!error.empty()) error += "; ";
    error += std::string(what) + ": " + e.what();
}

EnergyRow energy_point(const RunConfig& cfg, double gamma, double alpha) {
    EnergyRow row;
    row.alpha = alpha;
    row.gamma = gamma;
    row.omega_c = cfg.dim == 3 ? cfg.sys.omega_c : 0.0;
    SystemSpec sys = cfg.sys;
    if (cfg.dim == 1) sys.omega_c = 0.0;
    BathSpec bath = cfg.bath;
    bath.gamma = gamma;
    const auto state = ThermalState::from_alpha(sys, alpha);
    TruncationConfig trunc;
    trunc.terms = cfg.terms;
    // Sweep points already run in parallel.
    trunc.parallel = false;
    QuadratureConfig quad;
    quad.rel_tol = cfg.tol;
    quad.band_limit = cfg.band_limit;

    auto take = [&](const EnergyResult& r, double& value, double& tail) {
        value = cfg.extrapolate ? r.extrapolated : r.beta_energy;
        tail = r.tail_estimate;
    };
    try {
        take(cfg.dim == 3 ? mean_energy_3d(sys, bath, state, trunc)
                          : mean_energy_1d(sys, bath, state, trunc),
             row.E, row.tailE);
    } catch (const Error& e) {
        note(row.error, "betaE", e);
    }
    try {
        if (bath.is_drude()) {
            const DrudePoles poles = invert_drude(sys, bath);
            take(cfg.dim == 3 ? internal_energy_3d(sys, poles, magneto_poles(poles, sys.omega_c),
                                                   state, trunc)
                              : internal_energy_1d(sys, poles, state, trunc),
                 row.U, row.tailU);
        } else {
            // Ohmic U exists only as a (band-limited) integral.
            row.U = cfg.dim == 3 ? internal_energy_3d_quad_decomposed(sys, bath, state, quad)
                                 : internal_energy_1d_quad(sys, bath, state, quad);
            row.tailU = 0.0;
        }
    } catch (const Error& e) {
        note(row.error, "betaU", e);
    }
    try {
        take(cfg.dim == 3 ? gibbs_energy_3d(sys, bath, state, trunc)
                          : gibbs_energy_1d(sys, bath, state, trunc),
             row.G, row.tailG);
    } catch (const Error& e) {
        note(row.error, "betaEgibbs", e);
    }
    return row;
}

std::ostream& sink(const RunConfig& cfg, std::ostream& out, std::ofstream& file) {
    if (cfg.out_path.empty()) return out;
    file.open(cfg.out_path);
    if (!file) throw InvalidParameter("cannot open output file '" + cfg.out_path + "'");
    return file;
}

}  // namespace

std::vector<double> parse_range(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw InvalidParameter("range '" + spec + "' is not lo:hi:steps");
    double lo, hi;
    long steps;
    try {
        std::size_t used = 0;
        lo = std::stod(parts[0], &used);
        if (used != parts[0].size()) throw std::invalid_argument("lo");
        hi = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw std::invalid_argument("hi");
        steps = std::stol(parts[2], &used);
        if (used != parts[2].size()) throw std::invalid_argument("steps");
    } catch (const std::logic_error&) {
        throw InvalidParameter("range '" + spec + "' is not lo:hi:steps");
    }
    if (steps < 1 || (steps > 1 && !(hi > lo)) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw InvalidParameter("range '" + spec + "' must have hi > lo and steps >= 1");
    }
    if (steps == 1) return {lo};
    std::vector<double> v(static_cast<std::size_t>(steps));
    for (long i = 0; i < steps; ++i) {
        v[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
    }
    v.back() = hi;
    return v;
}

std::string format_number(double v, int digits) {
    if (std::isnan(v)) return {};
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

void validate(const RunConfig& cfg) {
    cfg.sys.validate();
    if (cfg.dim != 1 && cfg.dim != 3) throw InvalidParameter("--dim must be 1 or 3");
    if (cfg.terms < 1) throw InvalidParameter("--terms must be >= 1");
    if (!(cfg.tol > 0.0)) throw InvalidParameter("--tol must be positive");
    if (cfg.alphas.empty() || cfg.gammas.empty()) throw InvalidParameter("empty sweep range");
    for (double a : cfg.alphas) {
        if (!(a > 0.0)) throw InvalidParameter("alpha must be positive");
    }
    for (double g : cfg.gammas) {
        BathSpec b = cfg.bath;
        b.gamma = g;
        b.validate();
    }
    if (cfg.band_limit && !(*cfg.band_limit > 0.0)) throw InvalidParameter("--band-limit must be positive");
}

int cmd_energy(const RunConfig& cfg, std::ostream& out) {
    validate(cfg);
    const std::size_t na = cfg.alphas.size();
    const std::size_t count = cfg.gammas.size() * na;
    std::vector<EnergyRow> rows(count);
    kernels::parallel::for_each_index(count, [&](std::size_t i) {
        try {
            rows[i] = energy_point(cfg, cfg.gammas[i / na], cfg.alphas[i % na]);
        } catch (const std::exception& e) {
            rows[i].alpha = cfg.alphas[i % na];
            rows[i].gamma = cfg.gammas[i / na];
            rows[i].error = e.what();
        }
    });
    const int d = digits(cfg);
    if (cfg.format == Format::Json) {
        json arr = json::array();
        for (const auto& r : rows) {
            arr.push_back({{"alpha", r.alpha},
                           {"gamma", r.gamma},
                           {"omega_c", r.omega_c},
                           {"betaE", number_or_null(r.E)},
                           {"betaU", number_or_null(r.U)},
                           {"betaEgibbs", number_or_null(r.G)},
                           {"tailE", number_or_null(r.tailE)},
                           {"tailU", number_or_null(r.tailU)},
                           {"tailEgibbs", number_or_null(r.tailG)},
                           {"error", r.error}});
        }
        out << arr.dump(2) << '\n';
        return exit_ok;
    }
    out << "alpha,gamma,omega_c,betaE,betaU,betaEgibbs,tailE,tailU,tailEgibbs,error\n";
    for (const auto& r : rows) {
        out << format_number(r.alpha, d) << ',' << format_number(r.gamma, d) << ','
            << format_number(r.omega_c, d) << ',' << format_number(r.E, d) << ','
            << format_number(r.U, d) << ',' << format_number(r.G, d) << ','
            << format_number(r.tailE, d) << ',' << format_number(r.tailU, d) << ','
            << format_number(r.tailG, d) << ',' << csv_field(r.error) << '\n';
    }
    return exit_ok;
}

int cmd_table(const RunConfig& cfg, std::ostream& out) {
    if (cfg.table != 1 && cfg.table != 2) throw InvalidParameter("--table must be 1 or 2");
    const auto ref = reference_table(cfg.table);
    RunConfig run = cfg;
    run.sys = SystemSpec{1.0, 1.0, cfg.table == 2 ? 2.5 : 0.0};
    run.bath = BathSpec::drude(1.0, 10.0);
    run.gammas = {1.0};
    run.dim = cfg.table == 2 ? 3 : 1;
    run.alphas.clear();
    for (const auto& r : ref) run.alphas.push_back(r.alpha);
    run.extrapolate = false;
    run.band_limit.reset();
    validate(run);

    std::vector<EnergyRow> rows(ref.size());
    kernels::parallel::for_each_index(ref.size(), [&](std::size_t i) {
        try {
            rows[i] = energy_point(run, 1.0, ref[i].alpha);
        } catch (const std::exception& e) {
            rows[i].error = e.what();
        }
    });
    const int d = cfg.report || cfg.format == Format::Csv ? 6 : 17;
    double worst = 0.0;
    json arr = json::array();
    std::ostringstream csv;
    csv << "alpha,betaE,betaU,betaEgibbs,ref_E,ref_U,ref_Egibbs,diff_E,diff_U,diff_Egibbs\n";
    for (std::size_t i = 0; i < ref.size(); ++i) {
        const auto& r = rows[i];
        const double dE = r.E - ref[i].E, dU = r.U - ref[i].U, dG = r.G - ref[i].Egibbs;
        for (double x : {dE, dU, dG}) worst = std::max(worst, std::isnan(x) ? INFINITY : std::abs(x));
        csv << format_number(ref[i].alpha, d) << ',' << format_number(r.E, d) << ','
            << format_number(r.U, d) << ',' << format_number(r.G, d) << ','
            << format_number(ref[i].E, d) << ',' << format_number(ref[i].U, d) << ','
            << format_number(ref[i].Egibbs, d) << ',' << format_number(dE, 3) << ','
            << format_number(dU, 3) << ',' << format_number(dG, 3) << '\n';
        arr.push_back({{"alpha", ref[i].alpha},
                       {"betaE", number_or_null(r.E)},
                       {"betaU", number_or_null(r.U)},
                       {"betaEgibbs", number_or_null(r.G)},
                       {"ref", {ref[i].E, ref[i].U, ref[i].Egibbs}},
                       {"diff", {number_or_null(dE), number_or_null(dU), number_or_null(dG)}}});
    }
    if (cfg.format == Format::Json) {
        out << json{{"table", cfg.table}, {"terms", cfg.terms}, {"rows", arr}, {"max_abs_diff", worst}}
                   .dump(2)
            << '\n';
    } else {
        out << csv.str() << "# terms=" << cfg.terms << " max_abs_diff=" << format_number(worst, 3)
            << '\n';
    }
    return exit_ok;
}

namespace {

struct Distribution {
    std::vector<double> x;  // omega / omega0
    std::vector<double> pe, pu;
    double norm_e{}, norm_u{};
};

Distribution distribution(const RunConfig& cfg) {
    validate(cfg);
    SystemSpec sys = cfg.sys;
    if (cfg.dim == 1) sys.omega_c = 0.0;
    BathSpec bath = cfg.bath;
    bath.gamma = cfg.gammas.front();
    if (!(cfg.points >= 2) || !(cfg.omega_max > cfg.omega_min) || cfg.omega_min < 0.0 ||
        (cfg.log_grid && !(cfg.omega_min > 0.0))) {
        throw InvalidGridError("frequency grid needs 0 <= omega-min < omega-max (> 0 on a log grid) "
                               "and >= 2 points");
    }
    const auto x = cfg.log_grid ? log_grid(cfg.omega_min, cfg.omega_max, cfg.points)
                                : linear_grid(cfg.omega_min, cfg.omega_max, cfg.points);
    std::vector<double> w(x.size());
    std::transform(x.begin(), x.end(), w.begin(), [&](double v) { return v * sys.omega0; });
    QuadratureConfig quad;
    quad.rel_tol = std::min(cfg.tol, 1e-10);
    const Density de = cfg.dim == 3 ? energy_density_3d(sys, bath) : energy_density_1d(sys, bath);
    const Density du = cfg.dim == 3 ? internal_density_3d(sys, bath) : internal_density_1d(sys, bath);
    const auto se = sample_density(de, w, quad);
    const auto su = sample_density(du, w, quad);
    Distribution d;
    d.x = x;
    for (double v : se.values) d.pe.push_back(v * sys.omega0);
    for (double v : su.values) d.pu.push_back(v * sys.omega0);
    d.norm_e = se.norm_estimate;
    d.norm_u = su.norm_estimate;
    return d;
}

}  // namespace

int cmd_distribution(const RunConfig& cfg, std::ostream& out) {
    const Distribution d = distribution(cfg);
    const int dg = digits(cfg);
    if (cfg.format == Format::Json) {
        out << json{{"omega", d.x}, {"p_e", d.pe}, {"p_u", d.pu}, {"norm_p_e", d.norm_e},
                    {"norm_p_u", d.norm_u}}
                   .dump(2)
            << '\n';
        return exit_ok;
    }
    out << "omega,p_e,p_u\n";
    for (std::size_t i = 0; i < d.x.size(); ++i) {
        out << format_number(d.x[i], dg) << ',' << format_number(d.pe[i], dg) << ','
            << format_number(d.pu[i], dg) << '\n';
    }
    out << "# norm_p_e=" << format_number(d.norm_e, dg) << " norm_p_u=" << format_number(d.norm_u, dg)
        << '\n';
    return exit_ok;
}

int cmd_peaks(const RunConfig& cfg, std::ostream& out) {
    validate(cfg);
    SystemSpec sys = cfg.sys;
    if (cfg.dim == 1) sys.omega_c = 0.0;
    BathSpec bath = cfg.bath;
    bath.gamma = cfg.gammas.front();
    if (!(cfg.omega_min > 0.0) || !(cfg.omega_max > cfg.omega_min) || cfg.points < 3) {
        throw InvalidGridError("peak search needs 0 < omega-min < omega-max and >= 3 points");
    }
    const auto w = log_grid(cfg.omega_min * sys.omega0, cfg.omega_max * sys.omega0, cfg.points);
    QuadratureConfig quad;
    quad.rel_tol = std::min(cfg.tol, 1e-10);
    const Density de = cfg.dim == 3 ? energy_density_3d(sys, bath) : energy_density_1d(sys, bath);
    const Density du = cfg.dim == 3 ? internal_density_3d(sys, bath) : internal_density_1d(sys, bath);
    const auto se = sample_density(de, w, quad);
    const auto su = sample_density(du, w, quad);
    const int dg = digits(cfg);
    if (cfg.format == Format::Json) {
        auto list = [&](const SpectralSample& s) {
            json a = json::array();
            for (const auto& p : s.peaks) a.push_back({{"omega", p.omega / sys.omega0}, {"density", p.density * sys.omega0}});
            return a;
        };
        out << json{{"p_e", list(se)}, {"p_u", list(su)}}.dump(2) << '\n';
        return exit_ok;
    }
    out << "density,omega,value\n";
    for (const auto* s : {&se, &su}) {
        for (const auto& p : s->peaks) {
            out << (s == &se ? "p_e" : "p_u") << ',' << format_number(p.omega / sys.omega0, dg) << ','
                << format_number(p.density * sys.omega0, dg) << '\n';
        }
    }
    return exit_ok;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    validate(cfg);
    VerifyConfig v;
    v.sys = cfg.sys;
    v.bath = cfg.bath;
    v.bath.gamma = cfg.gammas.front();
    v.alpha = cfg.alphas.front();
    v.terms = std::max<std::size_t>(cfg.terms, 100000);
    v.quad_tol = std::min(cfg.tol, 1e-10);
    v.pole_mutator = cfg.pole_mutator;
    const auto checks = run_verification(v);
    json arr = json::array();
    for (const auto& c : checks) {
        json item{{"check", c.check}, {"tolerance", c.tolerance}, {"value", number_or_null(c.value)},
                  {"pass", c.pass}};
        if (c.skipped) item["skipped"] = true;
        if (!c.reason.empty()) item["reason"] = c.reason;
        arr.push_back(item);
    }
    const bool ok = all_passed(checks);
    out << json{{"checks", arr}, {"all_pass", ok}}.dump(2) << '\n';
    return ok ? exit_ok : exit_check_failed;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
        std::function<void(DrudePoles&)> pole_mutator) {
    CLI::App app{"Thermal energies of a damped quantum oscillator"};
    app.require_subcommand(1);
    RunConfig cfg;
    cfg.pole_mutator = std::move(pole_mutator);
    double alpha = 0.5, gamma = 1.0;
    std::string alpha_range, gamma_range, bath_kind = "drude", format = "csv";
    std::optional<double> band_limit;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--alpha", alpha, "omega0 / T");
        sub->add_option("--alpha-range", alpha_range, "lo:hi:steps sweep of alpha");
        sub->add_option("--gamma", gamma, "friction strength");
        sub->add_option("--gamma-range", gamma_range, "lo:hi:steps sweep of gamma");
        sub->add_option("--omega0", cfg.sys.omega0, "trap frequency");
        sub->add_option("--mass", cfg.sys.mass, "oscillator mass");
        sub->add_option("--omega-cut", cfg.bath.omega_cut, "Drude cutoff");
        sub->add_option("--omega-c", cfg.sys.omega_c, "cyclotron frequency (3D)");
        sub->add_option("--bath", bath_kind, "drude or ohmic")->check(CLI::IsMember({"drude", "ohmic"}));
        sub->add_option("--dim", cfg.dim, "1 or 3");
        sub->add_option("--terms", cfg.terms, "Matsubara terms");
        sub->add_option("--tol", cfg.tol, "quadrature relative tolerance");
        sub->add_option("--band-limit", band_limit, "integrate only up to this frequency");
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", cfg.out_path, "output file");
        sub->add_flag("--report", cfg.report, "6 significant digits");
    };
    auto* energy = app.add_subcommand("energy", "beta E, beta U, beta Egibbs over a sweep");
    common(energy);
    energy->add_flag("--extrapolate", cfg.extrapolate, "report the extrapolated series limit");
    auto* table = app.add_subcommand("table", "reproduce a reference table");
    common(table);
    table->add_option("--table", cfg.table, "1 or 2");
    auto* dist = app.add_subcommand("distribution", "P_E and P_U on a grid");
    common(dist);
    auto* peaks = app.add_subcommand("peaks", "most probable frequencies");
    common(peaks);
    auto* verify = app.add_subcommand("verify", "cross-method checks");
    common(verify);
    for (auto* sub : {dist, peaks}) {
        sub->add_option("--omega-min", cfg.omega_min, "grid start (units of omega0)");
        sub->add_option("--omega-max", cfg.omega_max, "grid end (units of omega0)");
        sub->add_option("--points", cfg.points, "grid points");
        sub->add_flag("--log", cfg.log_grid, "logarithmic grid");
    }
    peaks->get_option("--omega-min")->default_val(1e-2);
    peaks->get_option("--omega-max")->default_val(1e2);
    peaks->get_option("--points")->default_val(4001);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }

    try {
        cfg.alphas = alpha_range.empty() ? std::vector<double>{alpha} : parse_range(alpha_range);
        cfg.gammas = gamma_range.empty() ? std::vector<double>{gamma} : parse_range(gamma_range);
        cfg.bath.kind = bath_kind == "ohmic" ? BathKind::Ohmic : BathKind::Drude;
        cfg.bath.gamma = cfg.gammas.front();
        cfg.format = format == "json" ? Format::Json : Format::Csv;
        cfg.band_limit = band_limit;
        if (table->parsed()) cfg.command = Command::Table;
        else if (dist->parsed()) cfg.command = Command::Distribution;
        else if (peaks->parsed()) cfg.command = Command::Peaks;
        else if (verify->parsed()) cfg.command = Command::Verify;
        else cfg.command = Command::Energy;

        std::ofstream file;
        std::ostream& o = sink(cfg, out, file);
        switch (cfg.command) {
            case Command::Energy: return cmd_energy(cfg, o);
            case Command::Table: return cmd_table(cfg, o);
            case Command::Distribution: return cmd_distribution(cfg, o);
            case Command::Peaks: return cmd_peaks(cfg, o);
            case Command::Verify: return cmd_verify(cfg, o);
        }
    } catch (const InvalidParameter& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const InvalidGridError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_check_failed;
    }
    return exit_usage;
}

}  // namespace dqo::cli
