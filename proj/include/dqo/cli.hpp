// Command-line front end: energy, distribution, table, peaks and verify.

#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dqo/core_model.hpp"
#include "dqo/drude_parameters.hpp"

namespace dqo::cli {

enum class Command { Energy, Distribution, Table, Peaks, Verify };
enum class Format { Csv, Json };

// Exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_check_failed = 1;
inline constexpr int exit_usage = 2;

struct RunConfig {
    Command command{Command::Energy};
    SystemSpec sys{};
    BathSpec bath{};
    std::vector<double> alphas{0.5};
    std::vector<double> gammas{1.0};
    int dim{1};
    std::size_t terms{10000};
    double tol{1e-9};
    std::optional<double> band_limit;
    bool extrapolate{false};
    bool report{false};  // 6 significant digits instead of 17
    Format format{Format::Csv};
    std::string out_path;  // empty: standard output
    int table{1};
    double omega_min{0.0};
    double omega_max{10.0};
    std::size_t points{1001};
    bool log_grid{false};
    std::function<void(DrudePoles&)> pole_mutator;  // verify only
};

// "lo:hi:steps" -> steps evenly spaced values including both ends. Throws
// InvalidParameter on malformed input.
std::vector<double> parse_range(const std::string& spec);

// %.{digits}g formatting; empty string for NaN.
std::string format_number(double v, int digits);

// Throws InvalidParameter for inconsistent settings.
void validate(const RunConfig& cfg);

int cmd_energy(const RunConfig& cfg, std::ostream& out);
int cmd_table(const RunConfig& cfg, std::ostream& out);
int cmd_distribution(const RunConfig& cfg, std::ostream& out);
int cmd_peaks(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out);

// Parses argv, dispatches, writes to --out or `out`. Errors go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
        std::function<void(DrudePoles&)> pole_mutator = {});

}  // namespace dqo::cli
