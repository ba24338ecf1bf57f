// Cross-method verification suite behind `dqo verify`.

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dqo/core_model.hpp"
#include "dqo/drude_parameters.hpp"

namespace dqo {

struct CheckResult {
    std::string check;
    double tolerance{};
    double value{};
    bool pass{};
    bool skipped{};
    std::string reason;  // why a check was skipped or errored
};

struct VerifyConfig {
    SystemSpec sys{};
    BathSpec bath{};
    double alpha{0.5};
    std::size_t terms{100000};
    double quad_tol{1e-10};
    std::size_t normal_modes{1000};
    // Applied to the Drude poles before the pole-based checks; a test hook.
    std::function<void(DrudePoles&)> pole_mutator;
};

std::vector<CheckResult> run_verification(const VerifyConfig& cfg);

bool all_passed(const std::vector<CheckResult>& checks) noexcept;

}  // namespace dqo
