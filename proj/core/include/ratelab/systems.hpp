#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ratelab/classification.hpp"
#include "ratelab/critical_rate.hpp"
#include "ratelab/trajectory.hpp"

namespace ratelab::harness {

using Params = std::map<std::string, double>;

struct SystemInfo {
    std::string name;
    std::string rate_param;            // the knob critrate bisects
    std::vector<std::string> params;   // accepted fixed parameters
};

[[nodiscard]] const std::vector<SystemInfo>& registered_systems();
[[nodiscard]] bool is_registered(const std::string& system);

/// Deterministic tip-or-track classifier over the system's rate knob, with
/// the remaining parameters fixed. Throws UnknownSystemError / ConfigError
/// (see run_config.hpp) on bad names.
[[nodiscard]] RateClassifier make_classifier(const std::string& system, const Params& fixed);

/// Closed-form critical rate where one exists for the given parameters.
[[nodiscard]] std::optional<double> analytic_critical_rate(const std::string& system,
                                                           const Params& fixed);

struct SystemRun {
    Trajectory trajectory;
    std::vector<std::string> columns;
    std::optional<Classification> classification;
};

/// Plain trajectory run of a registered deterministic system (the climate
/// scenarios run through run_config's scenario path instead).
[[nodiscard]] SystemRun run_system(const std::string& system, const Params& params, double t1,
                                   double dt);

}  // namespace ratelab::harness
