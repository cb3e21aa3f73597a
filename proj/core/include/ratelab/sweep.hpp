#pragma once

#include <string>
#include <vector>

#include "ratelab/systems.hpp"

namespace ratelab::harness {

/// One-parameter sweep over a registered system, emitting the requested
/// per-point outputs (closed-form quantities; use critrate for empirical
/// rates). Values must be nonempty and strictly monotone.
struct SweepSpec {
    std::string system;
    std::string param;
    std::vector<double> values;
    Params fixed;
    std::vector<std::string> outputs;
};

struct SweepTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

[[nodiscard]] SweepTable sweep(const SweepSpec& spec);

void write_sweep_csv(const SweepTable& table, const std::string& path);

}  // namespace ratelab::harness
