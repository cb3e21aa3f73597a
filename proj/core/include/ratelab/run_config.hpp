#pragma once

#include <stdexcept>
#include <string>

namespace ratelab::harness {

/// Malformed or inconsistent configuration; carries a field-level message.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnknownSystemError : public ConfigError {
public:
    explicit UnknownSystemError(const std::string& name)
        : ConfigError("unknown system: " + name) {}
};

struct RunArtifacts {
    std::string trajectory_csv;
    std::string result_json;
    std::string manifest_json;
    std::string stop_json;  // empty when the run reached its horizon
};

/// Executes a JSON run configuration and writes trajectory CSV, result JSON
/// and a manifest (config hash, seed, version) under out_dir. Reruns with the
/// same config and seed produce byte-identical CSVs.
RunArtifacts run_config(const std::string& config_path, const std::string& out_dir);

/// Ensemble entry point: n members over stream indices 0..n-1 of the given
/// stochastic configuration; writes exit_times.csv, exit_report.json and a
/// manifest under out_dir.
struct EnsembleArtifacts {
    std::string exit_times_csv;
    std::string exit_report_json;
    std::string manifest_json;
};

EnsembleArtifacts run_ensemble_config(const std::string& config_path, int n, std::uint64_t seed,
                                      const std::string& out_dir);

/// FNV-1a 64-bit hash of the canonical (key-sorted) JSON dump, printed as hex.
[[nodiscard]] std::string config_hash(const std::string& canonical_json);

}  // namespace ratelab::harness
