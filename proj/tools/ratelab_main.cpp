// ratelab: tipping-mechanism simulations, critical-rate bisection, sweeps
// and reproducible ensembles over the registered systems.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ratelab/critical_rate.hpp"
#include "ratelab/csv.hpp"
#include "ratelab/run_config.hpp"
#include "ratelab/sweep.hpp"
#include "ratelab/systems.hpp"
#include "ratelab/version.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ratelab;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitClassification = 2;

harness::Params parse_kv_params(const std::vector<std::string>& kvs) {
    harness::Params out;
    for (const auto& kv : kvs) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0)
            throw harness::ConfigError("--param expects name=value, got '" + kv + "'");
        try {
            out[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
        } catch (const std::exception&) {
            throw harness::ConfigError("--param value is not a number in '" + kv + "'");
        }
    }
    return out;
}

int cmd_critrate(const std::string& system, double lo, double hi, double tol,
                 const std::vector<std::string>& kvs, int monotone_points,
                 const std::string& out_dir) {
    const harness::Params fixed = parse_kv_params(kvs);
    const auto classify = harness::make_classifier(system, fixed);

    harness::FindOptions opts;
    opts.rel_tol = tol;
    opts.analytic_value = harness::analytic_critical_rate(system, fixed);
    opts.monotone_check_points = monotone_points;
    const auto res = harness::find_critical_rate(classify, lo, hi, opts);

    json j{{"system", system},
           {"rate_lo", res.rate_lo},
           {"rate_hi", res.rate_hi},
           {"rate_mid", res.rate_mid},
           {"iterations", res.iterations},
           {"lo_outcome", to_string(res.lo_outcome)},
           {"hi_outcome", to_string(res.hi_outcome)},
           {"rel_tol", res.rel_tol}};
    if (res.analytic_value) j["analytic_value"] = *res.analytic_value;
    json params = json::object();
    for (const auto& [k, v] : fixed) params[k] = v;
    j["params"] = params;

    fs::create_directories(out_dir);
    const std::string path = (fs::path(out_dir) / (system + "_critrate.json")).string();
    std::ofstream out(path);
    out << j.dump(2) << "\n";

    std::cout << system << ": critical rate " << format_full(res.rate_mid) << " in ["
              << format_full(res.rate_lo) << ", " << format_full(res.rate_hi) << "] after "
              << res.iterations << " iterations";
    if (res.analytic_value) std::cout << " (analytic " << format_full(*res.analytic_value) << ")";
    std::cout << "\n  -> " << path << "\n";
    return kExitOk;
}

int cmd_sweep(const std::string& spec_path, const std::string& out_dir) {
    std::ifstream in(spec_path);
    if (!in) throw harness::ConfigError("cannot read sweep spec: " + spec_path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw harness::ConfigError(std::string("sweep spec parse error: ") + e.what());
    }

    harness::SweepSpec spec;
    if (!j.contains("system") || !j["system"].is_string())
        throw harness::ConfigError("sweep spec needs a string 'system'");
    spec.system = j["system"].get<std::string>();
    if (!j.contains("param") || !j["param"].is_string())
        throw harness::ConfigError("sweep spec needs a string 'param'");
    spec.param = j["param"].get<std::string>();

    if (j.contains("values")) {
        for (const auto& v : j["values"]) {
            if (!v.is_number()) throw harness::ConfigError("sweep values must be numbers");
            spec.values.push_back(v.get<double>());
        }
    } else if (j.contains("from") && j.contains("to") && j.contains("step")) {
        const double from = j["from"].get<double>();
        const double to = j["to"].get<double>();
        const double step = j["step"].get<double>();
        if (!(step > 0.0) || !(to > from))
            throw harness::ConfigError("sweep range needs to > from and step > 0");
        for (double v = from; v <= to + 0.5 * step; v += step) spec.values.push_back(v);
    } else {
        throw harness::ConfigError("sweep spec needs 'values' or from/to/step");
    }

    if (j.contains("fixed")) {
        for (const auto& [k, v] : j["fixed"].items()) {
            if (!v.is_number()) throw harness::ConfigError("sweep fixed values must be numbers");
            spec.fixed[k] = v.get<double>();
        }
    }
    if (j.contains("outputs")) {
        for (const auto& o : j["outputs"]) spec.outputs.push_back(o.get<std::string>());
    }

    const harness::SweepTable table = harness::sweep(spec);
    fs::create_directories(out_dir);
    const std::string stem = fs::path(spec_path).stem().string();
    const std::string path = (fs::path(out_dir) / (stem + "_sweep.csv")).string();
    harness::write_sweep_csv(table, path);
    std::cout << "wrote " << table.rows.size() << " rows -> " << path << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ratelab: B/N/R-tipping simulations and critical-rate experiments"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    std::string out_dir = ".";
    app.add_option("--out", out_dir, "Directory for all file outputs")->capture_default_str();

    // run
    auto* run = app.add_subcommand("run", "Execute a JSON run configuration");
    std::string run_config_path;
    run->add_option("config", run_config_path, "Path to config.json")->required();

    // critrate
    auto* crit = app.add_subcommand("critrate", "Bisect a system's critical rate");
    std::string crit_system;
    std::vector<double> crit_bracket;
    double crit_tol = 1e-3;
    int crit_monotone = 0;
    std::vector<std::string> crit_params;
    crit->add_option("--system", crit_system, "Registered system id")->required();
    crit->add_option("--bracket", crit_bracket, "Bracket LO HI")->expected(2)->required();
    crit->add_option("--tol", crit_tol, "Relative bracket width")->capture_default_str();
    crit->add_option("--param", crit_params, "Fixed parameter name=value (repeatable)");
    crit->add_option("--check-monotone", crit_monotone,
                     "Extra per-side samples verifying the bracket ordering");

    // sweep
    auto* swp = app.add_subcommand("sweep", "Run a parameter sweep from a JSON spec");
    std::string sweep_spec_path;
    swp->add_option("spec", sweep_spec_path, "Path to sweep spec.json")->required();

    // ensemble
    auto* ens = app.add_subcommand("ensemble", "Stochastic ensemble with exit-time report");
    std::string ens_config_path;
    int ens_n = 100;
    std::uint64_t ens_seed = 0;
    ens->add_option("config", ens_config_path, "Path to config.json")->required();
    ens->add_option("-n", ens_n, "Ensemble size")->capture_default_str();
    ens->add_option("--seed", ens_seed, "Base seed")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            const auto artifacts = harness::run_config(run_config_path, out_dir);
            std::cout << "wrote " << artifacts.trajectory_csv << "\n"
                      << "wrote " << artifacts.result_json << "\n"
                      << "wrote " << artifacts.manifest_json << "\n";
            if (!artifacts.stop_json.empty()) std::cout << "wrote " << artifacts.stop_json << "\n";
            return kExitOk;
        }
        if (crit->parsed())
            return cmd_critrate(crit_system, crit_bracket[0], crit_bracket[1], crit_tol,
                                crit_params, crit_monotone, out_dir);
        if (swp->parsed()) return cmd_sweep(sweep_spec_path, out_dir);
        if (ens->parsed()) {
            const auto artifacts =
                harness::run_ensemble_config(ens_config_path, ens_n, ens_seed, out_dir);
            std::cout << "wrote " << artifacts.exit_times_csv << "\n"
                      << "wrote " << artifacts.exit_report_json << "\n"
                      << "wrote " << artifacts.manifest_json << "\n";
            return kExitOk;
        }
    } catch (const harness::BracketInvalidError& e) {
        std::cerr << "classification error: " << e.what() << "\n";
        return kExitClassification;
    } catch (const harness::NonMonotoneError& e) {
        std::cerr << "classification error: " << e.what() << "\n";
        return kExitClassification;
    } catch (const harness::UndecidedError& e) {
        std::cerr << "classification error: " << e.what() << "\n";
        return kExitClassification;
    } catch (const harness::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitOk;
}
