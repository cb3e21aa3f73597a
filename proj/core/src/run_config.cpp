#include "ratelab/run_config.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "ratelab/classification.hpp"
#include "ratelab/climate_ebm.hpp"
#include "ratelab/csv.hpp"
#include "ratelab/systems.hpp"
#include "ratelab/version.hpp"

namespace ratelab::harness {

namespace fs = std::filesystem;
using nlohmann::json;

std::string config_hash(const std::string& canonical_json) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : canonical_json) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

namespace {

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config: " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
}

double need_number(const json& j, const std::string& field) {
    if (!j.contains(field) || !j[field].is_number())
        throw ConfigError("config field '" + field + "' must be a number");
    return j[field].get<double>();
}

double number_or(const json& j, const std::string& field, double fallback) {
    if (!j.contains(field)) return fallback;
    if (!j[field].is_number()) throw ConfigError("config field '" + field + "' must be a number");
    return j[field].get<double>();
}

Params read_params(const json& j) {
    Params p;
    if (!j.contains("params")) return p;
    if (!j["params"].is_object()) throw ConfigError("config field 'params' must be an object");
    for (const auto& [k, v] : j["params"].items()) {
        if (!v.is_number()) throw ConfigError("parameter '" + k + "' must be a number");
        p[k] = v.get<double>();
    }
    return p;
}

ebm::Scenario read_scenario(const json& j) {
    if (!j.contains("scenario") || !j["scenario"].is_object())
        throw ConfigError("ebm config needs a 'scenario' object");
    const json& s = j["scenario"];
    if (!s.contains("kind") || !s["kind"].is_string())
        throw ConfigError("scenario field 'kind' must be a string");
    const std::string kind = s["kind"].get<std::string>();

    if (kind == "Static") {
        ebm::StaticScenario sc;
        sc.mu = number_or(s, "mu", sc.mu);
        sc.a2 = number_or(s, "a2", sc.a2);
        sc.b2 = number_or(s, "b2", sc.b2);
        sc.T_init = number_or(s, "T_init", sc.T_init);
        return sc;
    }
    if (kind == "R_shift") {
        ebm::RShiftScenario sc;
        sc.rho = need_number(s, "rho");
        sc.b2_init = number_or(s, "b2_init", sc.b2_init);
        sc.b2_final = number_or(s, "b2_final", sc.b2_final);
        sc.a2_init = number_or(s, "a2_init", sc.a2_init);
        sc.lambda_init = number_or(s, "lambda_init", sc.lambda_init);
        sc.T_init = number_or(s, "T_init", sc.T_init);
        sc.mu = number_or(s, "mu", sc.mu);
        return sc;
    }
    if (kind == "N_noise") {
        ebm::NNoiseScenario sc;
        sc.nu = need_number(s, "nu");
        sc.mu = number_or(s, "mu", sc.mu);
        sc.a2 = number_or(s, "a2", sc.a2);
        sc.b2 = number_or(s, "b2", sc.b2);
        if (s.contains("T_init")) sc.T_init = need_number(s, "T_init");
        return sc;
    }
    if (kind == "B_ramp") {
        ebm::BRampScenario sc;
        sc.mu_rate = number_or(s, "mu_rate", sc.mu_rate);
        sc.a2 = number_or(s, "a2", sc.a2);
        sc.b2 = number_or(s, "b2", sc.b2);
        sc.mu_init = number_or(s, "mu_init", sc.mu_init);
        if (s.contains("T_init")) sc.T_init = need_number(s, "T_init");
        return sc;
    }
    throw ConfigError("unknown scenario kind: " + kind);
}

ebm::ScenarioOptions read_scenario_options(const json& j) {
    ebm::ScenarioOptions opts;
    if (!j.contains("options")) return opts;
    const json& o = j["options"];
    opts.horizon_years = number_or(o, "horizon_years", opts.horizon_years);
    opts.dt_years = number_or(o, "dt_years", opts.dt_years);
    opts.time_scale = number_or(o, "time_scale", opts.time_scale);
    opts.record_stride = static_cast<int>(number_or(o, "record_stride", opts.record_stride));
    return opts;
}

json classification_json(const Classification& cl) {
    json j{{"outcome", to_string(cl.outcome)}};
    if (cl.tip_time) j["tip_time"] = *cl.tip_time;
    return j;
}

json stop_json(const Trajectory& traj) {
    json j;
    if (traj.stop) {
        j = json{{"stop_time", traj.stop->time},
                 {"stop_kind", to_string(traj.stop->kind)},
                 {"diverged", traj.stop->diverged}};
    }
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << text;
}

void write_manifest(const std::string& path, const json& config, std::uint64_t seed) {
    json manifest{{"config_hash", config_hash(config.dump())},
                  {"seed", seed},
                  {"ratelab_version", kVersion}};
    write_text(path, manifest.dump(2) + "\n");
}

}  // namespace

RunArtifacts run_config(const std::string& config_path, const std::string& out_dir) {
    const json config = load_json(config_path);
    if (!config.contains("system") || !config["system"].is_string())
        throw ConfigError("config field 'system' must be a string");
    const std::string system = config["system"].get<std::string>();
    const auto seed = static_cast<std::uint64_t>(number_or(config, "seed", 0.0));

    fs::create_directories(out_dir);
    const std::string stem = fs::path(config_path).stem().string();
    const std::string base = (fs::path(out_dir) / stem).string();

    RunArtifacts artifacts;
    artifacts.trajectory_csv = base + "_trajectory.csv";
    artifacts.result_json = base + "_result.json";
    artifacts.manifest_json = base + "_manifest.json";

    json result{{"system", system}};
    Trajectory traj;
    std::vector<std::string> columns;

    if (system == "ebm") {
        const ebm::Scenario scenario = read_scenario(config);
        const ebm::ScenarioOptions opts = read_scenario_options(config);
        ebm::ScenarioRun run = ebm::run_scenario(scenario, opts, seed);
        traj = std::move(run.trajectory);
        columns = run.columns;
        result["classification"] = classification_json(run.classification);

        // First crossing of the unstable equilibrium, when one exists at the
        // run's parameters (the exit time of a noisy run).
        if (std::holds_alternative<ebm::NNoiseScenario>(scenario)) {
            const auto& sc = std::get<ebm::NNoiseScenario>(scenario);
            const auto eq = ebm::equilibria(ebm::Constants{}, ebm::AlbedoParams{sc.a2, sc.b2}, sc.mu);
            if (eq) {
                for (std::size_t i = 0; i < traj.size(); ++i) {
                    if (traj.states[i][0] < eq->first) {
                        result["exit_time_years"] = traj.times[i];
                        break;
                    }
                }
            }
        }
    } else {
        if (!is_registered(system)) throw UnknownSystemError(system);
        if (!config.contains("grid") || !config["grid"].is_object())
            throw ConfigError("config needs a 'grid' object with t1 and dt");
        const json& g = config["grid"];
        const double t1 = need_number(g, "t1");
        const double dt = need_number(g, "dt");
        SystemRun run = run_system(system, read_params(config), t1, dt);
        traj = std::move(run.trajectory);
        columns = run.columns;
        if (run.classification) result["classification"] = classification_json(*run.classification);
    }

    write_trajectory_csv(traj, artifacts.trajectory_csv, columns);
    if (traj.stop) {
        artifacts.stop_json = base + "_stop.json";
        write_stop_sidecar(traj, artifacts.stop_json);
        result["stop"] = stop_json(traj);
    }
    result["final_time"] = traj.final_time();
    json final_state = json::array();
    for (int c = 0; c < traj.final_state().dim(); ++c) final_state.push_back(traj.final_state()[c]);
    result["final_state"] = final_state;

    write_text(artifacts.result_json, result.dump(2) + "\n");
    write_manifest(artifacts.manifest_json, config, seed);
    return artifacts;
}

EnsembleArtifacts run_ensemble_config(const std::string& config_path, int n, std::uint64_t seed,
                                      const std::string& out_dir) {
    const json config = load_json(config_path);
    if (!config.contains("system") || config["system"] != "ebm")
        throw ConfigError("ensemble runs expect an ebm N_noise configuration");
    const ebm::Scenario scenario = read_scenario(config);
    if (!std::holds_alternative<ebm::NNoiseScenario>(scenario))
        throw ConfigError("ensemble runs expect scenario kind N_noise");
    const auto& sc = std::get<ebm::NNoiseScenario>(scenario);
    const ebm::ScenarioOptions opts = read_scenario_options(config);

    const ebm::ExitTimeStats stats =
        ebm::exit_time_stats(sc, n, opts.horizon_years, seed, opts.dt_years, opts.time_scale);

    fs::create_directories(out_dir);
    const std::string stem = fs::path(config_path).stem().string();
    const std::string base = (fs::path(out_dir) / stem).string();

    EnsembleArtifacts artifacts;
    artifacts.exit_times_csv = base + "_exit_times.csv";
    artifacts.exit_report_json = base + "_exit_report.json";
    artifacts.manifest_json = base + "_ensemble_manifest.json";

    std::ostringstream csv;
    csv << "member,exited,exit_time_years\n";
    for (std::size_t i = 0; i < stats.times.size(); ++i) {
        csv << i << "," << (stats.times[i] ? 1 : 0) << ","
            << (stats.times[i] ? format_full(*stats.times[i]) : "") << "\n";
    }
    write_text(artifacts.exit_times_csv, csv.str());

    json report{{"n", stats.n},
                {"nu", sc.nu},
                {"horizon_years", opts.horizon_years},
                {"fraction_tipped", stats.fraction_tipped},
                {"mean_exit_time_years", stats.mean}};
    write_text(artifacts.exit_report_json, report.dump(2) + "\n");
    write_manifest(artifacts.manifest_json, config, seed);
    return artifacts;
}

}  // namespace ratelab::harness
