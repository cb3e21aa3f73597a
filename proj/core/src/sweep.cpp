#include "ratelab/sweep.hpp"

#include <cmath>
#include <fstream>

#include "ratelab/climate_ebm.hpp"
#include "ratelab/csv.hpp"
#include "ratelab/hopf.hpp"
#include "ratelab/run_config.hpp"
#include "ratelab/saddle_node.hpp"

namespace ratelab::harness {

namespace {

void validate(const SweepSpec& spec) {
    if (!is_registered(spec.system)) throw UnknownSystemError(spec.system);
    if (spec.values.empty()) throw ConfigError("sweep: values must be nonempty");
    if (spec.values.size() > 1) {
        const bool increasing = spec.values[1] > spec.values[0];
        for (std::size_t i = 1; i < spec.values.size(); ++i) {
            const bool step_up = spec.values[i] > spec.values[i - 1];
            if (spec.values[i] == spec.values[i - 1] || step_up != increasing)
                throw ConfigError("sweep: values must be strictly monotone");
        }
    }
}

std::string output_cell(const SweepSpec& spec, const std::string& output, const Params& at) {
    if (output == "r_c_analytic") {
        const auto rc = analytic_critical_rate(spec.system, at);
        if (!rc) throw ConfigError("sweep: no analytic critical rate for " + spec.system);
        return format_full(*rc);
    }
    if (spec.system == "hopf_steady" && output == "branch_kind") {
        const double omega = at.count("omega") ? at.at("omega") : 0.0;
        return omega * omega <= 0.25 ? "saddle_node" : "hopf";
    }
    if (spec.system == "saddle_node" && output == "effective_radius") {
        const double mu = at.count("mu") ? at.at("mu") : 0.25;
        return format_full(saddle_node::effective_radius(mu));
    }
    if (spec.system == "ebm_static") {
        const double mu = at.count("mu") ? at.at("mu") : 1.0;
        ebm::AlbedoParams ap;
        if (at.count("a2")) ap.a2 = at.at("a2");
        if (at.count("b2")) ap.b2 = at.at("b2");
        if (output == "T_minus" || output == "T_plus") {
            const auto eq = ebm::equilibria(ebm::Constants{}, ap, mu);
            if (!eq) return "nan";
            return format_full(output == "T_minus" ? eq->first : eq->second);
        }
        if (output == "mu_critical")
            return format_full(ebm::mu_critical(ebm::Constants{}, ap));
    }
    throw ConfigError("sweep: unknown output '" + output + "' for system " + spec.system);
}

}  // namespace

SweepTable sweep(const SweepSpec& spec) {
    validate(spec);

    SweepTable table;
    table.columns.push_back(spec.param);
    for (const auto& out : spec.outputs) table.columns.push_back(out);
    if (spec.outputs.empty()) return table;  // header-only

    for (double v : spec.values) {
        Params at = spec.fixed;
        at[spec.param] = v;
        std::vector<std::string> row;
        row.push_back(format_full(v));
        for (const auto& out : spec.outputs) row.push_back(output_cell(spec, out, at));
        table.rows.push_back(std::move(row));
    }
    return table;
}

void write_sweep_csv(const SweepTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        out << (c ? "," : "") << table.columns[c];
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
        out << "\n";
    }
}

}  // namespace ratelab::harness
