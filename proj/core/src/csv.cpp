#include "ratelab/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace ratelab {

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path,
                          const std::vector<std::string>& columns) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);

    const int dim = traj.states.empty() ? 0 : traj.states.front().dim();
    if (columns.empty()) {
        out << "t";
        for (int c = 0; c < dim; ++c) out << ",x" << (c + 1);
    } else {
        for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
    }
    out << "\n";

    for (std::size_t i = 0; i < traj.size(); ++i) {
        out << format_full(traj.times[i]);
        for (int c = 0; c < dim; ++c) out << "," << format_full(traj.states[i][c]);
        out << "\n";
    }
}

void write_stop_sidecar(const Trajectory& traj, const std::string& path) {
    if (!traj.stop) return;
    nlohmann::json j{{"stop_time", traj.stop->time},
                     {"stop_kind", to_string(traj.stop->kind)},
                     {"diverged", traj.stop->diverged}};
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << j.dump(2) << "\n";
}

}  // namespace ratelab
