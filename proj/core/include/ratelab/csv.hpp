#pragma once

#include <string>
#include <vector>

#include "ratelab/trajectory.hpp"

namespace ratelab {

/// Formats a double with 17 significant digits (round-trip exact).
[[nodiscard]] std::string format_full(double v);

/// Writes `t,x1[,x2[,x3]]` rows, one per recorded grid point. Custom column
/// names may replace the defaults (first column is always the time).
void write_trajectory_csv(const Trajectory& traj, const std::string& path,
                          const std::vector<std::string>& columns = {});

/// Writes the `{stop_time, stop_kind}` sidecar; no file is written when the
/// trajectory ran to the end of its grid.
void write_stop_sidecar(const Trajectory& traj, const std::string& path);

}  // namespace ratelab
