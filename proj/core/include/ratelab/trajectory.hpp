#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ratelab/state.hpp"

namespace ratelab {

/// Why an integration run stopped before reaching the end of its grid.
enum class StopKind {
    norm_exceeds,
    component_exceeds,
    component_below,
    distance_from_path_exceeds,
    predicate,
    diverged,   // state norm passed the divergence threshold
    non_finite  // a stage or state evaluated to NaN/Inf
};

[[nodiscard]] std::string to_string(StopKind kind);

struct StopEvent {
    double time = 0.0;
    StopKind kind = StopKind::predicate;
    bool diverged = false;
};

/// A sampled solution x(t) on a uniform grid, truncated at the first
/// stop event if one fired. times[i] corresponds to states[i]; when a
/// stop event is present it is at the final recorded time.
struct Trajectory {
    std::vector<double> times;
    std::vector<StateVec> states;
    std::optional<StopEvent> stop;

    [[nodiscard]] std::size_t size() const noexcept { return times.size(); }
    [[nodiscard]] double final_time() const { return times.back(); }
    [[nodiscard]] const StateVec& final_state() const { return states.back(); }
    [[nodiscard]] bool stopped() const noexcept { return stop.has_value(); }
    [[nodiscard]] bool diverged() const noexcept { return stop && stop->diverged; }
};

}  // namespace ratelab
