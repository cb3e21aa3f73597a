#pragma once

#include <functional>
#include <utility>

#include "ratelab/state.hpp"
#include "ratelab/trajectory.hpp"

namespace ratelab {

/// A tipping/termination test evaluated after every accepted integration step.
/// The stop time reported is the first grid time at which the condition holds;
/// there is no sub-step root polishing.
class StopCondition {
public:
    using Test = std::function<bool(const StateVec&, double)>;
    using Path = std::function<StateVec(double)>;

    [[nodiscard]] static StopCondition norm_exceeds(double threshold) {
        return StopCondition(StopKind::norm_exceeds,
                             [threshold](const StateVec& x, double) { return x.norm() > threshold; });
    }

    [[nodiscard]] static StopCondition component_exceeds(int index, double threshold) {
        return StopCondition(StopKind::component_exceeds,
                             [index, threshold](const StateVec& x, double) { return x[index] > threshold; });
    }

    [[nodiscard]] static StopCondition component_below(int index, double threshold) {
        return StopCondition(StopKind::component_below,
                             [index, threshold](const StateVec& x, double) { return x[index] < threshold; });
    }

    /// Fires once |x - path(t)| exceeds the given radius.
    [[nodiscard]] static StopCondition distance_from_path_exceeds(Path path, double radius) {
        return StopCondition(StopKind::distance_from_path_exceeds,
                             [path = std::move(path), radius](const StateVec& x, double t) {
                                 return (x - path(t)).norm() >= radius;
                             });
    }

    [[nodiscard]] static StopCondition predicate(Test test) {
        return StopCondition(StopKind::predicate, std::move(test));
    }

    [[nodiscard]] bool operator()(const StateVec& x, double t) const { return test_(x, t); }
    [[nodiscard]] StopKind kind() const noexcept { return kind_; }

private:
    StopCondition(StopKind kind, Test test) : kind_(kind), test_(std::move(test)) {}

    StopKind kind_;
    Test test_;
};

}  // namespace ratelab
