#pragma once

#include <functional>
#include <optional>

#include "ratelab/state.hpp"

namespace ratelab {

/// Right-hand side of dx/dt = f(x, t), optionally with a state-dependent
/// diffusion amplitude g(x) for stochastic runs. The drift and diffusion
/// must return vectors of the declared dimension.
struct VectorFieldSpec {
    using Drift = std::function<StateVec(const StateVec&, double)>;
    using Diffusion = std::function<StateVec(const StateVec&)>;

    int dimension = 1;
    Drift drift;
    std::optional<Diffusion> diffusion;
};

}  // namespace ratelab
