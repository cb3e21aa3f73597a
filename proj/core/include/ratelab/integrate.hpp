#pragma once

#include <optional>
#include <vector>

#include "ratelab/rng.hpp"
#include "ratelab/stop_condition.hpp"
#include "ratelab/trajectory.hpp"
#include "ratelab/vector_field.hpp"

namespace ratelab {

struct IntegrateOptions {
    /// Record every k-th grid point (the initial and final points are always
    /// recorded). 0 keeps endpoints only, for classification runs where the
    /// intermediate states are not needed.
    int record_stride = 1;

    /// A state with norm above this is declared diverged and ends the run.
    double divergence_threshold = 1e6;
};

/// Classical fixed-step 4th-order Runge-Kutta. The run is truncated at the
/// first grid time where `stop` holds, where the state norm passes the
/// divergence threshold, or where any stage evaluates non-finite (recorded
/// as a diverged stop event rather than raised).
[[nodiscard]] Trajectory integrate_ode(const VectorFieldSpec& field, const StateVec& x0,
                                       const TimeGrid& grid,
                                       const std::optional<StopCondition>& stop = std::nullopt,
                                       const IntegrateOptions& opts = {});

/// Euler-Maruyama with additive-in-time noise: x_{n+1} = x_n + f dt + g(x_n) sqrt(nu dt) xi_n,
/// one standard normal per state component per step. g defaults to the all-ones
/// vector when the field carries no diffusion term. With nu = 0 the noise term
/// is skipped entirely, so the run reproduces forward Euler bit-for-bit.
[[nodiscard]] Trajectory integrate_sde(const VectorFieldSpec& field, const StateVec& x0,
                                       const TimeGrid& grid, double nu, RandomStream stream,
                                       const std::optional<StopCondition>& stop = std::nullopt,
                                       const IntegrateOptions& opts = {});

/// Independent stochastic realizations; member i runs on stream_index = i.
/// Members may execute in parallel (n_threads = 0 picks the hardware count);
/// results are ordered by stream index regardless of completion order.
[[nodiscard]] std::vector<Trajectory> run_ensemble(const VectorFieldSpec& field, const StateVec& x0,
                                                   const TimeGrid& grid, double nu,
                                                   std::uint64_t base_seed, int n,
                                                   const std::optional<StopCondition>& stop = std::nullopt,
                                                   const IntegrateOptions& opts = {},
                                                   int n_threads = 0);

}  // namespace ratelab
