#include "ratelab/integrate.hpp"

#include <atomic>
#include <stdexcept>
#include <thread>

namespace ratelab {

std::string to_string(StopKind kind) {
    switch (kind) {
        case StopKind::norm_exceeds: return "norm_exceeds";
        case StopKind::component_exceeds: return "component_exceeds";
        case StopKind::component_below: return "component_below";
        case StopKind::distance_from_path_exceeds: return "distance_from_path_exceeds";
        case StopKind::predicate: return "predicate";
        case StopKind::diverged: return "diverged";
        case StopKind::non_finite: return "non_finite";
    }
    return "unknown";
}

namespace {

void check_inputs(const VectorFieldSpec& field, const StateVec& x0) {
    if (!field.drift) throw std::invalid_argument("integrate: field has no drift");
    if (field.dimension != x0.dim())
        throw std::invalid_argument("integrate: state dimension does not match field");
    if (!x0.all_finite()) throw std::invalid_argument("integrate: initial state must be finite");
}

/// Stride-aware sampling into a Trajectory. The initial point, the point at a
/// stop event, and the last accepted point are always recorded.
class Recorder {
public:
    Recorder(Trajectory& out, const TimeGrid& grid, int stride)
        : out_(out), stride_(stride > 0 ? stride : 0) {
        const auto n = static_cast<std::size_t>(grid.step_count()) + 1;
        out_.times.reserve(stride_ > 0 ? n / static_cast<std::size_t>(stride_) + 2 : 2);
        out_.states.reserve(out_.times.capacity());
    }

    void initial(double t, const StateVec& x) { push(t, x); }

    void step(long step_index, double t, const StateVec& x) {
        if (stride_ > 0 && step_index % stride_ == 0) push(t, x);
    }

    void last(double t, const StateVec& x) {
        if (!out_.times.empty() && out_.times.back() == t) return;
        push(t, x);
    }

private:
    void push(double t, const StateVec& x) {
        out_.times.push_back(t);
        out_.states.push_back(x);
    }

    Trajectory& out_;
    int stride_;
};

enum class StepOutcome { go_on, ended };

/// Post-step bookkeeping shared by the deterministic and stochastic loops:
/// divergence/non-finite guards first, then the caller's stop condition.
StepOutcome handle_step(Trajectory& traj, Recorder& rec, long step_index, double t_prev,
                        const StateVec& x_prev, double t, const StateVec& x,
                        const std::optional<StopCondition>& stop, const IntegrateOptions& opts) {
    if (!x.all_finite()) {
        // Keep the last finite state as the final sample; never emit NaN/Inf.
        rec.last(t_prev, x_prev);
        traj.stop = StopEvent{t_prev, StopKind::non_finite, true};
        return StepOutcome::ended;
    }
    if (x.norm() > opts.divergence_threshold) {
        rec.last(t, x);
        traj.stop = StopEvent{t, StopKind::diverged, true};
        return StepOutcome::ended;
    }
    if (stop && (*stop)(x, t)) {
        rec.last(t, x);
        traj.stop = StopEvent{t, stop->kind(), false};
        return StepOutcome::ended;
    }
    rec.step(step_index, t, x);
    return StepOutcome::go_on;
}

}  // namespace

Trajectory integrate_ode(const VectorFieldSpec& field, const StateVec& x0, const TimeGrid& grid,
                         const std::optional<StopCondition>& stop, const IntegrateOptions& opts) {
    check_inputs(field, x0);

    Trajectory traj;
    Recorder rec(traj, grid, opts.record_stride);
    StateVec x = x0;
    rec.initial(grid.t0, x);

    const double dt = grid.dt;
    const long n = grid.step_count();
    for (long i = 0; i < n; ++i) {
        const double t = grid.time_at(i);
        const StateVec k1 = field.drift(x, t);
        const StateVec k2 = field.drift(x + (0.5 * dt) * k1, t + 0.5 * dt);
        const StateVec k3 = field.drift(x + (0.5 * dt) * k2, t + 0.5 * dt);
        const StateVec k4 = field.drift(x + dt * k3, t + dt);
        if (!k1.all_finite() || !k2.all_finite() || !k3.all_finite() || !k4.all_finite()) {
            rec.last(t, x);
            traj.stop = StopEvent{t, StopKind::non_finite, true};
            return traj;
        }
        const StateVec next = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const double t_next = grid.time_at(i + 1);
        if (handle_step(traj, rec, i + 1, t, x, t_next, next, stop, opts) == StepOutcome::ended)
            return traj;
        x = next;
        if (i + 1 == n) rec.last(t_next, x);
    }
    return traj;
}

Trajectory integrate_sde(const VectorFieldSpec& field, const StateVec& x0, const TimeGrid& grid,
                         double nu, RandomStream stream, const std::optional<StopCondition>& stop,
                         const IntegrateOptions& opts) {
    check_inputs(field, x0);
    if (!std::isfinite(nu) || nu < 0.0)
        throw std::invalid_argument("integrate_sde: nu must be finite and >= 0");

    Trajectory traj;
    Recorder rec(traj, grid, opts.record_stride);
    GaussianStream gauss(stream);
    StateVec x = x0;
    rec.initial(grid.t0, x);

    const double dt = grid.dt;
    const double noise_scale = std::sqrt(nu * dt);
    const long n = grid.step_count();
    for (long i = 0; i < n; ++i) {
        const double t = grid.time_at(i);
        const StateVec f = field.drift(x, t);
        if (!f.all_finite()) {
            rec.last(t, x);
            traj.stop = StopEvent{t, StopKind::non_finite, true};
            return traj;
        }
        StateVec next = x + dt * f;
        if (nu > 0.0) {
            // One normal per component per step, in component order.
            const StateVec g = field.diffusion ? (*field.diffusion)(x) : StateVec{};
            for (int c = 0; c < x.dim(); ++c) {
                const double amp = field.diffusion ? g[c] : 1.0;
                next[c] += noise_scale * amp * gauss.next();
            }
        }
        const double t_next = grid.time_at(i + 1);
        if (handle_step(traj, rec, i + 1, t, x, t_next, next, stop, opts) == StepOutcome::ended)
            return traj;
        x = next;
        if (i + 1 == n) rec.last(t_next, x);
    }
    return traj;
}

std::vector<Trajectory> run_ensemble(const VectorFieldSpec& field, const StateVec& x0,
                                     const TimeGrid& grid, double nu, std::uint64_t base_seed,
                                     int n, const std::optional<StopCondition>& stop,
                                     const IntegrateOptions& opts, int n_threads) {
    if (n < 1) throw std::invalid_argument("run_ensemble: need n >= 1");

    std::vector<Trajectory> members(static_cast<std::size_t>(n));
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    const int workers = std::min(n_threads > 0 ? n_threads : hw, n);

    auto run_member = [&](int i) {
        members[static_cast<std::size_t>(i)] =
            integrate_sde(field, x0, grid, nu,
                          RandomStream{base_seed, static_cast<std::uint64_t>(i)}, stop, opts);
    };

    if (workers == 1) {
        for (int i = 0; i < n; ++i) run_member(i);
        return members;
    }

    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) run_member(i);
        });
    }
    for (auto& th : pool) th.join();
    return members;
}

}  // namespace ratelab
