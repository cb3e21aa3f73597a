#include "ratelab/saddle_node.hpp"

#include <cmath>
#include <stdexcept>

namespace ratelab::saddle_node {

namespace {
void require_mu(double mu) {
    if (!(mu > 0.0)) throw std::invalid_argument("saddle_node: mu must be positive");
}
}  // namespace

VectorFieldSpec field(const Params& p) {
    require_mu(p.mu);
    const double mu = p.mu, r = p.r;
    return {2,
            [mu, r](const StateVec& s, double) {
                const double y = s[0] + s[1];
                return StateVec{y * y - mu, r};
            },
            std::nullopt};
}

std::optional<InvariantLines> invariant_lines(double mu, double r) {
    require_mu(mu);
    if (r > mu) return std::nullopt;
    const double off = std::sqrt(mu - r);
    return InvariantLines{-off, off};
}

double critical_rate(const Params& p) {
    require_mu(p.mu);
    if (p.lambda0 <= -p.x0) return p.mu;
    if (p.lambda0 < -p.x0 + std::sqrt(p.mu)) {
        const double y0 = p.lambda0 + p.x0;
        return p.mu - y0 * y0;
    }
    throw std::domain_error("saddle_node: initial condition above saddle branch");
}

double effective_radius(double mu) {
    require_mu(mu);
    return std::sqrt(mu) / 2.0;
}

Classification classify(const Params& p) {
    const double root_mu = std::sqrt(p.mu);
    const double horizon = 200.0 / root_mu;
    const double dt = std::min(1e-3, 1e-3 / root_mu);

    // Distance from the attracting equilibrium branch lambda = -sqrt(mu) - x;
    // exceeding 10 sqrt(mu) means the trajectory is gone (it then diverges).
    const double tube = 10.0 * root_mu;
    auto stop = StopCondition::predicate([mu = p.mu, tube](const StateVec& s, double) {
        return std::abs(s[0] + s[1] + std::sqrt(mu)) / std::sqrt(2.0) > tube;
    });

    IntegrateOptions opts;
    opts.record_stride = 0;
    const Trajectory traj =
        integrate_ode(field(p), StateVec{p.x0, p.lambda0}, TimeGrid(0.0, horizon, dt), stop, opts);

    if (traj.stop) return {Outcome::tips, traj.stop->time};
    return {Outcome::tracks, std::nullopt};
}

}  // namespace ratelab::saddle_node
