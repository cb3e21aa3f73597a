#pragma once

#include <optional>

#include "ratelab/classification.hpp"
#include "ratelab/integrate.hpp"
#include "ratelab/vector_field.hpp"

namespace ratelab::saddle_node {

/// Saddle-node normal form under a steadily drifting parameter:
///   dx/dt      = (x + lambda)^2 - mu
///   dlambda/dt = r
/// State order is (x, lambda).
struct Params {
    double mu = 0.25;  // must be positive
    double r = 0.0;
    double x0 = 0.0;
    double lambda0 = 0.0;
};

[[nodiscard]] VectorFieldSpec field(const Params& p);

/// Invariant lines lambda = offset - x, present for r <= mu: `attracting`
/// carries offset -sqrt(mu - r), `repelling` +sqrt(mu - r); they coincide
/// at r = mu.
struct InvariantLines {
    double attracting_offset;
    double repelling_offset;
};

[[nodiscard]] std::optional<InvariantLines> invariant_lines(double mu, double r);

/// Exact critical rate as a function of the initial condition:
///   mu - (lambda0 + x0)^2  when -x0 < lambda0 < -x0 + sqrt(mu)
///   mu                     when lambda0 <= -x0
/// Throws std::domain_error ("initial condition above saddle branch") when
/// lambda0 >= -x0 + sqrt(mu).
[[nodiscard]] double critical_rate(const Params& p);

/// Effective tipping radius sqrt(mu)/2 for the linear-model reduction.
[[nodiscard]] double effective_radius(double mu);

/// Runs the system from (x0, lambda0) for a horizon of 200/sqrt(mu):
/// tips on divergence or on leaving a 10 sqrt(mu) tube around the attracting
/// equilibrium branch, tracks otherwise.
[[nodiscard]] Classification classify(const Params& p);

}  // namespace ratelab::saddle_node
