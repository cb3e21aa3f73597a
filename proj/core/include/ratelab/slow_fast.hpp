#pragma once

#include <array>
#include <optional>

#include "ratelab/classification.hpp"
#include "ratelab/integrate.hpp"
#include "ratelab/vector_field.hpp"

namespace ratelab::slow_fast {

/// Fast-slow system with a folded critical manifold and a globally attracting
/// equilibrium branch x~(lambda) = (0, -lambda):
///   eps dx1/dt = x2 + lambda + x1 (x1 - 1)
///       dx2/dt = -(x1 + x1^2 + ... + x1^N)      (N odd)
/// forced either steadily (dlambda/dt = r > 0) or by a decaying drift
/// dlambda/dt = rho e^-lambda, i.e. lambda(t) = ln(rho (t - t0) + e^lambda(t0)).
/// State order is (x1, x2, lambda).
struct Params {
    double epsilon = 0.01;  // 0 < eps << 1
    int N = 1;              // odd, positive
    double r = 0.0;         // steady drift rate
};

struct UnsteadyParams {
    double epsilon = 0.01;
    int N = 1;
    double rho = 1.0;     // drift scale, > 0
    double lambda0 = 0.0; // lambda at t = 0
};

[[nodiscard]] double power_sum(double x1, int N);

[[nodiscard]] VectorFieldSpec field_steady(const Params& p);
[[nodiscard]] VectorFieldSpec field_unsteady(const UnsteadyParams& p);

/// x2 on the critical manifold: x2 = -lambda - x1 (x1 - 1). Attracting for
/// x1 < 1/2, repelling for x1 > 1/2, fold at x1 = 1/2.
[[nodiscard]] double critical_manifold_x2(double lambda, double x1);

/// Slow flow projected onto the manifold, state (x1, lambda):
///   dx1/dt = (-r + power_sum(x1)) / (2 x1 - 1),  dlambda/dt = r.
/// Evaluating within 1e-12 of the fold throws std::domain_error ("at fold").
[[nodiscard]] VectorFieldSpec projected_reduced_field(const Params& p);

/// Time-rescaled slow flow (regular at the fold, time reversed on the
/// repelling sheet): dx1/dtau = r - power_sum(x1), dlambda/dtau = -r (2 x1 - 1).
[[nodiscard]] VectorFieldSpec desingularised_field_steady(const Params& p);

/// Same rescaling for the decaying drift:
///   dx1/dtau = rho e^-lambda - power_sum(x1),
///   dlambda/dtau = -rho e^-lambda (2 x1 - 1).
[[nodiscard]] VectorFieldSpec desingularised_field_unsteady(const UnsteadyParams& p);

/// Critical steady rate in the singular limit: sum_{n=1..N} 2^-n.
[[nodiscard]] double critical_rate_steady(int N);

/// Saddle of the desingularised decaying-drift flow, located on the fold.
/// p = sum 2^-n, q = sum n 2^-n; w is the associated direction
/// (-q/p + sqrt(2 + (q/p)^2), 1).
struct FoldedSaddle {
    double x1_F = 0.5;
    double lambda_F;
    double p;
    double q;
    std::array<double, 2> w;
};

[[nodiscard]] FoldedSaddle folded_saddle(int N, double rho);

/// Closed-form estimate of the critical drift scale for an initial condition
/// (x1_0, lambda_0) on the attracting sheet:
///   rho_c ~= p exp(lambda_0 + (1/2 - x1_0) / w1).
/// Throws std::domain_error ("on repelling sheet") when x1_0 > 1/2.
[[nodiscard]] double rho_c_approx(int N, double x1_0, double lambda_0);

/// Full-system tip-or-track run (step eps/20). Tips once the fast variable
/// crosses the fold moving outward and the state subsequently diverges.
/// Tracking means staying bounded for the whole horizon (steady drift, where
/// the tracking state keeps a finite offset from the equilibrium branch) or
/// ending within 0.05 of the branch (decaying drift).
[[nodiscard]] Classification classify_steady(const Params& p, const StateVec& x0,
                                             double horizon = 100.0);
[[nodiscard]] Classification classify_unsteady(const UnsteadyParams& p, const StateVec& x0,
                                               double horizon = 100.0);

}  // namespace ratelab::slow_fast
