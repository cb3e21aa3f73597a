#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ratelab/classification.hpp"
#include "ratelab/integrate.hpp"
#include "ratelab/vector_field.hpp"

namespace ratelab::hopf {

/// Subcritical Hopf normal form dz/dt = F(z - lambda) with
/// F(w) = (-1 + i omega) w + |w|^2 w, expanded over the reals as
/// state (x, y, lambda). The equilibrium z = lambda has the unstable
/// periodic orbit |z - lambda| = 1 as its basin boundary.
///
/// Two forcing laws:
///   steady  dlambda/dt = r
///   shift   a smooth tanh passage of lambda from 0 to delta whose maximum
///           speed dlambda/dt(t0) equals rho_max
struct SteadyDrift {
    double r = 0.0;
};

struct ShiftDrift {
    double rho_max = 1.0;  // peak dlambda/dt, reached at t0
    double delta = 8.0;    // shift amplitude, > 0
    double t0 = 0.0;       // time of fastest change
};

[[nodiscard]] VectorFieldSpec field_steady(double omega, double r);
[[nodiscard]] VectorFieldSpec field_shift(double omega, const ShiftDrift& drift);

enum class Stability { stable, saddle_node_critical, hopf_critical, unstable };

/// Equilibrium of the co-moving system dw/dt = F(w) - r, in polar form.
/// w_mag solves m^3 - 2 m^2 + (omega^2 + 1) m = r^2 in m = |w|^2.
struct CoMovingEquilibrium {
    double w_mag;
    double theta;
    Stability stability;
};

/// All co-moving equilibria (1-3), sorted by magnitude. Roots are found by
/// bracketed bisection over |w|^2 in [0, 4]; each satisfies the cubic with
/// residual below 1e-10.
[[nodiscard]] std::vector<CoMovingEquilibrium> comoving_equilibria(double r, double omega);

/// The two fold branches |w|^2_-/+ = (2/3)(1 -/+ ... ), defined for
/// omega^2 <= 1/3; they merge at 2/3 on the boundary.
[[nodiscard]] std::optional<std::pair<double, double>> sn_curve_branches(double omega);

/// Rate on the oscillatory-instability curve, sqrt((1 + 4 omega^2)/8),
/// defined for omega^2 > 1/4.
[[nodiscard]] std::optional<double> hopf_curve(double omega);

/// Classifies an equilibrium magnitude via the characteristic polynomial
/// s^2 + (2 - 4 m) s + omega^2 + (m - 1)(3 m - 1), m = w_mag^2.
[[nodiscard]] Stability equilibrium_stability(double w_mag, double omega);

/// Critical steady rate r_c(omega): fold branch for omega^2 <= 1/4,
/// oscillatory branch above. Even in omega; continuous at omega^2 = 1/4.
[[nodiscard]] double critical_rate_steady(double omega);

/// Cusp of the fold curve in the (r, omega) plane: ((2/3)^{3/2}, (1/3)^{1/2}).
[[nodiscard]] std::pair<double, double> cusp_point();

/// Smooth parameter passage lambda(t) = delta (tanh(delta rho (t - t0)/2) + 1)/2
/// together with its rate; the maximum rate delta^2 rho / 4 occurs at t0.
/// Here rho is the logistic coefficient in dlambda/dt = rho lambda (delta - lambda).
[[nodiscard]] std::pair<double, double> shift_path(double rho, double delta, double t0, double t);

struct BranchPoint {
    double omega;
    double r_c;
    const char* branch;  // "saddle_node" or "hopf"
};

/// r_c(omega) sampled over omega in [-1.2, 1.2] with step 0.01 (241 rows),
/// for the two-parameter tipping diagram.
[[nodiscard]] std::vector<BranchPoint> critical_rate_diagram();

/// Tip-or-track run of the shifted system from (x0, y0, lambda0). Tips if the
/// state diverges, or if it sits outside the co-moving unit disc once the
/// shift is essentially complete (lambda > delta - 1e-3); transient excursions
/// during the fast passage may be recaptured and do not count.
[[nodiscard]] Classification classify_shift(double omega, const ShiftDrift& drift, double x0,
                                            double y0, double lambda0, double horizon = 60.0,
                                            double dt = 1e-3);

/// Tip-or-track run under steady drift, started at the stable co-moving
/// equilibrium displaced by +1e-3 in both components (a prepared state inside
/// the basin for every subcritical rate). Tips when |z - lambda| reaches 1.
[[nodiscard]] Classification classify_steady(double omega, double r, double horizon = 500.0,
                                             double dt = 2e-3);

}  // namespace ratelab::hopf
