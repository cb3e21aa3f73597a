#pragma once

#include <functional>
#include <optional>
#include <string>

#include "ratelab/integrate.hpp"
#include "ratelab/matrix2.hpp"
#include "ratelab/state.hpp"
#include "ratelab/trajectory.hpp"

namespace ratelab::linear_model {

/// Stable linear operator (dimension 1 or 2): every eigenvalue has strictly
/// negative real part, hence invertible. Construction validates.
class StableMatrix {
public:
    explicit StableMatrix(Mat2 m);
    explicit StableMatrix(double scalar) : StableMatrix(Mat2(scalar)) {}
    StableMatrix(double a, double b, double c, double d) : StableMatrix(Mat2(a, b, c, d)) {}

    [[nodiscard]] const Mat2& mat() const noexcept { return m_; }
    [[nodiscard]] int dim() const noexcept { return m_.dim(); }
    [[nodiscard]] double norm() const { return m_.operator_norm(); }
    [[nodiscard]] double inverse_norm() const { return 1.0 / m_.sigma_min(); }

private:
    Mat2 m_;
};

/// Moving-equilibrium path: the equilibrium branch x~(lambda) followed under
/// the forcing lambda(t). When no analytic d x~/d lambda is supplied it is
/// taken by 5-point central difference with h = 1e-5 * max(1, |lambda|).
struct QsePath {
    std::function<StateVec(double)> x_tilde;                        // lambda -> state
    std::function<StateVec(double)> dx_tilde_dlambda;               // optional analytic derivative
    std::function<double(double)> lambda_of_t;
    std::function<double(double)> dlambda_dt;

    [[nodiscard]] StateVec derivative(double lambda) const;
    [[nodiscard]] StateVec position_at(double t) const { return x_tilde(lambda_of_t(t)); }
};

/// Linear relaxation dx/dt = M (x - x~(lambda(t))), declared tipped once
/// |x - x~| reaches the radius R.
struct LinearTippingSystem {
    StableMatrix M;
    double R;
    QsePath path;

    LinearTippingSystem(StableMatrix m, double radius, QsePath p);
};

/// Exponential bound ||exp(M u)|| <= c e^{-beta u}, c >= 1, beta > 0.
struct DecayEnvelope {
    double c;
    double beta;
};

/// Velocity of the moving equilibrium, r(t) = (d x~/d lambda)(d lambda/dt).
[[nodiscard]] StateVec qse_drift(const LinearTippingSystem& sys, double t);

/// Leading-order offset between the state and the moving equilibrium, M^-1 r(t).
[[nodiscard]] StateVec instantaneous_lag(const LinearTippingSystem& sys, double t);

/// Asymptotic deviation |M^-1 r| under steady drift (constant r). Samples the
/// drift at t = 0 and t = 1 and throws std::domain_error ("not steady drift")
/// if they differ by more than 1e-9 relative.
[[nodiscard]] double steady_drift_deviation(const LinearTippingSystem& sys);

/// Sufficient condition to avoid tipping under steady drift: ||M^-1|| |r| < R.
[[nodiscard]] bool avoid_criterion_steady(const LinearTippingSystem& sys, const StateVec& r);

/// Sufficient condition to tip under steady drift: ||M||^-1 |r| > R.
[[nodiscard]] bool tip_criterion_steady(const LinearTippingSystem& sys, const StateVec& r);

/// (c, beta) with beta = -max Re(eig M); c is the eigenvector-matrix condition
/// number for diagonalizable M, otherwise a dense-grid supremum of
/// ||exp(M u)|| e^{beta' u} with beta' = 0.9 beta. The returned envelope is
/// spot-checked on u in {0, 0.1, ..., 20}.
[[nodiscard]] DecayEnvelope decay_envelope(const StableMatrix& M);

/// Sufficient condition to have avoided tipping by time t for general drift:
/// (c/beta) * r_max(t) < R with r_max(t) = sup_{s<=t} |r(s)|. The supremum is
/// sampled over the drift's effective support (|r| > 1e-12), extending
/// backwards from t adaptively.
[[nodiscard]] bool avoid_criterion_general(const LinearTippingSystem& sys, double t);

/// Maximum past drift magnitude used by avoid_criterion_general.
[[nodiscard]] double max_past_drift(const LinearTippingSystem& sys, double t);

/// Natural timescale of equilibrium motion, R / |r(t)|. Throws
/// std::domain_error ("zero drift") when r(t) = 0.
[[nodiscard]] double natural_timescale(const LinearTippingSystem& sys, double t);

struct LinearModelRun {
    Trajectory trajectory;
    std::optional<double> tip_time;  // first grid time with |x - x~| >= R
};

/// Integrates the linear model until the deviation reaches R or the grid
/// ends. Requires |x0 - x~(lambda(t0))| < R ("initial state outside radius").
[[nodiscard]] LinearModelRun simulate_linear_model(const LinearTippingSystem& sys,
                                                   const StateVec& x0, const TimeGrid& grid,
                                                   const IntegrateOptions& opts = {});

/// JSON array of criterion records {criterion, value, threshold_R, verdict}
/// for the steady and general avoid/tip tests at drift r and time t.
[[nodiscard]] std::string criteria_report_json(const LinearTippingSystem& sys, const StateVec& r,
                                               double t);

}  // namespace ratelab::linear_model
