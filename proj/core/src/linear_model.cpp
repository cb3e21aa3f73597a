#include "ratelab/linear_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace ratelab::linear_model {

StableMatrix::StableMatrix(Mat2 m) : m_(m) {
    if (!m_.is_stable())
        throw std::invalid_argument("StableMatrix: eigenvalues must have negative real part");
}

StateVec QsePath::derivative(double lambda) const {
    if (dx_tilde_dlambda) return dx_tilde_dlambda(lambda);
    const double h = 1e-5 * std::max(1.0, std::abs(lambda));
    const StateVec f2 = x_tilde(lambda + 2.0 * h);
    const StateVec f1 = x_tilde(lambda + h);
    const StateVec b1 = x_tilde(lambda - h);
    const StateVec b2 = x_tilde(lambda - 2.0 * h);
    return (1.0 / (12.0 * h)) * ((-1.0) * f2 + 8.0 * f1 - 8.0 * b1 + b2);
}

LinearTippingSystem::LinearTippingSystem(StableMatrix m, double radius, QsePath p)
    : M(m), R(radius), path(std::move(p)) {
    if (!(R > 0.0)) throw std::invalid_argument("LinearTippingSystem: R must be positive");
    if (path.x_tilde && path.lambda_of_t &&
        path.x_tilde(path.lambda_of_t(0.0)).dim() != M.dim())
        throw std::invalid_argument("LinearTippingSystem: path dimension does not match M");
}

StateVec qse_drift(const LinearTippingSystem& sys, double t) {
    return sys.path.derivative(sys.path.lambda_of_t(t)) * sys.path.dlambda_dt(t);
}

StateVec instantaneous_lag(const LinearTippingSystem& sys, double t) {
    return sys.M.mat().inverse().apply(qse_drift(sys, t));
}

double steady_drift_deviation(const LinearTippingSystem& sys) {
    const StateVec r0 = qse_drift(sys, 0.0);
    const StateVec r1 = qse_drift(sys, 1.0);
    const double scale = std::max({r0.norm(), r1.norm(), 1e-300});
    if ((r1 - r0).norm() > 1e-9 * scale)
        throw std::domain_error("steady_drift_deviation: not steady drift");
    return sys.M.mat().inverse().apply(r0).norm();
}

bool avoid_criterion_steady(const LinearTippingSystem& sys, const StateVec& r) {
    return sys.M.inverse_norm() * r.norm() < sys.R;
}

bool tip_criterion_steady(const LinearTippingSystem& sys, const StateVec& r) {
    return r.norm() / sys.M.norm() > sys.R;
}

DecayEnvelope decay_envelope(const StableMatrix& M) {
    const auto eig = M.mat().eigenvalues();
    const double beta = -std::max(eig[0].real(), eig[1].real());

    double c = M.mat().eigenvector_condition();
    double beta_out = beta;
    if (!std::isfinite(c)) {
        // Defective matrix: shrink the rate by 10% and take the grid supremum
        // of ||exp(M u)|| e^{beta' u}, which is finite once beta' < beta.
        beta_out = 0.9 * beta;
        c = 1.0;
        for (double u = 0.0; u <= 40.0; u += 0.01)
            c = std::max(c, M.mat().exp(u).operator_norm() * std::exp(beta_out * u));
    }
    c = std::max(c, 1.0);

    // Spot-check the bound on a coarse grid; the closed forms above guarantee
    // it up to rounding.
    for (double u = 0.0; u <= 20.0; u += 0.1) {
        if (M.mat().exp(u).operator_norm() > c * std::exp(-beta_out * u) * (1.0 + 1e-9))
            throw std::logic_error("decay_envelope: bound violated on check grid");
    }
    return {c, beta_out};
}

double max_past_drift(const LinearTippingSystem& sys, double t) {
    // Find how far back the drift support reaches (|r| > 1e-12), doubling the
    // window until the tail is quiet, then sample densely.
    double span = 1.0;
    constexpr double kTail = 1e-12;
    while (span < 1e6 && qse_drift(sys, t - span).norm() > kTail) span *= 2.0;

    double r_max = 0.0;
    constexpr int kSamples = 20000;
    for (int i = 0; i <= kSamples; ++i) {
        const double s = t - span + (span * i) / kSamples;
        r_max = std::max(r_max, qse_drift(sys, s).norm());
    }
    return r_max;
}

bool avoid_criterion_general(const LinearTippingSystem& sys, double t) {
    const DecayEnvelope env = decay_envelope(sys.M);
    return (env.c / env.beta) * max_past_drift(sys, t) < sys.R;
}

double natural_timescale(const LinearTippingSystem& sys, double t) {
    const double r = qse_drift(sys, t).norm();
    if (r == 0.0) throw std::domain_error("natural_timescale: zero drift");
    return sys.R / r;
}

LinearModelRun simulate_linear_model(const LinearTippingSystem& sys, const StateVec& x0,
                                     const TimeGrid& grid, const IntegrateOptions& opts) {
    if ((x0 - sys.path.position_at(grid.t0)).norm() >= sys.R)
        throw std::invalid_argument("simulate_linear_model: initial state outside tipping radius");

    VectorFieldSpec field{
        x0.dim(),
        [&sys](const StateVec& x, double t) {
            return sys.M.mat().apply(x - sys.path.position_at(t));
        },
        std::nullopt};

    auto stop = StopCondition::distance_from_path_exceeds(
        [&sys](double t) { return sys.path.position_at(t); }, sys.R);

    Trajectory traj = integrate_ode(field, x0, grid, stop, opts);
    std::optional<double> tip;
    if (traj.stop && traj.stop->kind == StopKind::distance_from_path_exceeds)
        tip = traj.stop->time;
    return {std::move(traj), tip};
}

std::string criteria_report_json(const LinearTippingSystem& sys, const StateVec& r, double t) {
    const double avoid_value = sys.M.inverse_norm() * r.norm();
    const double tip_value = r.norm() / sys.M.norm();
    const DecayEnvelope env = decay_envelope(sys.M);
    const double general_value = (env.c / env.beta) * max_past_drift(sys, t);

    nlohmann::json j = nlohmann::json::array();
    j.push_back({{"criterion", "avoid_steady"},
                 {"value", avoid_value},
                 {"threshold_R", sys.R},
                 {"verdict", avoid_value < sys.R ? "avoids" : "no_conclusion"}});
    j.push_back({{"criterion", "tip_steady"},
                 {"value", tip_value},
                 {"threshold_R", sys.R},
                 {"verdict", tip_value > sys.R ? "tips" : "no_conclusion"}});
    j.push_back({{"criterion", "avoid_general"},
                 {"value", general_value},
                 {"threshold_R", sys.R},
                 {"verdict", general_value < sys.R ? "avoids" : "no_conclusion"}});
    return j.dump(2);
}

}  // namespace ratelab::linear_model
