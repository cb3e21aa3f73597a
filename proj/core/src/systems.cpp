#include "ratelab/systems.hpp"

#include <cmath>
#include <set>

#include "ratelab/climate_ebm.hpp"
#include "ratelab/hopf.hpp"
#include "ratelab/integrate.hpp"
#include "ratelab/run_config.hpp"
#include "ratelab/saddle_node.hpp"
#include "ratelab/slow_fast.hpp"

namespace ratelab::harness {

namespace {

/// Typo-safe parameter access: every key must be consumed.
class ParamReader {
public:
    ParamReader(const Params& p, std::string context) : params_(p), context_(std::move(context)) {}

    double get(const std::string& key, double fallback) {
        used_.insert(key);
        const auto it = params_.find(key);
        return it == params_.end() ? fallback : it->second;
    }

    int get_int(const std::string& key, int fallback) {
        const double v = get(key, fallback);
        if (v != std::floor(v)) throw ConfigError(context_ + ": parameter '" + key + "' must be an integer");
        return static_cast<int>(v);
    }

    void done() const {
        for (const auto& [k, v] : params_) {
            if (!used_.count(k))
                throw ConfigError(context_ + ": unknown parameter '" + k + "'");
        }
    }

private:
    const Params& params_;
    std::string context_;
    std::set<std::string> used_;
};

saddle_node::Params read_saddle_node(const Params& p, double rate) {
    ParamReader r(p, "saddle_node");
    saddle_node::Params out{r.get("mu", 0.25), rate, r.get("x0", 0.0), r.get("lambda0", 0.0)};
    r.done();
    return out;
}

}  // namespace

const std::vector<SystemInfo>& registered_systems() {
    static const std::vector<SystemInfo> systems = {
        {"saddle_node", "r", {"mu", "x0", "lambda0"}},
        {"hopf_steady", "r", {"omega", "horizon", "dt"}},
        {"hopf_shift", "rho", {"omega", "delta", "x0", "y0", "lambda_init", "horizon", "dt"}},
        {"slowfast_steady", "r", {"epsilon", "N", "x1_0", "x2_0", "lambda0", "horizon"}},
        {"slowfast_unsteady", "rho", {"epsilon", "N", "x1_0", "x2_0", "lambda0", "horizon"}},
        {"ebm_r_shift",
         "rho",
         {"T_init", "lambda_init", "b2_init", "b2_final", "a2_init", "mu", "horizon", "dt",
          "time_scale"}},
        {"ebm_static", "", {"mu", "a2", "b2"}},
    };
    return systems;
}

bool is_registered(const std::string& system) {
    for (const auto& s : registered_systems())
        if (s.name == system) return true;
    return false;
}

RateClassifier make_classifier(const std::string& system, const Params& fixed) {
    if (system == "saddle_node") {
        (void)read_saddle_node(fixed, 0.0);  // surface bad parameter names now
        return [fixed](double rate) { return saddle_node::classify(read_saddle_node(fixed, rate)); };
    }
    if (system == "hopf_steady") {
        ParamReader r(fixed, system);
        const double omega = r.get("omega", 1.0);
        const double horizon = r.get("horizon", 500.0);
        const double dt = r.get("dt", 2e-3);
        r.done();
        return [=](double rate) { return hopf::classify_steady(omega, rate, horizon, dt); };
    }
    if (system == "hopf_shift") {
        ParamReader r(fixed, system);
        const double omega = r.get("omega", 5.0);
        const double delta = r.get("delta", 8.0);
        const double x0 = r.get("x0", 0.4);
        const double y0 = r.get("y0", 0.5);
        const double lambda_init = r.get("lambda_init", 1e-4);
        const double horizon = r.get("horizon", 60.0);
        const double dt = r.get("dt", 1e-3);
        r.done();
        return [=](double rate) {
            return hopf::classify_shift(omega, {rate, delta, 0.0}, x0, y0, lambda_init, horizon, dt);
        };
    }
    if (system == "slowfast_steady" || system == "slowfast_unsteady") {
        ParamReader r(fixed, system);
        const double epsilon = r.get("epsilon", 0.01);
        const int N = r.get_int("N", 1);
        const double x1_0 = r.get("x1_0", 0.0);
        const double x2_0 = r.get("x2_0", 0.0);
        const double lambda0 = r.get("lambda0", 0.0);
        const double horizon = r.get("horizon", 100.0);
        r.done();
        if (system == "slowfast_steady") {
            return [=](double rate) {
                return slow_fast::classify_steady({epsilon, N, rate}, StateVec{x1_0, x2_0, lambda0},
                                                  horizon);
            };
        }
        return [=](double rate) {
            return slow_fast::classify_unsteady({epsilon, N, rate, lambda0}, StateVec{x1_0, x2_0},
                                                horizon);
        };
    }
    if (system == "ebm_r_shift") {
        ParamReader r(fixed, system);
        ebm::RShiftScenario sc;
        sc.T_init = r.get("T_init", sc.T_init);
        sc.lambda_init = r.get("lambda_init", sc.lambda_init);
        sc.b2_init = r.get("b2_init", sc.b2_init);
        sc.b2_final = r.get("b2_final", sc.b2_final);
        sc.a2_init = r.get("a2_init", sc.a2_init);
        sc.mu = r.get("mu", sc.mu);
        ebm::ScenarioOptions opts;
        opts.horizon_years = r.get("horizon", opts.horizon_years);
        opts.dt_years = r.get("dt", opts.dt_years);
        opts.time_scale = r.get("time_scale", opts.time_scale);
        opts.record_stride = 0;
        r.done();
        return [sc, opts](double rate) {
            ebm::RShiftScenario run = sc;
            run.rho = rate;
            return ebm::run_scenario(run, opts).classification;
        };
    }
    if (system == "ebm_static")
        throw ConfigError("ebm_static has no rate knob; use run or sweep");
    throw UnknownSystemError(system);
}

std::optional<double> analytic_critical_rate(const std::string& system, const Params& fixed) {
    if (system == "saddle_node") return saddle_node::critical_rate(read_saddle_node(fixed, 0.0));
    if (system == "hopf_steady") {
        ParamReader r(fixed, system);
        const double omega = r.get("omega", 1.0);
        r.get("horizon", 0.0);
        r.get("dt", 0.0);
        r.done();
        return hopf::critical_rate_steady(omega);
    }
    if (system == "slowfast_steady") {
        ParamReader r(fixed, system);
        const int N = r.get_int("N", 1);
        return slow_fast::critical_rate_steady(N);
    }
    if (system == "slowfast_unsteady") {
        // Closed-form estimate from the folded-saddle direction; known to
        // overshoot the simulated threshold for starts far from the fold.
        ParamReader r(fixed, system);
        const int N = r.get_int("N", 1);
        const double x1_0 = r.get("x1_0", 0.0);
        const double lambda0 = r.get("lambda0", 0.0);
        return slow_fast::rho_c_approx(N, x1_0, lambda0);
    }
    if (!is_registered(system)) throw UnknownSystemError(system);
    return std::nullopt;
}

SystemRun run_system(const std::string& system, const Params& params, double t1, double dt) {
    const TimeGrid grid(0.0, t1, dt);

    if (system == "saddle_node") {
        ParamReader r(params, system);
        const double mu = r.get("mu", 0.25);
        const double rate = r.get("r", 0.0);
        const double x0 = r.get("x0", 0.0);
        const double lambda0 = r.get("lambda0", 0.0);
        r.done();
        const saddle_node::Params p{mu, rate, x0, lambda0};
        Trajectory traj = integrate_ode(saddle_node::field(p), StateVec{x0, lambda0}, grid);
        return {std::move(traj), {}, saddle_node::classify(p)};
    }
    if (system == "hopf_steady" || system == "hopf_shift") {
        ParamReader r(params, system);
        const double omega = r.get("omega", system == "hopf_shift" ? 5.0 : 1.0);
        const double x0 = r.get("x0", system == "hopf_shift" ? 0.4 : 0.0);
        const double y0 = r.get("y0", system == "hopf_shift" ? 0.5 : 0.0);
        const double lambda_init = r.get("lambda_init", system == "hopf_shift" ? 1e-4 : 0.0);
        VectorFieldSpec field;
        std::optional<Classification> cl;
        if (system == "hopf_steady") {
            const double rate = r.get("r", 0.0);
            r.get("horizon", 0.0);
            r.get("dt", 0.0);
            field = hopf::field_steady(omega, rate);
            cl = hopf::classify_steady(omega, rate);
        } else {
            const double rate = r.get("rho", 1.0);
            const double delta = r.get("delta", 8.0);
            field = hopf::field_shift(omega, {rate, delta, 0.0});
            cl = hopf::classify_shift(omega, {rate, delta, 0.0}, x0, y0, lambda_init);
        }
        r.done();
        Trajectory traj = integrate_ode(field, StateVec{x0, y0, lambda_init}, grid);
        return {std::move(traj), {}, cl};
    }
    if (system == "slowfast_steady" || system == "slowfast_unsteady") {
        ParamReader r(params, system);
        const double epsilon = r.get("epsilon", 0.01);
        const int N = r.get_int("N", 1);
        const double x1_0 = r.get("x1_0", 0.0);
        const double x2_0 = r.get("x2_0", 0.0);
        const double lambda0 = r.get("lambda0", 0.0);
        const double horizon = r.get("horizon", 100.0);
        VectorFieldSpec field;
        std::optional<Classification> cl;
        if (system == "slowfast_steady") {
            const double rate = r.get("r", 0.0);
            const slow_fast::Params p{epsilon, N, rate};
            field = slow_fast::field_steady(p);
            cl = slow_fast::classify_steady(p, StateVec{x1_0, x2_0, lambda0}, horizon);
        } else {
            const double rate = r.get("rho", 1.0);
            const slow_fast::UnsteadyParams p{epsilon, N, rate, lambda0};
            field = slow_fast::field_unsteady(p);
            cl = slow_fast::classify_unsteady(p, StateVec{x1_0, x2_0}, horizon);
        }
        r.done();
        Trajectory traj = integrate_ode(field, StateVec{x1_0, x2_0, lambda0}, grid);
        return {std::move(traj), {}, cl};
    }
    if (!is_registered(system)) throw UnknownSystemError(system);
    throw ConfigError(system + ": use the scenario-based run path");
}

}  // namespace ratelab::harness
