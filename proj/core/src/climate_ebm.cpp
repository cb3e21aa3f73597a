#include "ratelab/climate_ebm.hpp"

#include <cmath>
#include <stdexcept>

#include "ratelab/critical_rate.hpp"
#include "ratelab/stop_condition.hpp"
#include "ratelab/vector_field.hpp"

namespace ratelab::ebm {

namespace {
/// Temperature below which the state is considered fallen to the ice-covered
/// branch (tip for every deterministic scenario).
constexpr double kIceThresholdK = 200.0;
}  // namespace

DerivedGroups derived_groups(const Constants& k, const AlbedoParams& ap, double mu) {
    const double es = k.e_SA * k.sigma;
    return {es / k.c, mu * k.I0 * ap.b2 / (4.0 * es), -mu * k.I0 * (1.0 - ap.a2) / (4.0 * es)};
}

double albedo(const AlbedoParams& ap, double T) { return ap.a2 - ap.b2 * T * T; }

RadiationTerms radiation_terms(const Constants& k, const AlbedoParams& ap, double mu, double T) {
    return {0.25 * mu * k.I0 * (1.0 - albedo(ap, T)), k.e_SA * k.sigma * T * T * T * T};
}

double rate_si(const Constants& k, const AlbedoParams& ap, double mu, double T) {
    const DerivedGroups g = derived_groups(k, ap, mu);
    const double T2 = T * T;
    return g.a * (-(T2 * T2) + g.b_mu * T2 - g.d_mu);
}

std::optional<std::pair<double, double>> equilibria(const Constants& k, const AlbedoParams& ap,
                                                    double mu) {
    const DerivedGroups g = derived_groups(k, ap, mu);
    const double disc = g.b_mu * g.b_mu - 4.0 * g.d_mu;
    if (disc < 0.0) return std::nullopt;
    const double s = std::sqrt(disc);
    return std::make_pair(std::sqrt((g.b_mu - s) / 2.0), std::sqrt((g.b_mu + s) / 2.0));
}

double mu_critical(const Constants& k, const AlbedoParams& ap) {
    if (!(ap.a2 > 1.0)) throw std::invalid_argument("mu_critical: a2 must exceed 1");
    const DerivedGroups g = derived_groups(k, ap, 1.0);
    return 4.0 * g.d_mu / (g.b_mu * g.b_mu);
}

RPathPoint scenario_R_path(const RShiftScenario& sc, double lambda) {
    const Constants k{};
    const double es = k.e_SA * k.sigma;
    const AlbedoParams init{sc.a2_init, sc.b2_init};
    const DerivedGroups g0 = derived_groups(k, init, sc.mu);
    const double disc0 = g0.b_mu * g0.b_mu - 4.0 * g0.d_mu;

    const double b2 = (1.0 - lambda) * sc.b2_init + lambda * sc.b2_final;
    const double b_mu = sc.mu * k.I0 * b2 / (4.0 * es);
    // Hold the discriminant at its initial value: d_mu = (b_mu^2 - disc0)/4,
    // then invert the d_mu group for a2.
    const double d_mu = (b_mu * b_mu - disc0) / 4.0;
    const double a2 = 1.0 + 4.0 * es * d_mu / (sc.mu * k.I0);
    return {b2, a2, sc.rho * lambda * (1.0 - lambda)};
}

namespace {

ScenarioRun run_static(const StaticScenario& sc, const ScenarioOptions& opts) {
    const Constants k{};
    const AlbedoParams ap{sc.a2, sc.b2};
    const double years = kModelYearSeconds * opts.time_scale;
    const VectorFieldSpec field{
        1, [&, years](const StateVec& s, double) { return StateVec{years * rate_si(k, ap, sc.mu, s[0])}; },
        std::nullopt};

    IntegrateOptions iopts;
    iopts.record_stride = opts.record_stride;
    auto stop = StopCondition::component_below(0, kIceThresholdK);
    Trajectory traj = integrate_ode(field, StateVec{sc.T_init},
                                    TimeGrid(0.0, opts.horizon_years, opts.dt_years), stop, iopts);
    Classification cl = traj.stop ? Classification{Outcome::tips, traj.stop->time}
                                  : Classification{Outcome::tracks, std::nullopt};
    return {std::move(traj), cl, {"t_years", "T_kelvin"}};
}

ScenarioRun run_r_shift(const RShiftScenario& sc, const ScenarioOptions& opts) {
    const Constants k{};
    const double years = kModelYearSeconds * opts.time_scale;
    // State (T, lambda).
    const VectorFieldSpec field{
        2,
        [&, years](const StateVec& s, double) {
            const RPathPoint pt = scenario_R_path(sc, s[1]);
            const AlbedoParams ap{pt.a2, pt.b2};
            return StateVec{years * rate_si(k, ap, sc.mu, s[0]), pt.dlambda_dt};
        },
        std::nullopt};

    IntegrateOptions iopts;
    iopts.record_stride = opts.record_stride;
    auto stop = StopCondition::component_below(0, kIceThresholdK);
    Trajectory traj = integrate_ode(field, StateVec{sc.T_init, sc.lambda_init},
                                    TimeGrid(0.0, opts.horizon_years, opts.dt_years), stop, iopts);
    Classification cl = traj.stop ? Classification{Outcome::tips, traj.stop->time}
                                  : Classification{Outcome::tracks, std::nullopt};
    return {std::move(traj), cl, {"t_years", "T_kelvin", "lambda"}};
}

ScenarioRun run_n_noise(const NNoiseScenario& sc, const ScenarioOptions& opts,
                        std::uint64_t seed) {
    const Constants k{};
    const AlbedoParams ap{sc.a2, sc.b2};
    const double years = kModelYearSeconds * opts.time_scale;
    double T0;
    if (sc.T_init) {
        T0 = *sc.T_init;
    } else {
        const auto eq = equilibria(k, ap, sc.mu);
        if (!eq) throw std::domain_error("N-noise scenario: no equilibrium at these parameters");
        T0 = eq->second;
    }

    const VectorFieldSpec field{
        1, [&, years](const StateVec& s, double) { return StateVec{years * rate_si(k, ap, sc.mu, s[0])}; },
        std::nullopt};

    IntegrateOptions iopts;
    iopts.record_stride = opts.record_stride;
    auto stop = StopCondition::component_below(0, kIceThresholdK);
    Trajectory traj =
        integrate_sde(field, StateVec{T0}, TimeGrid(0.0, opts.horizon_years, opts.dt_years),
                      sc.nu, RandomStream{seed, 0}, stop, iopts);
    Classification cl = traj.stop ? Classification{Outcome::tips, traj.stop->time}
                                  : Classification{Outcome::tracks, std::nullopt};
    return {std::move(traj), cl, {"t_years", "T_kelvin"}};
}

ScenarioRun run_b_ramp(const BRampScenario& sc, const ScenarioOptions& opts) {
    const Constants k{};
    const AlbedoParams ap{sc.a2, sc.b2};
    const double years = kModelYearSeconds * opts.time_scale;
    double T0;
    if (sc.T_init) {
        T0 = *sc.T_init;
    } else {
        const auto eq = equilibria(k, ap, sc.mu_init);
        if (!eq) throw std::domain_error("B-ramp scenario: no equilibrium at mu_init");
        T0 = eq->second;
    }

    // State (T, mu); the run ends at mu = 0.5 or on a tip.
    const VectorFieldSpec field{
        2,
        [&, years](const StateVec& s, double) {
            return StateVec{years * rate_si(k, ap, s[1], s[0]), sc.mu_rate};
        },
        std::nullopt};

    auto stop = StopCondition::predicate([](const StateVec& s, double) {
        return s[0] < kIceThresholdK || s[1] <= 0.5;
    });

    IntegrateOptions iopts;
    iopts.record_stride = opts.record_stride;
    const double horizon =
        std::min(opts.horizon_years, (sc.mu_init - 0.5) / std::abs(sc.mu_rate) + 1.0);
    Trajectory traj = integrate_ode(field, StateVec{T0, sc.mu_init},
                                    TimeGrid(0.0, horizon, opts.dt_years), stop, iopts);

    Classification cl{Outcome::tracks, std::nullopt};
    if (traj.stop && (traj.diverged() || traj.final_state()[0] < kIceThresholdK))
        cl = {Outcome::tips, traj.stop->time};
    return {std::move(traj), cl, {"t_years", "T_kelvin", "mu"}};
}

}  // namespace

ScenarioRun run_scenario(const Scenario& sc, const ScenarioOptions& opts, std::uint64_t seed) {
    return std::visit(
        [&](const auto& s) -> ScenarioRun {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, StaticScenario>) return run_static(s, opts);
            else if constexpr (std::is_same_v<S, RShiftScenario>) return run_r_shift(s, opts);
            else if constexpr (std::is_same_v<S, NNoiseScenario>) return run_n_noise(s, opts, seed);
            else return run_b_ramp(s, opts);
        },
        sc);
}

CriticalRhoResult empirical_rho_c(const RShiftScenario& base, double rho_lo, double rho_hi,
                                  const ScenarioOptions& opts) {
    auto classify = [&](double rho) {
        RShiftScenario sc = base;
        sc.rho = rho;
        return run_scenario(sc, opts).classification;
    };
    harness::FindOptions fopts;
    fopts.rel_tol = 1e-3;
    const auto res = harness::find_critical_rate(classify, rho_lo, rho_hi, fopts);
    return {res.rate_lo, res.rate_hi, res.rate_mid, res.iterations};
}

ExitTimeStats exit_time_stats(const NNoiseScenario& sc, int n, double horizon_years,
                              std::uint64_t base_seed, double dt_years, double time_scale) {
    if (n < 1) throw std::invalid_argument("exit_time_stats: need n >= 1");
    const Constants k{};
    const AlbedoParams ap{sc.a2, sc.b2};
    const auto eq = equilibria(k, ap, sc.mu);
    if (!eq) throw std::domain_error("exit_time_stats: no equilibria at these parameters");
    const double T_minus = eq->first;
    const double T0 = sc.T_init ? *sc.T_init : eq->second;

    const double years = kModelYearSeconds * time_scale;
    const VectorFieldSpec field{
        1, [&, years](const StateVec& s, double) { return StateVec{years * rate_si(k, ap, sc.mu, s[0])}; },
        std::nullopt};

    // Exit = first grid time below the potential barrier T_minus.
    auto stop = StopCondition::component_below(0, T_minus);
    IntegrateOptions iopts;
    iopts.record_stride = 0;

    const auto members = run_ensemble(field, StateVec{T0}, TimeGrid(0.0, horizon_years, dt_years),
                                      sc.nu, base_seed, n, stop, iopts);

    ExitTimeStats stats{{}, 0.0, 0.0, n};
    stats.times.reserve(members.size());
    double sum = 0.0;
    int exited = 0;
    for (const auto& m : members) {
        if (m.stop) {
            stats.times.emplace_back(m.stop->time);
            sum += m.stop->time;
            ++exited;
        } else {
            stats.times.emplace_back(std::nullopt);
        }
    }
    stats.fraction_tipped = static_cast<double>(exited) / n;
    stats.mean = exited == 0 ? std::nan("") : sum / exited;
    return stats;
}

}  // namespace ratelab::ebm
