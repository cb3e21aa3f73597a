#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"

#include "ratelab/climate_ebm.hpp"
#include "ratelab/critical_rate.hpp"

using namespace ratelab;
using namespace ratelab::ebm;

namespace {

/// Independent equilibrium oracle: scan f for sign changes over [120, 450] K
/// and polish each bracket by bisection. Avoids the quadratic-in-T^2 route
/// used by the implementation.
std::vector<double> roots_by_scan(const Constants& k, const AlbedoParams& ap, double mu) {
    std::vector<double> roots;
    const int n = 33000;
    double prev = rate_si(k, ap, mu, 120.0);
    for (int i = 1; i <= n; ++i) {
        const double T = 120.0 + (450.0 - 120.0) * i / n;
        const double val = rate_si(k, ap, mu, T);
        if (prev * val < 0.0) {
            double lo = 120.0 + (450.0 - 120.0) * (i - 1) / n, hi = T;
            double flo = rate_si(k, ap, mu, lo);
            for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = rate_si(k, ap, mu, mid);
                if (flo * fm <= 0.0) hi = mid;
                else { lo = mid; flo = fm; }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        prev = val;
    }
    return roots;
}

/// Independent fold oracle: bisect mu on the sign of the discriminant.
double mu_critical_by_bisection(const Constants& k, const AlbedoParams& ap) {
    auto disc = [&](double mu) {
        const DerivedGroups g = derived_groups(k, ap, mu);
        return g.b_mu * g.b_mu - 4.0 * g.d_mu;
    };
    double lo = 1e-6, hi = 1.0;
    REQUIRE(disc(lo) < 0.0);
    REQUIRE(disc(hi) > 0.0);
    for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
        const double mid = 0.5 * (lo + hi);
        (disc(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_SUITE("climate_ebm") {

TEST_CASE("albedo") {
    const AlbedoParams ap{};  // a2 = 1.6927, b2 = 1.690e-5
    CHECK(albedo(ap, 0.0) == doctest::Approx(1.6927));
    const double T_unity = std::sqrt((ap.a2 - 1.0) / ap.b2);
    CHECK(albedo(ap, T_unity) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(albedo(ap, 290.0) == doctest::Approx(0.271410).epsilon(1e-5));
}

TEST_CASE("radiation terms") {
    const Constants k{};
    const AlbedoParams ap{};
    SUBCASE("full reflection kills the incoming term") {
        const double T_unity = std::sqrt((ap.a2 - 1.0) / ap.b2);
        CHECK(radiation_terms(k, ap, 1.0, T_unity).down == doctest::Approx(0.0).epsilon(1e-9));
    }
    SUBCASE("no outgoing radiation at absolute zero") {
        CHECK(radiation_terms(k, ap, 1.0, 0.0).up == doctest::Approx(0.0));
    }
    SUBCASE("balance at both equilibria") {
        const auto eq = equilibria(k, ap, 1.0);
        REQUIRE(eq);
        for (double T : {eq->first, eq->second}) {
            const auto rt = radiation_terms(k, ap, 1.0, T);
            CHECK(rt.down == doctest::Approx(rt.up).epsilon(1e-9));
        }
    }
}

TEST_CASE("quartic form agrees with the radiative imbalance to 1e-12 relative") {
    const Constants k{};
    std::mt19937_64 engine(5150);
    std::uniform_real_distribution<double> T_dist(200.0, 320.0), mu_dist(0.5, 1.2),
        a2_dist(1.05, 1.9), b2_dist(0.8e-5, 2.0e-5);
    for (int i = 0; i < 1000; ++i) {
        const double T = T_dist(engine), mu = mu_dist(engine);
        const AlbedoParams ap{a2_dist(engine), b2_dist(engine)};
        const double lhs = k.c * rate_si(k, ap, mu, T);
        const auto rt = radiation_terms(k, ap, mu, T);
        const double rhs = rt.down - rt.up;
        const double scale = std::max(std::abs(lhs), std::abs(rhs));
        REQUIRE(scale > 0.0);
        CHECK(std::abs(lhs - rhs) / scale < 1e-12);
    }
}

TEST_CASE("equilibria") {
    const Constants k{};
    const AlbedoParams ap{};
    SUBCASE("default parameters against the scan oracle") {
        const auto eq = equilibria(k, ap, 1.0);
        REQUIRE(eq);
        const auto roots = roots_by_scan(k, ap, 1.0);
        REQUIRE(roots.size() == 2);
        CHECK(eq->first == doctest::Approx(roots[0]).epsilon(1e-9));
        CHECK(eq->second == doctest::Approx(roots[1]).epsilon(1e-9));
        // frozen reference values
        CHECK(eq->first == doctest::Approx(281.3385889).epsilon(1e-6));
        CHECK(eq->second == doctest::Approx(291.5653766).epsilon(1e-6));
    }
    SUBCASE("rate vanishes at the equilibria and is decreasing at the stable one") {
        const auto eq = equilibria(k, ap, 1.0);
        REQUIRE(eq);
        const DerivedGroups g = derived_groups(k, ap, 1.0);
        const double scale = g.a * std::pow(eq->second, 4);
        CHECK(std::abs(rate_si(k, ap, 1.0, eq->first)) < 1e-9 * scale);
        CHECK(std::abs(rate_si(k, ap, 1.0, eq->second)) < 1e-9 * scale);
        const double h = 1e-4;
        CHECK(rate_si(k, ap, 1.0, eq->second + h) - rate_si(k, ap, 1.0, eq->second - h) < 0.0);
        CHECK(rate_si(k, ap, 1.0, eq->first + h) - rate_si(k, ap, 1.0, eq->first - h) > 0.0);
    }
    SUBCASE("merge at the fold and vanish below it") {
        const double mu_c = mu_critical(k, ap);
        const auto at = equilibria(k, ap, mu_c * (1.0 + 1e-12));
        REQUIRE(at);
        CHECK(at->first == doctest::Approx(at->second).epsilon(1e-4));
        CHECK(!equilibria(k, ap, mu_c * (1.0 - 1e-6)));
    }
    SUBCASE("the gap closes like sqrt(mu - mu_c)") {
        const double mu_c = mu_critical(k, ap);
        auto gap = [&](double mu) {
            const auto eq = equilibria(k, ap, mu);
            REQUIRE(eq);
            return eq->second - eq->first;
        };
        const double g1 = gap(mu_c * (1.0 + 1e-3));
        const double g2 = gap(mu_c * (1.0 + 1e-2));
        const double exponent = std::log(g2 / g1) / std::log(10.0);
        CHECK(exponent > 0.4);
        CHECK(exponent < 0.6);
    }
    SUBCASE("rate is negative for very large T") { CHECK(rate_si(k, ap, 1.0, 1e4) < 0.0); }
}

TEST_CASE("fold location in mu") {
    const Constants k{};
    SUBCASE("default parameters") {
        const AlbedoParams ap{};
        CHECK(mu_critical(k, ap) == doctest::Approx(0.99872621).epsilon(1e-7));
        CHECK(mu_critical(k, ap) == doctest::Approx(mu_critical_by_bisection(k, ap)).epsilon(1e-9));
    }
    SUBCASE("ramp-scenario parameters") {
        const AlbedoParams ap{1.2, 1.04e-5};
        CHECK(mu_critical(k, ap) == doctest::Approx(0.76144403).epsilon(1e-7));
        CHECK(mu_critical(k, ap) == doctest::Approx(mu_critical_by_bisection(k, ap)).epsilon(1e-9));
    }
    SUBCASE("vanishes as a2 drops to 1") {
        CHECK(mu_critical(k, AlbedoParams{1.0 + 1e-6, 1.690e-5}) < 1e-3);
    }
}

TEST_CASE("smooth-shift parameter path") {
    RShiftScenario sc;
    SUBCASE("endpoints match the published table values") {
        const auto p0 = scenario_R_path(sc, 0.0);
        CHECK(p0.b2 == doctest::Approx(1.690e-5));
        CHECK(p0.a2 == doctest::Approx(1.6927).epsilon(1e-10));
        const auto p1 = scenario_R_path(sc, 1.0);
        CHECK(p1.b2 == doctest::Approx(1.8350e-5));
        CHECK(p1.a2 == doctest::Approx(1.81682305).epsilon(1e-6));
        CHECK(p1.a2 == doctest::Approx(1.8168).epsilon(5e-5));
    }
    SUBCASE("the discriminant is constant along the path to 1e-9 relative") {
        const Constants k{};
        const DerivedGroups g0 = derived_groups(k, AlbedoParams{sc.a2_init, sc.b2_init}, sc.mu);
        const double disc0 = g0.b_mu * g0.b_mu - 4.0 * g0.d_mu;
        for (double lam = 0.0; lam <= 1.0; lam += 0.01) {
            const auto pt = scenario_R_path(sc, lam);
            const DerivedGroups g = derived_groups(k, AlbedoParams{pt.a2, pt.b2}, sc.mu);
            const double disc = g.b_mu * g.b_mu - 4.0 * g.d_mu;
            CHECK(std::abs(disc - disc0) / disc0 < 1e-9);
        }
    }
    SUBCASE("logistic rate") {
        CHECK(scenario_R_path(sc, 0.5).dlambda_dt == doctest::Approx(sc.rho * 0.25));
        CHECK(scenario_R_path(sc, 0.0).dlambda_dt == doctest::Approx(0.0));
    }
}

TEST_CASE("static scenario holds the warm equilibrium") {
    const auto eq = equilibria(Constants{}, AlbedoParams{}, 1.0);
    REQUIRE(eq);
    StaticScenario sc;
    sc.T_init = eq->second;
    ScenarioOptions opts;
    opts.horizon_years = 50.0;
    const auto run = run_scenario(sc, opts);
    CHECK(run.classification.outcome == Outcome::tracks);
    CHECK(run.trajectory.final_state()[0] == doctest::Approx(eq->second).epsilon(1e-9));
}

TEST_CASE("smooth shift straddles the reference rates") {
    ScenarioOptions opts;
    opts.record_stride = 0;
    RShiftScenario slow;
    slow.rho = 0.18;
    RShiftScenario fast;
    fast.rho = 0.19;
    CHECK(run_scenario(slow, opts).classification.outcome == Outcome::tracks);
    const auto tipped = run_scenario(fast, opts);
    CHECK(tipped.classification.outcome == Outcome::tips);
    CHECK(tipped.classification.tip_time);
}

TEST_CASE("bisection rejects a bracket that does not straddle") {
    RShiftScenario base;
    ScenarioOptions opts;
    opts.record_stride = 0;
    CHECK_THROWS_AS(empirical_rho_c(base, 0.01, 0.02, opts), harness::BracketInvalidError);
}

TEST_CASE("ramp scenario tips shortly after the fold is crossed") {
    BRampScenario sc;
    ScenarioOptions opts;
    opts.horizon_years = 1500.0;
    opts.dt_years = 0.05;
    opts.record_stride = 0;
    const auto run = run_scenario(sc, opts);
    REQUIRE(run.classification.outcome == Outcome::tips);
    REQUIRE(run.classification.tip_time);
    const double fold_year = (1.0 - mu_critical(Constants{}, AlbedoParams{sc.a2, sc.b2})) /
                             std::abs(sc.mu_rate);
    CHECK(*run.classification.tip_time > fold_year * 0.95);
    CHECK(*run.classification.tip_time < fold_year * 1.10);
}

TEST_CASE("exit-time statistics") {
    SUBCASE("no noise, no exits") {
        NNoiseScenario sc;
        sc.nu = 0.0;
        const auto stats = exit_time_stats(sc, 5, 50.0, 11);
        CHECK(stats.fraction_tipped == 0.0);
        for (const auto& t : stats.times) CHECK(!t);
    }
    SUBCASE("strong noise produces desk-scale exits") {
        NNoiseScenario sc;
        sc.nu = 2.0;
        const auto stats = exit_time_stats(sc, 20, 500.0, 11);
        CHECK(stats.fraction_tipped > 0.5);
        CHECK(stats.mean > 0.0);
        CHECK(static_cast<int>(stats.times.size()) == 20);
    }
}

}  // TEST_SUITE
