#include <cmath>

#include "doctest.h"

#include "ratelab/hopf.hpp"

using namespace ratelab;
using namespace ratelab::hopf;

namespace {

double cubic_residual(double m, double omega, double r) {
    return ((m - 2.0) * m + omega * omega + 1.0) * m - r * r;
}

}  // namespace

TEST_SUITE("hopf") {

TEST_CASE("field values") {
    SUBCASE("the equilibrium z = lambda is stationary") {
        const auto f = field_steady(2.0, 0.3);
        const StateVec d = f.drift(StateVec{0.7, 0.0, 0.7}, 0.0);
        CHECK(d[0] == doctest::Approx(0.0));
        CHECK(d[1] == doctest::Approx(0.0));
        CHECK(d[2] == doctest::Approx(0.3));
    }
    SUBCASE("the co-moving unit circle has zero radial velocity") {
        const auto f = field_steady(1.5, 0.0);
        for (double th : {0.0, 0.7, 2.1, 4.4}) {
            const double cx = std::cos(th), cy = std::sin(th);
            const StateVec d = f.drift(StateVec{cx, cy, 0.0}, 0.0);
            CHECK(d[0] * cx + d[1] * cy == doctest::Approx(0.0).epsilon(1e-14));
        }
    }
    SUBCASE("real equilibrium magnitude 1/sqrt(3) at the fold rate, omega = 0") {
        const double r = 2.0 / (3.0 * std::sqrt(3.0));
        CHECK(cubic_residual(1.0 / 3.0, 0.0, r) == doctest::Approx(0.0).epsilon(1e-15));
        // The equilibrium sits at w = -1/sqrt(3) (phase pi since m < 1).
        const auto f = field_steady(0.0, r);
        const double w = -1.0 / std::sqrt(3.0);
        const StateVec d = f.drift(StateVec{w, 0.0, 0.0}, 0.0);
        CHECK(d[0] - r == doctest::Approx(0.0).epsilon(1e-12));  // dw/dt = F(w) - r = 0
    }
}

TEST_CASE("co-moving equilibria") {
    SUBCASE("r = 0, omega = 0: the origin and the unit orbit") {
        const auto eq = comoving_equilibria(0.0, 0.0);
        REQUIRE(eq.size() >= 2);
        CHECK(eq.front().w_mag == doctest::Approx(0.0));
        CHECK(eq.back().w_mag == doctest::Approx(1.0).epsilon(1e-7));
    }
    SUBCASE("every root satisfies the cubic with residual below 1e-10") {
        for (double omega : {0.0, 0.3, 0.7, 1.0}) {
            for (double r : {0.05, 0.2, 0.45, 0.9}) {
                for (const auto& e : comoving_equilibria(r, omega)) {
                    CHECK(std::abs(cubic_residual(e.w_mag * e.w_mag, omega, r)) < 1e-10);
                }
            }
        }
    }
    SUBCASE("smallest root at omega 0, r 0.1 is stable and small") {
        const auto eq = comoving_equilibria(0.1, 0.0);
        REQUIRE(!eq.empty());
        CHECK(eq.front().w_mag * eq.front().w_mag < 1.0 / 3.0);
        CHECK(eq.front().stability == Stability::stable);
        // negative real equilibrium: phase +-pi
        CHECK(std::abs(eq.front().theta) == doctest::Approx(3.14159265358979).epsilon(1e-6));
    }
    SUBCASE("two roots merge at m = 1/2 at the codimension-two point") {
        const auto eq = comoving_equilibria(0.5, 0.5);
        bool found = false;
        for (const auto& e : eq)
            if (std::abs(e.w_mag * e.w_mag - 0.5) < 1e-7) found = true;
        CHECK(found);
    }
}

TEST_CASE("fold branches") {
    SUBCASE("omega = 0 gives (1/3, 1)") {
        const auto b = sn_curve_branches(0.0);
        REQUIRE(b);
        CHECK(b->first == doctest::Approx(1.0 / 3.0));
        CHECK(b->second == doctest::Approx(1.0));
    }
    SUBCASE("branches merge at 2/3 when omega^2 = 1/3") {
        const auto b = sn_curve_branches(std::sqrt(1.0 / 3.0));
        REQUIRE(b);
        CHECK(b->first == doctest::Approx(2.0 / 3.0).epsilon(1e-7));
        CHECK(b->second == doctest::Approx(2.0 / 3.0).epsilon(1e-7));
    }
    SUBCASE("no fold for omega = 1") { CHECK(!sn_curve_branches(1.0)); }
}

TEST_CASE("oscillatory instability curve") {
    const auto bt = hopf_curve(0.5);
    REQUIRE(bt);
    CHECK(*bt == doctest::Approx(0.5));
    const auto r1 = hopf_curve(1.0);
    REQUIRE(r1);
    CHECK(*r1 == doctest::Approx(std::sqrt(5.0 / 8.0)));
    CHECK(!hopf_curve(0.0));
}

TEST_CASE("equilibrium stability classification") {
    CHECK(equilibrium_stability(std::sqrt(0.5), 1.0) == Stability::hopf_critical);
    CHECK(equilibrium_stability(0.05, 0.0) == Stability::stable);
    CHECK(equilibrium_stability(1.0, 0.0) == Stability::saddle_node_critical);
    CHECK(equilibrium_stability(0.9, 0.0) == Stability::unstable);
}

TEST_CASE("critical steady rate") {
    SUBCASE("omega = 0 gives 2/(3 sqrt 3)") {
        CHECK(critical_rate_steady(0.0) == doctest::Approx(2.0 / (3.0 * std::sqrt(3.0))).epsilon(1e-12));
    }
    SUBCASE("the two branches agree at omega = 1/2 to 1e-9") {
        const auto branches = sn_curve_branches(0.5);
        REQUIRE(branches);
        const double m = branches->first;
        const double fold_rate = std::sqrt(((m - 2.0) * m + 0.25 + 1.0) * m);
        const double osc_rate = *hopf_curve(0.5);
        CHECK(std::abs(fold_rate - osc_rate) < 1e-9);
        CHECK(critical_rate_steady(0.5) == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("even in omega") {
        for (double omega : {0.2, 0.45, 0.8, 1.1})
            CHECK(critical_rate_steady(-omega) == critical_rate_steady(omega));
    }
    SUBCASE("omega = 1 value") {
        CHECK(critical_rate_steady(1.0) == doctest::Approx(std::sqrt(5.0 / 8.0)).epsilon(1e-12));
    }
}

TEST_CASE("cusp point from the merged fold branches") {
    const auto [r, omega] = cusp_point();
    CHECK(omega == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-12));
    CHECK(r == doctest::Approx(std::pow(2.0 / 3.0, 1.5)).epsilon(1e-12));
}

TEST_CASE("shift path") {
    SUBCASE("midpoint and peak rate at t0") {
        const auto [lam, rate] = shift_path(1.0, 8.0, 0.0, 0.0);
        CHECK(lam == doctest::Approx(4.0));
        CHECK(rate == doctest::Approx(16.0));
    }
    SUBCASE("tails") {
        CHECK(shift_path(1.0, 8.0, 0.0, -10.0).first < 1e-10);
        CHECK(shift_path(1.0, 8.0, 0.0, 10.0).first == doctest::Approx(8.0).epsilon(1e-10));
    }
    SUBCASE("monotone, with the largest rate at t0") {
        double prev_lam = -1.0;
        const auto peak = shift_path(0.7, 3.0, 1.0, 1.0).second;
        for (double t = -5.0; t <= 7.0; t += 0.05) {
            const auto [lam, rate] = shift_path(0.7, 3.0, 1.0, t);
            CHECK(lam > prev_lam);
            CHECK(rate <= peak * (1.0 + 1e-12));
            prev_lam = lam;
        }
    }
}

TEST_CASE("critical-rate diagram covers [-1.2, 1.2] in 241 rows") {
    const auto rows = critical_rate_diagram();
    REQUIRE(rows.size() == 241);
    CHECK(rows.front().omega == doctest::Approx(-1.2));
    CHECK(rows.back().omega == doctest::Approx(1.2));
    CHECK(std::string(rows.front().branch) == "hopf");
    CHECK(std::string(rows[120].branch) == "saddle_node");  // omega = 0
    CHECK(rows.front().r_c == doctest::Approx(std::sqrt((1.0 + 4.0 * 1.44) / 8.0)).epsilon(1e-12));
    // symmetric in omega
    CHECK(rows.front().r_c == doctest::Approx(rows.back().r_c).epsilon(1e-12));
}

TEST_CASE("steady-drift classification straddles the analytic rate") {
    const double rc = critical_rate_steady(1.0);  // ~0.7906
    CHECK(classify_steady(1.0, 0.9 * rc).outcome == Outcome::tracks);
    CHECK(classify_steady(1.0, 1.1 * rc).outcome == Outcome::tips);
}

TEST_CASE("shift classification reproduces the reference pair at omega 5") {
    // With amplitude 8 the peak-rate values 4.76 / 4.8 straddle the threshold.
    const ShiftDrift slow{4.76, 8.0, 0.0};
    const ShiftDrift fast{4.8, 8.0, 0.0};
    CHECK(classify_shift(5.0, slow, 0.4, 0.5, 1e-4).outcome == Outcome::tracks);
    CHECK(classify_shift(5.0, fast, 0.4, 0.5, 1e-4).outcome == Outcome::tips);
}

}  // TEST_SUITE
