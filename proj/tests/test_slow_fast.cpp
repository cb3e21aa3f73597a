#include <cmath>
#include <random>

#include "doctest.h"

#include "ratelab/matrix2.hpp"
#include "ratelab/slow_fast.hpp"

using namespace ratelab;
using namespace ratelab::slow_fast;

TEST_SUITE("slow_fast") {

TEST_CASE("power sum") {
    CHECK(power_sum(0.5, 1) == doctest::Approx(0.5));
    CHECK(power_sum(0.5, 3) == doctest::Approx(0.875));
    CHECK(power_sum(2.0, 3) == doctest::Approx(2.0 + 4.0 + 8.0));
}

TEST_CASE("full field") {
    const Params p{0.01, 1, 0.2};
    const auto f = field_steady(p);
    SUBCASE("the equilibrium branch (0, -lambda) is stationary in (x1, x2)") {
        for (double lam : {-1.0, 0.0, 2.5}) {
            const StateVec d = f.drift(StateVec{0.0, -lam, lam}, 0.0);
            CHECK(d[0] == doctest::Approx(0.0));
            CHECK(d[1] == doctest::Approx(0.0));
            CHECK(d[2] == doctest::Approx(0.2));
        }
    }
    SUBCASE("the fast component vanishes on the critical manifold") {
        for (double x1 : {-0.5, 0.2, 0.9}) {
            const double lam = 0.7;
            const StateVec d = f.drift(StateVec{x1, critical_manifold_x2(lam, x1), lam}, 0.0);
            CHECK(d[0] == doctest::Approx(0.0).epsilon(1e-12));
        }
    }
    SUBCASE("fold tangency: the fast nullcline is critical in x1 at 1/2") {
        // d(fast)/dx1 = (2 x1 - 1)/eps vanishes at the fold.
        const double lam = 0.3, x2 = critical_manifold_x2(lam, 0.5);
        const double h = 1e-6;
        const double fp = f.drift(StateVec{0.5 + h, x2, lam}, 0.0)[0];
        const double fm = f.drift(StateVec{0.5 - h, x2, lam}, 0.0)[0];
        CHECK(std::abs((fp - fm) / (2.0 * h)) < 1e-6 / p.epsilon);
    }
}

TEST_CASE("critical manifold") {
    CHECK(critical_manifold_x2(0.4, 0.0) == doctest::Approx(-0.4));
    CHECK(critical_manifold_x2(0.4, 0.5) == doctest::Approx(-0.4 + 0.25));
    CHECK(critical_manifold_x2(0.4, 1.0) == doctest::Approx(-0.4));
}

TEST_CASE("projected reduced flow") {
    const Params p{0.01, 1, 0.4};
    const auto f = projected_reduced_field(p);
    SUBCASE("invariant level where the power sum matches the rate") {
        CHECK(f.drift(StateVec{0.4, 0.0}, 0.0)[0] == doctest::Approx(0.0));
    }
    SUBCASE("value away from the fold") {
        const Params q{0.01, 1, 0.5};
        CHECK(projected_reduced_field(q).drift(StateVec{0.0, 0.0}, 0.0)[0] ==
              doctest::Approx(0.5));
    }
    SUBCASE("evaluating at the fold raises") {
        CHECK_THROWS_AS(f.drift(StateVec{0.5, 0.0}, 0.0), std::domain_error);
    }
}

TEST_CASE("desingularised steady flow") {
    const Params p{0.01, 1, 0.5};
    const auto f = desingularised_field_steady(p);
    SUBCASE("equilibrium sits exactly on the fold when r equals the fold sum") {
        const StateVec d = f.drift(StateVec{0.5, 1.0}, 0.0);
        CHECK(d[0] == doctest::Approx(0.0));
        CHECK(d[1] == doctest::Approx(0.0));
    }
    SUBCASE("lambda velocity flips sign across the fold") {
        CHECK(f.drift(StateVec{0.4, 0.0}, 0.0)[1] > 0.0);
        CHECK(f.drift(StateVec{0.6, 0.0}, 0.0)[1] < 0.0);
    }
}

TEST_CASE("critical steady rate is the geometric fold sum") {
    CHECK(critical_rate_steady(1) == doctest::Approx(0.5));
    CHECK(critical_rate_steady(3) == doctest::Approx(0.875));
    double prev = 0.0;
    for (int N : {1, 3, 5, 7, 9, 11}) {
        const double rc = critical_rate_steady(N);
        CHECK(rc > prev);
        CHECK(rc < 1.0);
        prev = rc;
    }
    CHECK_THROWS_AS(critical_rate_steady(2), std::invalid_argument);
    CHECK_THROWS_AS(critical_rate_steady(0), std::invalid_argument);
}

TEST_CASE("desingularised decaying-drift flow and its saddle") {
    SUBCASE("the folded point is an equilibrium") {
        const UnsteadyParams p{0.01, 1, 1.0, 0.0};
        const auto F = folded_saddle(p.N, p.rho);
        const StateVec d = desingularised_field_unsteady(p).drift(StateVec{F.x1_F, F.lambda_F}, 0.0);
        CHECK(d[0] == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(d[1] == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("lambda_F vanishes when rho equals the fold sum") {
        CHECK(folded_saddle(1, 0.5).lambda_F == doctest::Approx(0.0));
    }
    SUBCASE("numerical jacobian at the saddle has real eigenvalues of opposite sign") {
        const UnsteadyParams p{0.01, 3, 0.8, 0.0};
        const auto F = folded_saddle(p.N, p.rho);
        const auto f = desingularised_field_unsteady(p);
        const double h = 1e-7;
        auto col = [&](int j) {
            StateVec up{F.x1_F, F.lambda_F}, dn{F.x1_F, F.lambda_F};
            up[j] += h;
            dn[j] -= h;
            const StateVec du = f.drift(up, 0.0), dd = f.drift(dn, 0.0);
            return StateVec{(du[0] - dd[0]) / (2.0 * h), (du[1] - dd[1]) / (2.0 * h)};
        };
        const StateVec c0 = col(0), c1 = col(1);
        const Mat2 J(c0[0], c1[0], c0[1], c1[1]);
        const auto eig = J.eigenvalues();
        CHECK(eig[0].imag() == doctest::Approx(0.0));
        CHECK(eig[1].imag() == doctest::Approx(0.0));
        CHECK(eig[0].real() * eig[1].real() < 0.0);
    }
}

TEST_CASE("folded saddle constants") {
    SUBCASE("N = 1") {
        const auto F = folded_saddle(1, 1.0);
        CHECK(F.p == doctest::Approx(0.5));
        CHECK(F.q == doctest::Approx(0.5));
        CHECK(F.w[0] == doctest::Approx(std::sqrt(3.0) - 1.0).epsilon(1e-12));
        CHECK(F.w[1] == doctest::Approx(1.0));
    }
    SUBCASE("N = 3") {
        const auto F = folded_saddle(3, 1.0);
        CHECK(F.p == doctest::Approx(7.0 / 8.0));
        CHECK(F.q == doctest::Approx(11.0 / 8.0));
    }
}

TEST_CASE("closed-form rho_c estimate") {
    SUBCASE("origin, N = 1: about 0.9899") {
        CHECK(rho_c_approx(1, 0.0, 0.0) == doctest::Approx(0.9899).epsilon(1e-3));
        CHECK(std::abs(rho_c_approx(1, 0.0, 0.0) - 0.989916702118) < 1e-9);
    }
    SUBCASE("on the fold the exponent drops its x1 term") {
        CHECK(rho_c_approx(1, 0.5, 0.7) == doctest::Approx(0.5 * std::exp(0.7)).epsilon(1e-12));
    }
    SUBCASE("shifting lambda0 by one scales by e") {
        const double base = rho_c_approx(1, 0.1, 0.0);
        CHECK(rho_c_approx(1, 0.1, 1.0) == doctest::Approx(base * std::exp(1.0)).epsilon(1e-12));
    }
    SUBCASE("repelling-sheet start is rejected") {
        CHECK_THROWS_AS(rho_c_approx(1, 0.6, 0.0), std::domain_error);
    }
}

TEST_CASE("full-system classification straddles the fold sums") {
    SUBCASE("steady: r = 0.4 tracks, r = 0.6 tips at N = 1") {
        CHECK(classify_steady({0.01, 1, 0.4}, StateVec{0.0, 0.0, 0.0}).outcome == Outcome::tracks);
        const auto tipped = classify_steady({0.01, 1, 0.6}, StateVec{0.0, 0.0, 0.0});
        CHECK(tipped.outcome == Outcome::tips);
        CHECK(tipped.tip_time);
    }
    SUBCASE("decaying drift: rho = 0.7 tracks, rho = 1.0 tips from the origin") {
        CHECK(classify_unsteady({0.01, 1, 0.7, 0.0}, StateVec{0.0, 0.0}).outcome ==
              Outcome::tracks);
        CHECK(classify_unsteady({0.01, 1, 1.0, 0.0}, StateVec{0.0, 0.0}).outcome == Outcome::tips);
    }
}

TEST_CASE("projected reduced flow shadows the full system away from the fold") {
    // Steady drift r = 0.3, N = 1: both settle onto the x1 = 0.3 level.
    const double eps = 0.01, r = 0.3;
    const Params p{eps, 1, r};

    IntegrateOptions opts;
    const auto full = integrate_ode(field_steady(p), StateVec{0.0, 0.0, 0.0},
                                    TimeGrid(0.0, 5.0, eps / 20.0), std::nullopt, opts);
    const auto reduced = integrate_ode(projected_reduced_field(p), StateVec{0.0, 0.0},
                                       TimeGrid(0.0, 5.0, 1e-3), std::nullopt, opts);

    // Compare x1 at matching times; the full system must stay within 10 eps.
    double worst = 0.0;
    for (double t = 0.0; t <= 5.0; t += 0.1) {
        const auto fi = static_cast<std::size_t>(std::round(t / (eps / 20.0)));
        const auto ri = static_cast<std::size_t>(std::round(t / 1e-3));
        REQUIRE(fi < full.size());
        REQUIRE(ri < reduced.size());
        worst = std::max(worst, std::abs(full.states[fi][0] - reduced.states[ri][0]));
    }
    CHECK(worst < 10.0 * eps);
}

TEST_CASE("the equilibrium branch attracts everything for N = 5 at frozen drift") {
    std::mt19937_64 engine(99);
    std::uniform_real_distribution<double> box(-2.0, 2.0);
    for (int i = 0; i < 10; ++i) {
        const StateVec x0{box(engine), box(engine), box(engine)};
        const Params p{0.01, 5, 0.0};
        IntegrateOptions opts;
        opts.record_stride = 0;
        const auto traj = integrate_ode(field_steady(p), x0, TimeGrid(0.0, 200.0, 0.01 / 20.0),
                                        std::nullopt, opts);
        REQUIRE(!traj.stop);
        const StateVec& s = traj.final_state();
        const double d1 = s[0], d2 = s[1] + s[2];  // distance from (0, -lambda)
        CHECK(std::sqrt(d1 * d1 + d2 * d2) < 0.05);
    }
}

}  // TEST_SUITE
