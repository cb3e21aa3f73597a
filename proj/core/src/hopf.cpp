#include "ratelab/hopf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ratelab::hopf {

namespace {

/// dw/dt = F(w) components for w = (wx, wy).
inline void eval_F(double omega, double wx, double wy, double& fx, double& fy) {
    const double m = wx * wx + wy * wy;
    fx = -wx - omega * wy + m * wx;
    fy = omega * wx - wy + m * wy;
}

/// Co-moving equilibrium condition in m = |w|^2.
inline double cubic(double m, double omega, double r) {
    return ((m - 2.0) * m + omega * omega + 1.0) * m - r * r;
}

void require_shift(const ShiftDrift& d) {
    if (!(d.delta > 0.0)) throw std::invalid_argument("hopf: shift delta must be positive");
    if (!(d.rho_max > 0.0)) throw std::invalid_argument("hopf: shift rho_max must be positive");
}

}  // namespace

VectorFieldSpec field_steady(double omega, double r) {
    return {3,
            [omega, r](const StateVec& s, double) {
                double fx, fy;
                eval_F(omega, s[0] - s[2], s[1], fx, fy);
                return StateVec{fx, fy, r};
            },
            std::nullopt};
}

VectorFieldSpec field_shift(double omega, const ShiftDrift& drift) {
    require_shift(drift);
    // Logistic coefficient giving peak speed rho_max: dlambda/dt = k lambda (delta - lambda)
    // peaks at k delta^2 / 4.
    const double k = 4.0 * drift.rho_max / (drift.delta * drift.delta);
    const double delta = drift.delta;
    return {3,
            [omega, k, delta](const StateVec& s, double) {
                double fx, fy;
                eval_F(omega, s[0] - s[2], s[1], fx, fy);
                return StateVec{fx, fy, k * s[2] * (delta - s[2])};
            },
            std::nullopt};
}

std::vector<CoMovingEquilibrium> comoving_equilibria(double r, double omega) {
    const double r2 = r * r;
    std::vector<double> roots;

    // Simple roots: bracketed bisection over sign changes of the cubic on [0, 4].
    constexpr int kScan = 4000;
    constexpr double kHi = 4.0;
    double prev = cubic(0.0, omega, r);
    if (prev == 0.0) roots.push_back(0.0);
    for (int i = 1; i <= kScan; ++i) {
        const double m = kHi * i / kScan;
        const double val = cubic(m, omega, r);
        if (val == 0.0) {
            roots.push_back(m);
        } else if (prev * val < 0.0) {
            double lo = kHi * (i - 1) / kScan, hi = m;
            double flo = cubic(lo, omega, r);
            for (int it = 0; it < 100 && hi - lo > 1e-14; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = cubic(mid, omega, r);
                if (flo * fm <= 0.0) hi = mid;
                else { lo = mid; flo = fm; }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        prev = val;
    }

    // Double roots sit at critical points of the cubic where it touches zero.
    const double disc = 16.0 - 12.0 * (omega * omega + 1.0);
    if (disc >= 0.0) {
        for (double sgn : {-1.0, 1.0}) {
            const double m = (4.0 + sgn * std::sqrt(disc)) / 6.0;
            if (m < 0.0 || m > kHi) continue;
            if (std::abs(cubic(m, omega, r)) > 1e-10 * std::max(1.0, r2)) continue;
            const bool known = std::any_of(roots.begin(), roots.end(),
                                           [m](double x) { return std::abs(x - m) < 1e-7; });
            if (!known) roots.push_back(m);
        }
    }

    std::sort(roots.begin(), roots.end());
    std::vector<CoMovingEquilibrium> out;
    out.reserve(roots.size());
    for (double m : roots) {
        const double mag = std::sqrt(std::max(m, 0.0));
        double theta = 0.0;
        if (r != 0.0) {
            // w_e = r / ((m - 1) + i omega)
            theta = std::atan2(-omega * r, r * (m - 1.0));
        }
        out.push_back({mag, theta, equilibrium_stability(mag, omega)});
    }
    return out;
}

std::optional<std::pair<double, double>> sn_curve_branches(double omega) {
    const double disc = 1.0 - 0.75 * (1.0 + omega * omega);
    if (disc < 0.0) return std::nullopt;
    const double s = std::sqrt(disc);
    return std::make_pair((2.0 / 3.0) * (1.0 - s), (2.0 / 3.0) * (1.0 + s));
}

std::optional<double> hopf_curve(double omega) {
    // Defined from the codimension-two point omega^2 = 1/4 outward.
    if (omega * omega < 0.25) return std::nullopt;
    return std::sqrt((1.0 + 4.0 * omega * omega) / 8.0);
}

Stability equilibrium_stability(double w_mag, double omega) {
    const double m = w_mag * w_mag;
    const double damping = 2.0 - 4.0 * m;
    const double restoring = omega * omega + (m - 1.0) * (3.0 * m - 1.0);
    constexpr double kTol = 1e-9;
    if (std::abs(restoring) <= kTol) return Stability::saddle_node_critical;
    if (restoring > 0.0 && std::abs(damping) <= kTol) return Stability::hopf_critical;
    if (restoring > 0.0 && damping > 0.0) return Stability::stable;
    return Stability::unstable;
}

double critical_rate_steady(double omega) {
    const double w2 = omega * omega;
    if (w2 <= 0.25) {
        const auto branches = sn_curve_branches(omega);  // defined: w2 <= 1/4 < 1/3
        const double m = branches->first;
        return std::sqrt(((m - 2.0) * m + w2 + 1.0) * m);
    }
    return std::sqrt((1.0 + 4.0 * w2) / 8.0);
}

std::pair<double, double> cusp_point() {
    const double omega = std::sqrt(1.0 / 3.0);  // fold branches merge here
    const double m = 2.0 / 3.0;
    const double r = std::sqrt(((m - 2.0) * m + omega * omega + 1.0) * m);
    return {r, omega};
}

std::pair<double, double> shift_path(double rho, double delta, double t0, double t) {
    if (!(delta > 0.0)) throw std::invalid_argument("shift_path: delta must be positive");
    const double lambda = delta * (std::tanh(delta * rho * (t - t0) / 2.0) + 1.0) / 2.0;
    return {lambda, rho * lambda * (delta - lambda)};
}

std::vector<BranchPoint> critical_rate_diagram() {
    std::vector<BranchPoint> rows;
    rows.reserve(241);
    for (int i = 0; i <= 240; ++i) {
        const double omega = -1.2 + 0.01 * i;
        rows.push_back({omega, critical_rate_steady(omega),
                        omega * omega <= 0.25 ? "saddle_node" : "hopf"});
    }
    return rows;
}

Classification classify_shift(double omega, const ShiftDrift& drift, double x0, double y0,
                              double lambda0, double horizon, double dt) {
    require_shift(drift);
    const double delta = drift.delta;
    const double settled = delta - 1e-3;

    // Excursions outside the frozen basin while lambda is still moving fast can
    // be pulled back in; only the post-shift position decides.
    auto stop = StopCondition::predicate([settled](const StateVec& s, double) {
        const double wx = s[0] - s[2], wy = s[1];
        return s[2] > settled && wx * wx + wy * wy >= 1.0;
    });

    IntegrateOptions opts;
    opts.record_stride = 0;
    const Trajectory traj = integrate_ode(field_shift(omega, drift), StateVec{x0, y0, lambda0},
                                          TimeGrid(0.0, horizon, dt), stop, opts);

    if (traj.stop) return {Outcome::tips, traj.stop->time};
    const StateVec& s = traj.final_state();
    if (s[2] <= settled) return {Outcome::undecided, std::nullopt};  // shift incomplete
    return {Outcome::tracks, std::nullopt};
}

Classification classify_steady(double omega, double r, double horizon, double dt) {
    // Prepared start: the smallest co-moving equilibrium (the tracking state),
    // displaced slightly so that a loss of stability actually shows up.
    const auto eq = comoving_equilibria(r, omega);
    double wx = 0.0, wy = 0.0;
    if (!eq.empty()) {
        const double m = eq.front().w_mag * eq.front().w_mag;
        const double denom = (m - 1.0) * (m - 1.0) + omega * omega;
        wx = r * (m - 1.0) / denom;
        wy = -r * omega / denom;
    }
    const double lambda0 = 0.0;
    const StateVec z0{lambda0 + wx + 1e-3, wy + 1e-3, lambda0};

    auto stop = StopCondition::predicate([](const StateVec& s, double) {
        const double ux = s[0] - s[2], uy = s[1];
        return ux * ux + uy * uy >= 1.0;
    });

    IntegrateOptions opts;
    opts.record_stride = 0;
    const Trajectory traj =
        integrate_ode(field_steady(omega, r), z0, TimeGrid(0.0, horizon, dt), stop, opts);

    if (traj.stop) return {Outcome::tips, traj.stop->time};
    return {Outcome::tracks, std::nullopt};
}

}  // namespace ratelab::hopf
