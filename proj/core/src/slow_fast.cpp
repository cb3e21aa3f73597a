#include "ratelab/slow_fast.hpp"

#include <cmath>
#include <stdexcept>

namespace ratelab::slow_fast {

namespace {

void require_shape(double epsilon, int N) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("slow_fast: epsilon must be positive");
    if (N < 1 || N % 2 == 0) throw std::invalid_argument("slow_fast: N must be odd and positive");
}

/// Scans a recorded trajectory for an outward fold crossing: x1 passes 1/2
/// while still increasing. Transient overshoot that immediately relaxes back
/// does not count as a crossing.
bool crossed_fold_outward(const Trajectory& traj) {
    for (std::size_t i = 1; i < traj.size(); ++i) {
        if (traj.states[i][0] > 0.5 && traj.states[i][0] > traj.states[i - 1][0]) return true;
    }
    return false;
}

}  // namespace

double power_sum(double x1, int N) {
    double acc = 0.0;
    for (int n = N; n >= 1; --n) acc = x1 * (1.0 + acc);
    return acc;
}

VectorFieldSpec field_steady(const Params& p) {
    require_shape(p.epsilon, p.N);
    const double eps = p.epsilon, r = p.r;
    const int N = p.N;
    return {3,
            [eps, r, N](const StateVec& s, double) {
                const double x1 = s[0], x2 = s[1], lam = s[2];
                return StateVec{(x2 + lam + x1 * (x1 - 1.0)) / eps, -power_sum(x1, N), r};
            },
            std::nullopt};
}

VectorFieldSpec field_unsteady(const UnsteadyParams& p) {
    require_shape(p.epsilon, p.N);
    if (!(p.rho > 0.0)) throw std::invalid_argument("slow_fast: rho must be positive");
    const double eps = p.epsilon, rho = p.rho;
    const int N = p.N;
    return {3,
            [eps, rho, N](const StateVec& s, double) {
                const double x1 = s[0], x2 = s[1], lam = s[2];
                return StateVec{(x2 + lam + x1 * (x1 - 1.0)) / eps, -power_sum(x1, N),
                                rho * std::exp(-lam)};
            },
            std::nullopt};
}

double critical_manifold_x2(double lambda, double x1) {
    return -lambda - x1 * (x1 - 1.0);
}

VectorFieldSpec projected_reduced_field(const Params& p) {
    require_shape(p.epsilon, p.N);
    const double r = p.r;
    const int N = p.N;
    return {2,
            [r, N](const StateVec& s, double) {
                const double x1 = s[0];
                const double denom = 2.0 * x1 - 1.0;
                if (std::abs(denom) < 1e-12)
                    throw std::domain_error("projected_reduced_field: at fold");
                return StateVec{(-r + power_sum(x1, N)) / denom, r};
            },
            std::nullopt};
}

VectorFieldSpec desingularised_field_steady(const Params& p) {
    require_shape(p.epsilon, p.N);
    const double r = p.r;
    const int N = p.N;
    return {2,
            [r, N](const StateVec& s, double) {
                const double x1 = s[0];
                return StateVec{r - power_sum(x1, N), -r * (2.0 * x1 - 1.0)};
            },
            std::nullopt};
}

VectorFieldSpec desingularised_field_unsteady(const UnsteadyParams& p) {
    require_shape(p.epsilon, p.N);
    const double rho = p.rho;
    const int N = p.N;
    return {2,
            [rho, N](const StateVec& s, double) {
                const double x1 = s[0], drive = rho * std::exp(-s[1]);
                return StateVec{drive - power_sum(x1, N), -drive * (2.0 * x1 - 1.0)};
            },
            std::nullopt};
}

double critical_rate_steady(int N) {
    require_shape(1.0, N);
    double sum = 0.0, term = 1.0;
    for (int n = 1; n <= N; ++n) {
        term *= 0.5;
        sum += term;
    }
    return sum;
}

FoldedSaddle folded_saddle(int N, double rho) {
    require_shape(1.0, N);
    if (!(rho > 0.0)) throw std::invalid_argument("folded_saddle: rho must be positive");
    double p = 0.0, q = 0.0, term = 1.0;
    for (int n = 1; n <= N; ++n) {
        term *= 0.5;
        p += term;
        q += n * term;
    }
    const double ratio = q / p;
    const double w1 = -ratio + std::sqrt(2.0 + ratio * ratio);
    return {0.5, -std::log(p / rho), p, q, {w1, 1.0}};
}

double rho_c_approx(int N, double x1_0, double lambda_0) {
    if (x1_0 > 0.5) throw std::domain_error("rho_c_approx: on repelling sheet");
    const FoldedSaddle F = folded_saddle(N, 1.0);
    return F.p * std::exp(lambda_0 + (0.5 - x1_0) / F.w[0]);
}

Classification classify_steady(const Params& p, const StateVec& x0, double horizon) {
    if (x0.dim() != 3) throw std::invalid_argument("classify_steady: state is (x1, x2, lambda)");
    IntegrateOptions opts;
    opts.record_stride = 10;  // enough resolution to audit the fold crossing
    const double dt = p.epsilon / 20.0;
    const Trajectory traj =
        integrate_ode(field_steady(p), x0, TimeGrid(0.0, horizon, dt), std::nullopt, opts);

    if (traj.diverged())
        return crossed_fold_outward(traj) ? Classification{Outcome::tips, traj.stop->time}
                                          : Classification{Outcome::undecided, std::nullopt};
    // Under steady drift the tracking state is the invariant level of the
    // reduced flow, which sits at a finite offset from the equilibrium branch
    // (and may even rest slightly past the fold near the threshold), so
    // tracking here means remaining bounded for the whole horizon.
    return {Outcome::tracks, std::nullopt};
}

Classification classify_unsteady(const UnsteadyParams& p, const StateVec& x0, double horizon) {
    if (x0.dim() != 2) throw std::invalid_argument("classify_unsteady: state is (x1, x2)");
    require_shape(p.epsilon, p.N);
    if (!(p.rho > 0.0)) throw std::invalid_argument("slow_fast: rho must be positive");

    // The drift law integrates in closed form, lambda(t) = ln(rho t + e^lambda0),
    // so only (x1, x2) is stepped numerically.
    const double eps = p.epsilon, rho = p.rho, e0 = std::exp(p.lambda0);
    const int N = p.N;
    auto lambda_at = [rho, e0](double t) { return std::log(rho * t + e0); };
    const VectorFieldSpec field{
        2,
        [eps, N, lambda_at](const StateVec& s, double t) {
            const double x1 = s[0], x2 = s[1];
            return StateVec{(x2 + lambda_at(t) + x1 * (x1 - 1.0)) / eps, -power_sum(x1, N)};
        },
        std::nullopt};

    IntegrateOptions opts;
    opts.record_stride = 10;
    const double dt = eps / 20.0;
    const Trajectory traj = integrate_ode(field, x0, TimeGrid(0.0, horizon, dt), std::nullopt, opts);

    if (traj.diverged())
        return crossed_fold_outward(traj) ? Classification{Outcome::tips, traj.stop->time}
                                          : Classification{Outcome::undecided, std::nullopt};

    const StateVec& s = traj.final_state();
    const double lam = lambda_at(traj.final_time());
    const double d1 = s[0], d2 = s[1] + lam;  // offset from the equilibrium branch (0, -lambda)
    if (std::sqrt(d1 * d1 + d2 * d2) <= 0.05) return {Outcome::tracks, std::nullopt};
    return {Outcome::undecided, std::nullopt};
}

}  // namespace ratelab::slow_fast
