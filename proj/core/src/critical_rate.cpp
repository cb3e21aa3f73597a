#include "ratelab/critical_rate.hpp"

#include <cmath>

namespace ratelab::harness {

CriticalRateResult find_critical_rate(const RateClassifier& classify, double lo, double hi,
                                      const FindOptions& opts) {
    if (!(lo < hi)) throw std::invalid_argument("find_critical_rate: need lo < hi");
    if (!(opts.rel_tol > 0.0)) throw std::invalid_argument("find_critical_rate: rel_tol must be positive");

    const Outcome out_lo = classify(lo).outcome;
    const Outcome out_hi = classify(hi).outcome;
    if (out_lo == Outcome::undecided || out_hi == Outcome::undecided || out_lo == out_hi)
        throw BracketInvalidError(out_lo, out_hi);

    const double lo0 = lo, hi0 = hi;
    int iterations = 0;
    while ((hi - lo) / (0.5 * (hi + lo)) > opts.rel_tol) {
        const double mid = 0.5 * (lo + hi);
        const Outcome out_mid = classify(mid).outcome;
        if (out_mid == Outcome::undecided) throw UndecidedError(mid);
        if (out_mid == out_lo) lo = mid;
        else hi = mid;
        ++iterations;
    }

    if (opts.monotone_check_points > 0) {
        // The refined bracket splits the original one into a pure-lo-class and
        // a pure-hi-class side; spot-check both.
        for (int i = 1; i <= opts.monotone_check_points; ++i) {
            const double frac = static_cast<double>(i) / (opts.monotone_check_points + 1);
            const double below = lo0 + frac * (lo - lo0);
            const double above = hi + frac * (hi0 - hi);
            if (classify(below).outcome != out_lo) throw NonMonotoneError(below);
            if (classify(above).outcome != out_hi) throw NonMonotoneError(above);
        }
    }

    return {lo, hi, 0.5 * (lo + hi), iterations, out_lo, out_hi, opts.analytic_value,
            opts.rel_tol};
}

}  // namespace ratelab::harness
