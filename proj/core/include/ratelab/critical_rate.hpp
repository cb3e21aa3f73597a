#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "ratelab/classification.hpp"

namespace ratelab::harness {

/// Both bracket endpoints classified the same way (or one was undecided).
class BracketInvalidError : public std::runtime_error {
public:
    BracketInvalidError(Outcome lo, Outcome hi)
        : std::runtime_error("bracket invalid: endpoints classify as " + to_string(lo) + " / " +
                             to_string(hi)),
          lo_outcome(lo), hi_outcome(hi) {}
    Outcome lo_outcome;
    Outcome hi_outcome;
};

/// A midpoint run ended undecided; bisection aborts rather than guessing.
class UndecidedError : public std::runtime_error {
public:
    explicit UndecidedError(double rate)
        : std::runtime_error("undecided classification at rate " + std::to_string(rate)),
          rate(rate) {}
    double rate;
};

/// A verification sample contradicted the bracket ordering.
class NonMonotoneError : public std::runtime_error {
public:
    explicit NonMonotoneError(double rate)
        : std::runtime_error("non-monotone classification at rate " + std::to_string(rate)),
          rate(rate) {}
    double rate;
};

/// Deterministic tip-or-track classifier over the swept rate.
using RateClassifier = std::function<Classification(double)>;

struct CriticalRateResult {
    double rate_lo;
    double rate_hi;
    double rate_mid;
    int iterations;
    Outcome lo_outcome;
    Outcome hi_outcome;
    std::optional<double> analytic_value;
    double rel_tol;
};

struct FindOptions {
    double rel_tol = 1e-3;
    std::optional<double> analytic_value;
    /// When positive, after convergence this many extra samples on each side
    /// of the refined bracket must agree with their endpoint's class;
    /// a contradiction raises NonMonotoneError.
    int monotone_check_points = 0;
};

/// Bisection on a deterministic classifier until the bracket's relative width
/// (rate_hi - rate_lo) / rate_mid drops to rel_tol. The endpoints must
/// classify differently; an undecided run anywhere aborts.
[[nodiscard]] CriticalRateResult find_critical_rate(const RateClassifier& classify, double lo,
                                                    double hi, const FindOptions& opts = {});

}  // namespace ratelab::harness
