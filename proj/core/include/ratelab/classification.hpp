#pragma once

#include <optional>
#include <string>

namespace ratelab {

/// Outcome of a tip-or-track run. `undecided` means neither criterion fired
/// within the horizon; callers must report it, not guess.
enum class Outcome { tracks, tips, undecided };

[[nodiscard]] inline std::string to_string(Outcome o) {
    switch (o) {
        case Outcome::tracks: return "tracks";
        case Outcome::tips: return "tips";
        case Outcome::undecided: return "undecided";
    }
    return "unknown";
}

struct Classification {
    Outcome outcome = Outcome::undecided;
    std::optional<double> tip_time;
};

}  // namespace ratelab
