#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ratelab {

/// Identifies one reproducible Gaussian increment stream. Ensemble member i
/// uses stream_index = i on a shared base seed.
struct RandomStream {
    std::uint64_t seed = 0;
    std::uint64_t stream_index = 0;
};

[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Standard-normal generator with a fully spelled-out mapping
/// (seed, stream_index, draw index) -> xi:
///
///   engine  = mt19937_64 seeded with splitmix64(seed + K*(stream_index+1)),
///             K = 0x9E3779B97F4A7C15 (the 64-bit golden ratio)
///   u1      = ((engine() >> 11) + 1) * 2^-53   in (0, 1]
///   u2      = (engine() >> 11) * 2^-53         in [0, 1)
///   xi      = sqrt(-2 ln u1) * cos(2 pi u2)
///
/// Each draw consumes exactly two engine words, so the k-th normal of a
/// stream is a pure function of (seed, stream_index, k).
class GaussianStream {
public:
    explicit GaussianStream(RandomStream id)
        : engine_(splitmix64(id.seed + 0x9E3779B97F4A7C15ULL * (id.stream_index + 1))) {}

    [[nodiscard]] double next() {
        constexpr double kTwoPow53Inv = 1.0 / 9007199254740992.0;  // 2^-53
        const double u1 = static_cast<double>((engine_() >> 11) + 1) * kTwoPow53Inv;
        const double u2 = static_cast<double>(engine_() >> 11) * kTwoPow53Inv;
        constexpr double kTwoPi = 6.283185307179586476925286766559;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace ratelab
