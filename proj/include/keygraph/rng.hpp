#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace keygraph {

/// Stateless SplitMix64 finalizer (Steele, Lea & Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

/// Identifies one independent random stream: a run-wide master seed plus the
/// index of the trial within the run.
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t trial_index = 0;

    /// 64-bit seed of the stream: mix64(master + mix64(trial + golden)).
    constexpr std::uint64_t stream_seed() const {
        return mix64(master_seed + mix64(trial_index + kGoldenGamma));
    }
};

/// xoshiro256** 1.0 (Blackman & Vigna), state filled from SplitMix64 applied
/// to the stream seed. Satisfies UniformRandomBitGenerator; the distribution
/// helpers below are defined here rather than taken from <random> so that
/// streams are identical across standard library implementations.
class Xoshiro256 {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256(std::uint64_t seed);
    explicit Xoshiro256(const SeedSpec& spec) : Xoshiro256(spec.stream_seed()) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

    /// Uniform integer in [0, bound), Lemire's multiply-shift with rejection.
    std::uint64_t uniform_below(std::uint64_t bound);

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

private:
    std::array<std::uint64_t, 4> s_;
};

}  // namespace keygraph
