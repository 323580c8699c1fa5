#pragma once

#include <array>
#include <cstdint>

#include "xvc/core.hpp"

namespace xvc {

/// SplitMix64 output function (Vigna's public-domain reference).
std::uint64_t mix64(std::uint64_t z);

/// SplitMix64 generator; used only to expand seeds.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t state) : state_(state) {}
    std::uint64_t next();

private:
    std::uint64_t state_;
};

/// xoshiro256** (Blackman & Vigna, public-domain reference). All sampling
/// randomness in the toolkit flows through this generator so that sampled
/// inputs are reproducible across platforms and languages.
class Xoshiro256StarStar {
public:
    /// Seeds the four state words from successive SplitMix64 outputs, the
    /// seeding procedure recommended by the generator's authors.
    explicit Xoshiro256StarStar(std::uint64_t seed);

    std::uint64_t next();

    /// Uniform draw in [0, bound), bound > 0, via unbiased rejection:
    /// discard r < 2^64 mod bound, return r % bound.
    std::uint64_t uniform_below(std::uint64_t bound);

    const std::array<std::uint64_t, 4>& state() const { return state_; }

private:
    std::array<std::uint64_t, 4> state_{};
};

/// Per-frame sub-stream: an xoshiro256** seeded with
/// mix64(mix64(seed) + frame_index). Distinct frames get distinct,
/// well-separated streams for the same video seed.
Xoshiro256StarStar frame_stream(std::uint64_t seed, std::uint64_t frame_index);

struct SamplingSpec {
    double fraction = 0.01;  // in (0, 1]
    std::uint64_t seed = 0;
};

/// round-half-up sample count for a fraction of a W x H frame.
int sample_count(double fraction, int width, int height);

/// Picks exactly sample_count() distinct pixels uniformly at random (partial
/// Fisher-Yates over pixel indices) and copies their colors verbatim.
/// Positions are a pure function of (seed, frame_index, W, H, fraction).
SparseFrame sample_frame(const DenseFrame& frame, const SamplingSpec& spec,
                         std::uint64_t frame_index);

/// sample_frame per frame, each with its own sub-stream; records fraction
/// and seed in the header.
SparseVideo sample_video(const std::vector<DenseFrame>& frames, const SamplingSpec& spec);

}  // namespace xvc
