#include "xvc/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace xvc {

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

void check_fraction(double fraction) {
    if (!(fraction > 0.0) || fraction > 1.0) {
        throw std::invalid_argument("sampling fraction must be in (0, 1], got " +
                                    std::to_string(fraction));
    }
}

}  // namespace

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
}

Xoshiro256StarStar::Xoshiro256StarStar(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& word : state_) word = sm.next();
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
}

std::uint64_t Xoshiro256StarStar::next() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

std::uint64_t Xoshiro256StarStar::uniform_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
        const std::uint64_t r = next();
        if (r >= threshold) return r % bound;
    }
}

Xoshiro256StarStar frame_stream(std::uint64_t seed, std::uint64_t frame_index) {
    return Xoshiro256StarStar(mix64(mix64(seed) + frame_index));
}

int sample_count(double fraction, int width, int height) {
    check_fraction(fraction);
    const double n = fraction * static_cast<double>(width) * static_cast<double>(height);
    return static_cast<int>(std::floor(n + 0.5));
}

SparseFrame sample_frame(const DenseFrame& frame, const SamplingSpec& spec,
                         std::uint64_t frame_index) {
    check_fraction(spec.fraction);
    const int total = frame.width * frame.height;
    const int n = sample_count(spec.fraction, frame.width, frame.height);

    std::vector<std::uint32_t> indices(static_cast<std::size_t>(total));
    std::iota(indices.begin(), indices.end(), 0u);

    Xoshiro256StarStar rng = frame_stream(spec.seed, frame_index);
    for (int i = 0; i < n; ++i) {
        const std::uint64_t j =
            static_cast<std::uint64_t>(i) + rng.uniform_below(static_cast<std::uint64_t>(total - i));
        std::swap(indices[static_cast<std::size_t>(i)], indices[j]);
    }
    indices.resize(static_cast<std::size_t>(n));
    std::sort(indices.begin(), indices.end());  // canonical (y, x) order

    SparseFrame out;
    out.width = frame.width;
    out.height = frame.height;
    out.samples.reserve(indices.size());
    for (std::uint32_t idx : indices) {
        const int x = static_cast<int>(idx) % frame.width;
        const int y = static_cast<int>(idx) / frame.width;
        const std::size_t o = frame.offset(x, y);
        out.samples.push_back(Sample{static_cast<std::uint16_t>(x), static_cast<std::uint16_t>(y),
                                     frame.data[o], frame.data[o + 1], frame.data[o + 2]});
    }
    return out;
}

SparseVideo sample_video(const std::vector<DenseFrame>& frames, const SamplingSpec& spec) {
    check_fraction(spec.fraction);
    SparseVideo out;
    out.fraction = spec.fraction;
    out.seed = spec.seed;
    if (frames.empty()) return out;

    out.width = frames.front().width;
    out.height = frames.front().height;
    out.frames.reserve(frames.size());
    for (std::size_t i = 0; i < frames.size(); ++i) {
        if (frames[i].width != out.width || frames[i].height != out.height) {
            throw std::invalid_argument("sample_video: frame " + std::to_string(i) +
                                        " dimensions differ from frame 0");
        }
        out.frames.push_back(sample_frame(frames[i], spec, static_cast<std::uint64_t>(i)));
    }
    return out;
}

}  // namespace xvc
