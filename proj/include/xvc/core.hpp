#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace xvc {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;
};

/// Full-resolution 8-bit frame, row-major, channel order R,G,B.
struct DenseFrame {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;  // width*height*3

    DenseFrame() = default;
    DenseFrame(int w, int h)
        : width(w), height(h),
          data(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3, 0) {}

    std::size_t offset(int x, int y) const {
        return (static_cast<std::size_t>(y) * width + x) * 3;
    }
    std::uint8_t at(int x, int y, int ch) const { return data[offset(x, y) + ch]; }
    void set(int x, int y, Rgb c) {
        const std::size_t o = offset(x, y);
        data[o] = c.r;
        data[o + 1] = c.g;
        data[o + 2] = c.b;
    }

    bool operator==(const DenseFrame&) const = default;
};

/// One known pixel of a sparsely sampled frame.
struct Sample {
    std::uint16_t x = 0;
    std::uint16_t y = 0;
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    bool operator==(const Sample&) const = default;
};

/// Sparse frame: only the listed samples are known. Samples are kept in
/// canonical (y, x) order and coordinates are unique.
struct SparseFrame {
    int width = 0;
    int height = 0;
    std::vector<Sample> samples;

    bool operator==(const SparseFrame&) const = default;
};

/// Ordered sparse frames plus the sampling header. seed = 0 means the
/// sampling origin is unknown/external.
struct SparseVideo {
    int width = 0;
    int height = 0;
    double fraction = 0.0;
    std::uint64_t seed = 0;
    std::vector<SparseFrame> frames;

    bool operator==(const SparseVideo&) const = default;
};

/// Weighted-intensity accumulator: numer holds per-channel weighted sums,
/// denom the weight sums. Merging planes is exact element-wise addition,
/// so parallel splats can accumulate privately and merge in fixed order.
struct AccumulatorPlane {
    int width = 0;
    int height = 0;
    std::vector<double> numer;  // width*height*3
    std::vector<double> denom;  // width*height

    AccumulatorPlane() = default;
    AccumulatorPlane(int w, int h)
        : width(w), height(h),
          numer(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3, 0.0),
          denom(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0.0) {}

    void merge(const AccumulatorPlane& other);
};

/// Unquantized counterpart of a DenseFrame: per-channel real values plus a
/// mask of pixels that received any weight.
struct RealFrame {
    int width = 0;
    int height = 0;
    std::vector<double> values;       // width*height*3
    std::vector<std::uint8_t> mask;   // width*height, 1 where denom > 0
};

/// Quantizes to 8 bits with round-half-away-from-zero.
std::uint8_t quantize_intensity(double v);

/// Final division step of the normalized filter. Pixels with zero weight
/// take `fallback`. This is the only place values are quantized to 8 bits.
DenseFrame normalize(const AccumulatorPlane& acc, Rgb fallback = {0, 0, 0});

/// Division without quantization, for differential tests.
RealFrame resolve(const AccumulatorPlane& acc);

/// Axis-aligned pixel rectangle, [x, x+w) x [y, y+h).
struct Rect {
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;

    bool contains(int px, int py) const {
        return px >= x && px < x + w && py >= y && py < y + h;
    }
    long long area() const { return static_cast<long long>(w) * h; }

    bool operator==(const Rect&) const = default;
};

}  // namespace xvc
