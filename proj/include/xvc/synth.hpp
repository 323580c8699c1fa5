#pragma once

#include <cstdint>
#include <vector>

#include "xvc/core.hpp"

namespace xvc {

struct Velocity {
    int vx = 0;
    int vy = 0;
};

/// Band-limited color noise: a random lattice of colors (one node per
/// cell_size pixels per channel) interpolated bilinearly. Smooth enough
/// that extreme subsampling remains informative; cell_size sets the blur
/// scale of the texture.
DenseFrame value_noise_texture(int width, int height, std::uint64_t seed, int cell_size = 24);

/// One texture repeated identically across all frames.
std::vector<DenseFrame> gen_static(int width, int height, int frames, std::uint64_t seed,
                                   int cell_size = 24);

/// Texture translated by `velocity` pixels per frame with wrap-around:
/// frame l pixel (x, y) = texture((x - l*vx) mod W, (y - l*vy) mod H).
std::vector<DenseFrame> gen_moving_texture(int width, int height, int frames, Velocity velocity,
                                           std::uint64_t seed, int cell_size = 24);

/// Static background with a moving-texture patch covering the left half of
/// the frame; the two motion regimes side by side.
std::vector<DenseFrame> gen_mixed(int width, int height, int frames, Velocity velocity,
                                  std::uint64_t seed, int cell_size = 24);

}  // namespace xvc
