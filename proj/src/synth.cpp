#include "xvc/synth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "xvc/sampler.hpp"

namespace xvc {

namespace {

void check_geometry(int width, int height, int frames, int cell_size) {
    if (width < 1 || height < 1) throw std::invalid_argument("synth: dimensions must be >= 1");
    if (frames < 0) throw std::invalid_argument("synth: frame count must be >= 0");
    if (cell_size < 1) throw std::invalid_argument("synth: cell_size must be >= 1");
}

inline int wrap(int v, int extent) {
    const int m = v % extent;
    return m < 0 ? m + extent : m;
}

}  // namespace

DenseFrame value_noise_texture(int width, int height, std::uint64_t seed, int cell_size) {
    check_geometry(width, height, 0, cell_size);
    const int gw = width / cell_size + 2;
    const int gh = height / cell_size + 2;

    Xoshiro256StarStar rng = frame_stream(seed, 0);
    std::vector<double> lattice(static_cast<std::size_t>(gw) * gh * 3);
    for (double& v : lattice) {
        v = static_cast<double>(rng.uniform_below(256));
    }

    DenseFrame out(width, height);
    const double inv = 1.0 / cell_size;
    for (int y = 0; y < height; ++y) {
        const double gy = y * inv;
        const int y0 = static_cast<int>(gy);
        const double fy = gy - y0;
        for (int x = 0; x < width; ++x) {
            const double gx = x * inv;
            const int x0 = static_cast<int>(gx);
            const double fx = gx - x0;
            const std::size_t o00 = (static_cast<std::size_t>(y0) * gw + x0) * 3;
            const std::size_t o01 = o00 + 3;
            const std::size_t o10 = o00 + static_cast<std::size_t>(gw) * 3;
            const std::size_t o11 = o10 + 3;
            const std::size_t p = out.offset(x, y);
            for (int ch = 0; ch < 3; ++ch) {
                const double top = lattice[o00 + ch] * (1.0 - fx) + lattice[o01 + ch] * fx;
                const double bot = lattice[o10 + ch] * (1.0 - fx) + lattice[o11 + ch] * fx;
                out.data[p + ch] = quantize_intensity(top * (1.0 - fy) + bot * fy);
            }
        }
    }
    return out;
}

std::vector<DenseFrame> gen_static(int width, int height, int frames, std::uint64_t seed,
                                   int cell_size) {
    return gen_moving_texture(width, height, frames, Velocity{0, 0}, seed, cell_size);
}

std::vector<DenseFrame> gen_moving_texture(int width, int height, int frames, Velocity velocity,
                                           std::uint64_t seed, int cell_size) {
    check_geometry(width, height, frames, cell_size);
    const DenseFrame texture = value_noise_texture(width, height, seed, cell_size);

    std::vector<DenseFrame> out;
    out.reserve(static_cast<std::size_t>(frames));
    for (int l = 0; l < frames; ++l) {
        DenseFrame frame(width, height);
        const int sx = wrap(l * velocity.vx, width);
        const int sy = wrap(l * velocity.vy, height);
        for (int y = 0; y < height; ++y) {
            const int ty = wrap(y - sy, height);
            for (int x = 0; x < width; ++x) {
                const int tx = wrap(x - sx, width);
                const std::size_t src = texture.offset(tx, ty);
                const std::size_t dst = frame.offset(x, y);
                frame.data[dst] = texture.data[src];
                frame.data[dst + 1] = texture.data[src + 1];
                frame.data[dst + 2] = texture.data[src + 2];
            }
        }
        out.push_back(std::move(frame));
    }
    return out;
}

std::vector<DenseFrame> gen_mixed(int width, int height, int frames, Velocity velocity,
                                  std::uint64_t seed, int cell_size) {
    check_geometry(width, height, frames, cell_size);
    const DenseFrame background = value_noise_texture(width, height, seed, cell_size);
    std::vector<DenseFrame> moving =
        gen_moving_texture(width, height, frames, velocity, mix64(seed) + 1, cell_size);

    const int patch_width = width / 2;
    for (DenseFrame& frame : moving) {
        for (int y = 0; y < height; ++y) {
            const std::size_t o = frame.offset(patch_width, y);
            const std::size_t n = (static_cast<std::size_t>(width) - patch_width) * 3;
            std::copy_n(background.data.begin() + static_cast<std::ptrdiff_t>(o), n,
                        frame.data.begin() + static_cast<std::ptrdiff_t>(o));
        }
    }
    return moving;
}

}  // namespace xvc
