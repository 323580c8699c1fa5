#pragma once

// Shared fixtures and reference pipelines for the unit and acceptance
// suites. The windowed references rebuild the window/blend machinery with
// their own loops so the adaptive pipeline's special cases can be checked
// bit-for-bit against plainly-written code.

#include <algorithm>
#include <cmath>
#include <vector>

#include "xvc/adefan.hpp"
#include "xvc/core.hpp"
#include "xvc/efan.hpp"
#include "xvc/motion.hpp"
#include "xvc/sampler.hpp"
#include "xvc/synth.hpp"

namespace xvc::testsupport {

/// Snaps every intensity to the center of its step-sized band; a small
/// palette keeps window histograms concentrated, the low-color-motion
/// regime.
inline std::vector<DenseFrame> posterize(std::vector<DenseFrame> frames, int step) {
    for (DenseFrame& frame : frames) {
        for (std::uint8_t& v : frame.data) {
            v = static_cast<std::uint8_t>((v / step) * step + step / 2);
        }
    }
    return frames;
}

/// Static texture whose palette drifts globally: every channel's
/// intensities follow a random-walk offset shared by all pixels. Color
/// motion at infinite spatial scale, so the per-window divergence does not
/// shrink as windows grow.
inline std::vector<DenseFrame> drifting_texture(int width, int height, int frames,
                                                std::uint64_t seed, int cell_size, int max_step) {
    const DenseFrame texture = value_noise_texture(width, height, seed, cell_size);
    Xoshiro256StarStar rng = frame_stream(seed, 0xd21f7);
    std::vector<DenseFrame> out;
    out.reserve(static_cast<std::size_t>(frames));
    int offset[3] = {0, 0, 0};
    for (int l = 0; l < frames; ++l) {
        if (l > 0) {
            for (int& ch : offset) {
                ch += static_cast<int>(rng.uniform_below(2 * max_step + 1)) - max_step;
            }
        }
        DenseFrame frame(width, height);
        for (std::size_t i = 0; i < frame.data.size(); ++i) {
            const int v = static_cast<int>(texture.data[i]) + offset[i % 3];
            frame.data[i] = static_cast<std::uint8_t>(std::clamp(v, 0, 255));
        }
        out.push_back(std::move(frame));
    }
    return out;
}

inline std::vector<double> reference_blend(const Rect& rect, double sigma_blend) {
    std::vector<double> table(static_cast<std::size_t>(rect.w) * rect.h);
    const double cx = (rect.w - 1) / 2.0;
    const double cy = (rect.h - 1) / 2.0;
    const double inv = 1.0 / (2.0 * sigma_blend * sigma_blend);
    for (int y = 0; y < rect.h; ++y) {
        for (int x = 0; x < rect.w; ++x) {
            const double dx = x - cx;
            const double dy = y - cy;
            table[static_cast<std::size_t>(y) * rect.w + x] = std::exp(-(dx * dx + dy * dy) * inv);
        }
    }
    return table;
}

/// Window pipeline whose content is each frame's own spatial splat; no
/// temporal machinery anywhere.
inline std::vector<DenseFrame> windowed_efan2d(const SparseVideo& video, const AdefanParams& p,
                                               Rgb fallback = {0, 0, 0}) {
    const std::vector<Rect> grid =
        window_grid(video.width, video.height, p.motion.window_size, p.window_stride);
    const double sigma_blend = p.motion.window_size / p.blend_sigma_ratio;

    std::vector<DenseFrame> out;
    out.reserve(video.frames.size());
    for (const SparseFrame& sparse : video.frames) {
        const AccumulatorPlane plane = splat_frame(sparse, p.efan);
        std::vector<WindowResult> partials;
        partials.reserve(grid.size());
        for (const Rect& rect : grid) {
            WindowResult part;
            part.rect = rect;
            part.values.assign(static_cast<std::size_t>(rect.w) * rect.h * 3, 0.0);
            part.weights.assign(static_cast<std::size_t>(rect.w) * rect.h, 0.0);
            const std::vector<double> blend = reference_blend(rect, sigma_blend);
            for (int y = 0; y < rect.h; ++y) {
                for (int x = 0; x < rect.w; ++x) {
                    const std::size_t src =
                        static_cast<std::size_t>(rect.y + y) * video.width + (rect.x + x);
                    const std::size_t dst = static_cast<std::size_t>(y) * rect.w + x;
                    if (plane.denom[src] > 0.0) {
                        for (int ch = 0; ch < 3; ++ch) {
                            part.values[dst * 3 + ch] = plane.numer[src * 3 + ch] / plane.denom[src];
                        }
                        part.weights[dst] = blend[dst];
                    }
                }
            }
            partials.push_back(std::move(part));
        }
        out.push_back(assemble_frame(partials, video.width, video.height, fallback));
    }
    return out;
}

/// Window pipeline with a fixed temporal halfwidth applied to every window:
/// the depth-free counterpart of the adaptive path.
inline std::vector<DenseFrame> windowed_efan3d(const SparseVideo& video, const AdefanParams& p,
                                               int halfwidth, Rgb fallback = {0, 0, 0}) {
    const std::vector<Rect> grid =
        window_grid(video.width, video.height, p.motion.window_size, p.window_stride);
    const double sigma_blend = p.motion.window_size / p.blend_sigma_ratio;
    const double sigma_t = p.efan.sigma_t;
    const int n = static_cast<int>(video.frames.size());

    std::vector<AccumulatorPlane> planes;
    planes.reserve(video.frames.size());
    for (const SparseFrame& sparse : video.frames) planes.push_back(splat_frame(sparse, p.efan));

    std::vector<DenseFrame> out;
    out.reserve(video.frames.size());
    for (int l = 0; l < n; ++l) {
        std::vector<WindowResult> partials;
        partials.reserve(grid.size());
        for (const Rect& rect : grid) {
            const std::size_t area = static_cast<std::size_t>(rect.w) * rect.h;
            std::vector<double> numer(area * 3, 0.0);
            std::vector<double> denom(area, 0.0);
            const int f0 = std::max(0, l - halfwidth);
            const int f1 = std::min(n - 1, l + halfwidth);
            for (int f = f0; f <= f1; ++f) {
                const double dz = l - f;
                const double wt = std::exp(-0.5 * dz * dz / (sigma_t * sigma_t));
                const AccumulatorPlane& plane = planes[static_cast<std::size_t>(f)];
                for (int y = 0; y < rect.h; ++y) {
                    for (int x = 0; x < rect.w; ++x) {
                        const std::size_t src =
                            static_cast<std::size_t>(rect.y + y) * video.width + (rect.x + x);
                        const std::size_t dst = static_cast<std::size_t>(y) * rect.w + x;
                        for (int ch = 0; ch < 3; ++ch) {
                            numer[dst * 3 + ch] += wt * plane.numer[src * 3 + ch];
                        }
                        denom[dst] += wt * plane.denom[src];
                    }
                }
            }
            WindowResult part;
            part.rect = rect;
            part.values.assign(area * 3, 0.0);
            part.weights.assign(area, 0.0);
            const std::vector<double> blend = reference_blend(rect, sigma_blend);
            for (std::size_t px = 0; px < area; ++px) {
                if (denom[px] > 0.0) {
                    for (int ch = 0; ch < 3; ++ch) {
                        part.values[px * 3 + ch] = numer[px * 3 + ch] / denom[px];
                    }
                    part.weights[px] = blend[px];
                }
            }
            partials.push_back(std::move(part));
        }
        out.push_back(assemble_frame(partials, video.width, video.height, fallback));
    }
    return out;
}

}  // namespace xvc::testsupport
