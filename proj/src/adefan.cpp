#include "xvc/adefan.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "xvc/parallel.hpp"

namespace xvc {

void AdefanParams::validate() const {
    efan.validate();
    motion.validate();
    if (window_stride < 1 || window_stride > motion.window_size) {
        throw std::invalid_argument("AdefanParams: need 1 <= window_stride <= window_size");
    }
    if (!(blend_sigma_ratio > 0.0)) {
        throw std::invalid_argument("AdefanParams: blend_sigma_ratio must be > 0");
    }
    if (forced_depth < 0 || forced_depth > motion.fr_max) {
        throw std::invalid_argument("AdefanParams: forced_depth must be in [0, fr_max]");
    }
    if (!(divergence_scale >= 0.0)) {
        throw std::invalid_argument("AdefanParams: divergence_scale must be >= 0");
    }
}

AdefanParams default_adefan_params(double fraction) {
    AdefanParams p;
    p.efan = default_params(fraction);
    p.motion.window_size = default_window_size(fraction);
    p.window_stride = p.motion.window_size / 2;
    return p;
}

namespace {

// Cached per-frame window histograms so the divergence search does not
// rescan sample lists once per (l, m) pair.
struct HistogramCache {
    std::vector<std::vector<ColorHistogram>> hists;  // [frame][window]

    HistogramCache(const SparseVideo& video, const std::vector<Rect>& grid, int threads) {
        hists.resize(video.frames.size());
        parallel_for(video.frames.size(), threads, [&](std::size_t f) {
            hists[f].reserve(grid.size());
            for (const Rect& w : grid) hists[f].push_back(histogram(video.frames[f], w));
        });
    }
};

// Same walk as divergence_search, on cached histograms.
double cached_search(const HistogramCache& cache, std::size_t wi, int l, int step,
                     const MotionParams& params) {
    const int n = static_cast<int>(cache.hists.size());
    const ColorHistogram& base = cache.hists[static_cast<std::size_t>(l)][wi];
    if (base.count < params.min_window_samples) return 0.0;
    bool have_last = false;
    double last = 0.0;
    for (int m = 1; m <= params.fr_max; ++m) {
        const int z = l + step * m;
        if (z < 0 || z >= n) break;
        const ColorHistogram& h = cache.hists[static_cast<std::size_t>(z)][wi];
        if (h.count < params.min_window_samples) continue;
        const double d = smoothed_kl(base, h, params.alpha);
        if (have_last && d < last) return last;
        last = d;
        have_last = true;
    }
    return have_last ? last : 0.0;
}

std::vector<double> blend_table(const Rect& rect, double sigma_blend) {
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

// Depth-limited temporal combination over one window rect, from full-frame
// spatial accumulators. Window pixels see exactly the samples a full-frame
// filter would give them, so there is no window-boundary bias.
WindowResult combine_window(const std::vector<AccumulatorPlane>& planes, int width, int l,
                            const Rect& rect, int depth_fwd, int depth_bwd, double sigma_t,
                            const std::vector<double>& blend) {
    const int n = static_cast<int>(planes.size());
    const int f0 = std::max(0, l - (depth_bwd - 1));
    const int f1 = std::min(n - 1, l + (depth_fwd - 1));

    const std::size_t area = static_cast<std::size_t>(rect.w) * rect.h;
    std::vector<double> numer(area * 3, 0.0);
    std::vector<double> denom(area, 0.0);
    for (int f = f0; f <= f1; ++f) {
        const double wt = temporal_weight(l - f, sigma_t);
        const AccumulatorPlane& src = planes[static_cast<std::size_t>(f)];
        for (int y = 0; y < rect.h; ++y) {
            const std::size_t srow = static_cast<std::size_t>(rect.y + y) * width + rect.x;
            const double* snum = src.numer.data() + srow * 3;
            const double* sden = src.denom.data() + srow;
            double* dnum = numer.data() + static_cast<std::size_t>(y) * rect.w * 3;
            double* dden = denom.data() + static_cast<std::size_t>(y) * rect.w;
            for (int x = 0; x < rect.w; ++x) {
                dnum[0] += wt * snum[0];
                dnum[1] += wt * snum[1];
                dnum[2] += wt * snum[2];
                *dden += wt * *sden;
                dnum += 3;
                snum += 3;
                ++dden;
                ++sden;
            }
        }
    }

    WindowResult out;
    out.rect = rect;
    out.values.assign(area * 3, 0.0);
    out.weights.assign(area, 0.0);
    for (std::size_t p = 0; p < area; ++p) {
        if (denom[p] > 0.0) {
            out.values[p * 3] = numer[p * 3] / denom[p];
            out.values[p * 3 + 1] = numer[p * 3 + 1] / denom[p];
            out.values[p * 3 + 2] = numer[p * 3 + 2] / denom[p];
            out.weights[p] = blend[p];
        }
    }
    return out;
}

int clamp_depth(int depth, int fr_max) { return std::clamp(depth, 1, fr_max); }

}  // namespace

std::vector<DepthField> compute_depth_fields(const SparseVideo& video, const AdefanParams& params,
                                             int threads) {
    params.validate();
    const std::vector<Rect> grid =
        window_grid(video.width, video.height, params.motion.window_size, params.window_stride);
    std::vector<DepthField> fields(video.frames.size());

    if (params.forced_depth > 0) {
        const int d = clamp_depth(params.forced_depth, params.motion.fr_max);
        for (auto& field : fields) {
            field.windows.reserve(grid.size());
            for (const Rect& w : grid) field.windows.push_back(WindowDepth{w, d, d});
        }
        return fields;
    }

    const HistogramCache cache(video, grid, threads);
    parallel_for(video.frames.size(), threads, [&](std::size_t l) {
        DepthField& field = fields[l];
        field.windows.reserve(grid.size());
        for (std::size_t wi = 0; wi < grid.size(); ++wi) {
            const double div_next =
                cached_search(cache, wi, static_cast<int>(l), +1, params.motion) *
                params.divergence_scale;
            const double div_prev =
                cached_search(cache, wi, static_cast<int>(l), -1, params.motion) *
                params.divergence_scale;
            field.windows.push_back(WindowDepth{
                grid[wi], depth_from_divergence(div_next, params.motion.fr_max, params.motion.beta),
                depth_from_divergence(div_prev, params.motion.fr_max, params.motion.beta)});
        }
    });
    return fields;
}

WindowResult complete_window(const SparseVideo& video, int l, const Rect& window, int depth_fwd,
                             int depth_bwd, const AdefanParams& params) {
    params.validate();
    const int n = static_cast<int>(video.frames.size());
    if (l < 0 || l >= n) throw std::invalid_argument("complete_window: frame index out of range");
    if (depth_fwd < 1 || depth_fwd > params.motion.fr_max || depth_bwd < 1 ||
        depth_bwd > params.motion.fr_max) {
        throw std::invalid_argument("complete_window: depths must be in [1, fr_max]");
    }

    // Splat only the frames the depth extent can reach; indices outside the
    // extent stay empty and are never read.
    std::vector<AccumulatorPlane> planes(video.frames.size());
    const int f0 = std::max(0, l - (depth_bwd - 1));
    const int f1 = std::min(n - 1, l + (depth_fwd - 1));
    for (int f = f0; f <= f1; ++f) {
        planes[static_cast<std::size_t>(f)] = splat_frame(video.frames[static_cast<std::size_t>(f)], params.efan);
    }
    const std::vector<double> blend =
        blend_table(window, params.motion.window_size / params.blend_sigma_ratio);
    return combine_window(planes, video.width, l, window, depth_fwd, depth_bwd,
                          params.efan.sigma_t, blend);
}

DenseFrame assemble_frame(const std::vector<WindowResult>& partials, int width, int height,
                          Rgb fallback) {
    AccumulatorPlane acc(width, height);
    for (const WindowResult& part : partials) {
        for (int y = 0; y < part.rect.h; ++y) {
            const std::size_t drow = static_cast<std::size_t>(part.rect.y + y) * width + part.rect.x;
            for (int x = 0; x < part.rect.w; ++x) {
                const std::size_t sp = static_cast<std::size_t>(y) * part.rect.w + x;
                const double w = part.weights[sp];
                if (w <= 0.0) continue;
                const std::size_t dp = drow + x;
                acc.numer[dp * 3] += w * part.values[sp * 3];
                acc.numer[dp * 3 + 1] += w * part.values[sp * 3 + 1];
                acc.numer[dp * 3 + 2] += w * part.values[sp * 3 + 2];
                acc.denom[dp] += w;
            }
        }
    }
    return normalize(acc, fallback);
}

std::vector<DenseFrame> complete_video_adefan(const SparseVideo& video, const AdefanParams& params,
                                              Rgb fallback, int threads) {
    params.validate();
    const std::vector<DepthField> fields = compute_depth_fields(video, params, threads);
    const std::vector<AccumulatorPlane> planes = splat_video(video, params.efan, threads);

    // Blend tables only depend on the window rect; share them across frames.
    const std::vector<Rect> grid =
        window_grid(video.width, video.height, params.motion.window_size, params.window_stride);
    const double sigma_blend = params.motion.window_size / params.blend_sigma_ratio;
    std::vector<std::vector<double>> blends;
    blends.reserve(grid.size());
    for (const Rect& w : grid) blends.push_back(blend_table(w, sigma_blend));

    std::vector<DenseFrame> out(video.frames.size());
    parallel_for(video.frames.size(), threads, [&](std::size_t l) {
        std::vector<WindowResult> partials;
        partials.reserve(grid.size());
        const DepthField& field = fields[l];
        for (std::size_t wi = 0; wi < grid.size(); ++wi) {
            const WindowDepth& wd = field.windows[wi];
            partials.push_back(combine_window(planes, video.width, static_cast<int>(l), wd.rect,
                                              wd.depth_fwd, wd.depth_bwd, params.efan.sigma_t,
                                              blends[wi]));
        }
        out[l] = assemble_frame(partials, video.width, video.height, fallback);
    });
    return out;
}

std::string depth_fields_csv(const std::vector<DepthField>& fields) {
    std::ostringstream csv;
    csv << "frame,window_x,window_y,depth_fwd,depth_bwd\n";
    for (std::size_t l = 0; l < fields.size(); ++l) {
        for (const WindowDepth& wd : fields[l].windows) {
            csv << l << ',' << wd.rect.x << ',' << wd.rect.y << ',' << wd.depth_fwd << ','
                << wd.depth_bwd << '\n';
        }
    }
    return csv.str();
}

}  // namespace xvc
