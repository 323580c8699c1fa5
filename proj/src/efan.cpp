#include "xvc/efan.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "xvc/parallel.hpp"

namespace xvc {

void EfanParams::validate() const {
    if (!(sigma > 0.0)) throw std::invalid_argument("EfanParams: sigma must be > 0");
    if (radius < 1) throw std::invalid_argument("EfanParams: radius must be >= 1");
    if (!(sigma_t > 0.0)) throw std::invalid_argument("EfanParams: sigma_t must be > 0");
    if (temporal_halfwidth < 0) {
        throw std::invalid_argument("EfanParams: temporal_halfwidth must be >= 0");
    }
}

EfanParams default_params(double fraction) {
    if (!(fraction > 0.0) || fraction > 1.0) {
        throw std::invalid_argument("default_params: fraction must be in (0, 1], got " +
                                    std::to_string(fraction));
    }
    EfanParams p;
    p.sigma = std::sqrt(1.0 / (fraction * std::numbers::pi));
    const int side = 2 * static_cast<int>(std::ceil(0.5 + 3.0 * p.sigma)) + 5;
    p.radius = (side - 1) / 2;
    p.sigma_t = 49.0 / 6.0;
    p.temporal_halfwidth = 49;
    return p;
}

std::vector<double> spatial_kernel(const EfanParams& params) {
    const int r = params.radius;
    const int side = 2 * r + 1;
    std::vector<double> table(static_cast<std::size_t>(side) * side);
    const double inv = 1.0 / (params.sigma * params.sigma);
    for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
            table[static_cast<std::size_t>(dy + r) * side + (dx + r)] =
                std::exp(-0.5 * static_cast<double>(dx * dx + dy * dy) * inv);
        }
    }
    return table;
}

double temporal_weight(int dz, double sigma_t) {
    return std::exp(-0.5 * static_cast<double>(dz) * static_cast<double>(dz) /
                    (sigma_t * sigma_t));
}

AccumulatorPlane splat_frame(const SparseFrame& frame, const EfanParams& params) {
    params.validate();
    AccumulatorPlane acc(frame.width, frame.height);
    const int r = params.radius;
    const int side = 2 * r + 1;
    const std::vector<double> kernel = spatial_kernel(params);

    for (const Sample& s : frame.samples) {
        const int sx = s.x;
        const int sy = s.y;
        const double cr = s.r;
        const double cg = s.g;
        const double cb = s.b;
        const int y0 = std::max(0, sy - r);
        const int y1 = std::min(frame.height - 1, sy + r);
        const int x0 = std::max(0, sx - r);
        const int x1 = std::min(frame.width - 1, sx + r);
        for (int y = y0; y <= y1; ++y) {
            const double* krow = kernel.data() + static_cast<std::size_t>(y - sy + r) * side;
            double* nrow = acc.numer.data() + (static_cast<std::size_t>(y) * frame.width + x0) * 3;
            double* drow = acc.denom.data() + static_cast<std::size_t>(y) * frame.width + x0;
            for (int x = x0; x <= x1; ++x) {
                const double w = krow[x - sx + r];
                nrow[0] += w * cr;
                nrow[1] += w * cg;
                nrow[2] += w * cb;
                *drow += w;
                nrow += 3;
                ++drow;
            }
        }
    }
    return acc;
}

AccumulatorPlane combine_temporal(const std::vector<AccumulatorPlane>& planes, int z,
                                  int halfwidth, double sigma_t) {
    if (planes.empty()) throw std::invalid_argument("combine_temporal: no planes");
    const int n = static_cast<int>(planes.size());
    AccumulatorPlane acc(planes.front().width, planes.front().height);
    const int f0 = std::max(0, z - halfwidth);
    const int f1 = std::min(n - 1, z + halfwidth);
    for (int f = f0; f <= f1; ++f) {
        const double wt = temporal_weight(z - f, sigma_t);
        const AccumulatorPlane& src = planes[static_cast<std::size_t>(f)];
        for (std::size_t i = 0; i < acc.numer.size(); ++i) acc.numer[i] += wt * src.numer[i];
        for (std::size_t i = 0; i < acc.denom.size(); ++i) acc.denom[i] += wt * src.denom[i];
    }
    return acc;
}

DenseFrame complete_frame_2d(const SparseFrame& frame, const EfanParams& params, Rgb fallback) {
    return normalize(splat_frame(frame, params), fallback);
}

std::vector<DenseFrame> complete_video_2d(const SparseVideo& video, const EfanParams& params,
                                          Rgb fallback, int threads) {
    params.validate();
    std::vector<DenseFrame> out(video.frames.size());
    parallel_for(video.frames.size(), threads, [&](std::size_t i) {
        out[i] = complete_frame_2d(video.frames[i], params, fallback);
    });
    return out;
}

std::vector<AccumulatorPlane> splat_video(const SparseVideo& video, const EfanParams& params,
                                          int threads) {
    params.validate();
    std::vector<AccumulatorPlane> planes(video.frames.size());
    parallel_for(video.frames.size(), threads, [&](std::size_t i) {
        planes[i] = splat_frame(video.frames[i], params);
    });
    return planes;
}

std::vector<DenseFrame> complete_video_3d(const SparseVideo& video, const EfanParams& params,
                                          Rgb fallback, int threads) {
    params.validate();
    const std::vector<AccumulatorPlane> planes = splat_video(video, params, threads);
    std::vector<DenseFrame> out(video.frames.size());
    parallel_for(video.frames.size(), threads, [&](std::size_t z) {
        out[z] = normalize(combine_temporal(planes, static_cast<int>(z),
                                            params.temporal_halfwidth, params.sigma_t),
                           fallback);
    });
    return out;
}

namespace {

// Quantizes an oracle value frame with the same rounding rule as normalize.
DenseFrame quantize_real(const RealFrame& rf, Rgb fallback) {
    DenseFrame out(rf.width, rf.height);
    for (std::size_t p = 0; p < rf.mask.size(); ++p) {
        if (rf.mask[p]) {
            out.data[p * 3] = quantize_intensity(rf.values[p * 3]);
            out.data[p * 3 + 1] = quantize_intensity(rf.values[p * 3 + 1]);
            out.data[p * 3 + 2] = quantize_intensity(rf.values[p * 3 + 2]);
        } else {
            out.data[p * 3] = fallback.r;
            out.data[p * 3 + 1] = fallback.g;
            out.data[p * 3 + 2] = fallback.b;
        }
    }
    return out;
}

}  // namespace

RealFrame oracle_2d_values(const SparseFrame& frame, const EfanParams& params) {
    params.validate();
    RealFrame out;
    out.width = frame.width;
    out.height = frame.height;
    out.values.assign(static_cast<std::size_t>(frame.width) * frame.height * 3, 0.0);
    out.mask.assign(static_cast<std::size_t>(frame.width) * frame.height, 0);

    const int r = params.radius;
    const double inv = 1.0 / (params.sigma * params.sigma);
    for (int y = 0; y < frame.height; ++y) {
        for (int x = 0; x < frame.width; ++x) {
            double num[3] = {0.0, 0.0, 0.0};
            double den = 0.0;
            for (const Sample& s : frame.samples) {
                const int dx = x - s.x;
                const int dy = y - s.y;
                if (dx < -r || dx > r || dy < -r || dy > r) continue;
                const double w = std::exp(-0.5 * static_cast<double>(dx * dx + dy * dy) * inv);
                num[0] += w * s.r;
                num[1] += w * s.g;
                num[2] += w * s.b;
                den += w;
            }
            const std::size_t p = static_cast<std::size_t>(y) * frame.width + x;
            if (den > 0.0) {
                out.mask[p] = 1;
                out.values[p * 3] = num[0] / den;
                out.values[p * 3 + 1] = num[1] / den;
                out.values[p * 3 + 2] = num[2] / den;
            }
        }
    }
    return out;
}

DenseFrame oracle_2d(const SparseFrame& frame, const EfanParams& params, Rgb fallback) {
    return quantize_real(oracle_2d_values(frame, params), fallback);
}

std::vector<RealFrame> oracle_3d_values(const SparseVideo& video, const EfanParams& params) {
    params.validate();
    const int n = static_cast<int>(video.frames.size());
    const int r = params.radius;
    const double inv = 1.0 / (params.sigma * params.sigma);
    std::vector<RealFrame> out(static_cast<std::size_t>(n));

    for (int z = 0; z < n; ++z) {
        RealFrame& rf = out[static_cast<std::size_t>(z)];
        rf.width = video.width;
        rf.height = video.height;
        rf.values.assign(static_cast<std::size_t>(video.width) * video.height * 3, 0.0);
        rf.mask.assign(static_cast<std::size_t>(video.width) * video.height, 0);
        const int f0 = std::max(0, z - params.temporal_halfwidth);
        const int f1 = std::min(n - 1, z + params.temporal_halfwidth);
        for (int y = 0; y < video.height; ++y) {
            for (int x = 0; x < video.width; ++x) {
                double num[3] = {0.0, 0.0, 0.0};
                double den = 0.0;
                for (int f = f0; f <= f1; ++f) {
                    const double wt = temporal_weight(z - f, params.sigma_t);
                    for (const Sample& s : video.frames[static_cast<std::size_t>(f)].samples) {
                        const int dx = x - s.x;
                        const int dy = y - s.y;
                        if (dx < -r || dx > r || dy < -r || dy > r) continue;
                        const double w =
                            std::exp(-0.5 * static_cast<double>(dx * dx + dy * dy) * inv) * wt;
                        num[0] += w * s.r;
                        num[1] += w * s.g;
                        num[2] += w * s.b;
                        den += w;
                    }
                }
                const std::size_t p = static_cast<std::size_t>(y) * video.width + x;
                if (den > 0.0) {
                    rf.mask[p] = 1;
                    rf.values[p * 3] = num[0] / den;
                    rf.values[p * 3 + 1] = num[1] / den;
                    rf.values[p * 3 + 2] = num[2] / den;
                }
            }
        }
    }
    return out;
}

std::vector<DenseFrame> oracle_3d(const SparseVideo& video, const EfanParams& params,
                                  Rgb fallback) {
    const std::vector<RealFrame> values = oracle_3d_values(video, params);
    std::vector<DenseFrame> out;
    out.reserve(values.size());
    for (const RealFrame& rf : values) out.push_back(quantize_real(rf, fallback));
    return out;
}

}  // namespace xvc
