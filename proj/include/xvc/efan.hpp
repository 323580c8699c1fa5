#pragma once

#include <vector>

#include "xvc/core.hpp"

namespace xvc {

/// Filter scales for the normalized Gaussian completion. The spatial window
/// is the square of side 2*radius + 1 centered on the output pixel; the
/// temporal extent is [z - temporal_halfwidth, z + temporal_halfwidth].
struct EfanParams {
    double sigma = 1.0;
    int radius = 1;
    double sigma_t = 49.0 / 6.0;
    int temporal_halfwidth = 49;

    void validate() const;  // throws std::invalid_argument
};

/// Scale rule for a sampling fraction f: sigma = sqrt(1/(f*pi)), window side
/// 2*ceil(0.5 + 3*sigma) + 5 (always odd), sigma_t = 49/6 with 49 frames of
/// temporal support per side.
EfanParams default_params(double fraction);

/// (2R+1)^2 truncated Gaussian table over integer offsets; entry
/// [(dy+R)*(2R+1) + (dx+R)] = exp(-0.5*(dx^2+dy^2)/sigma^2). No tail
/// renormalization: exactness against the gather oracle depends on the hard
/// window cutoff.
std::vector<double> spatial_kernel(const EfanParams& params);

double temporal_weight(int dz, double sigma_t);

/// Scatters every sample's kernel into an accumulator, clipping at frame
/// borders. The scatter is the exact dual of the per-pixel gather: a sample
/// contributes to pixel i iff i's window contains it.
AccumulatorPlane splat_frame(const SparseFrame& frame, const EfanParams& params);

/// Temporal Gaussian combination of per-frame accumulators for output frame
/// z. Exact w.r.t. direct 3D evaluation because the weight factors into
/// spatial and temporal parts.
AccumulatorPlane combine_temporal(const std::vector<AccumulatorPlane>& planes, int z,
                                  int halfwidth, double sigma_t);

DenseFrame complete_frame_2d(const SparseFrame& frame, const EfanParams& params,
                             Rgb fallback = {0, 0, 0});

std::vector<DenseFrame> complete_video_2d(const SparseVideo& video, const EfanParams& params,
                                          Rgb fallback = {0, 0, 0}, int threads = 0);

std::vector<DenseFrame> complete_video_3d(const SparseVideo& video, const EfanParams& params,
                                          Rgb fallback = {0, 0, 0}, int threads = 0);

/// Per-frame spatial accumulators (the splat stage of the 3D filter),
/// shared by the adaptive-depth pipeline.
std::vector<AccumulatorPlane> splat_video(const SparseVideo& video, const EfanParams& params,
                                          int threads = 0);

// Brute-force references: literal per-pixel gathers over every known sample
// in the neighborhood. Kept for differential testing of the scatter path.

RealFrame oracle_2d_values(const SparseFrame& frame, const EfanParams& params);
DenseFrame oracle_2d(const SparseFrame& frame, const EfanParams& params, Rgb fallback = {0, 0, 0});

std::vector<RealFrame> oracle_3d_values(const SparseVideo& video, const EfanParams& params);
std::vector<DenseFrame> oracle_3d(const SparseVideo& video, const EfanParams& params,
                                  Rgb fallback = {0, 0, 0});

}  // namespace xvc
