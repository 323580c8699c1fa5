#pragma once

#include <string>
#include <vector>

#include "xvc/core.hpp"
#include "xvc/efan.hpp"
#include "xvc/motion.hpp"

namespace xvc {

struct AdefanParams {
    EfanParams efan;
    MotionParams motion;
    int window_stride = 80;          // default: 50% overlap (window_size / 2)
    double blend_sigma_ratio = 6.0;  // blend sigma = window_size / ratio

    // Test hooks. forced_depth > 0 pins every window depth to that value;
    // divergence_scale multiplies every measured divergence before the
    // depth formula is applied.
    int forced_depth = 0;
    double divergence_scale = 1.0;

    void validate() const;
};

/// All scales derived from the sampling fraction: filter scales from
/// default_params, window size from default_window_size, 50% stride.
AdefanParams default_adefan_params(double fraction);

/// Forward/backward temporal depth of one grid window. Depth d covers d
/// frames on that side including the current one, so depth 1 is the
/// spatial-only (2D) special case.
struct WindowDepth {
    Rect rect;
    int depth_fwd = 1;
    int depth_bwd = 1;
};

/// Per-frame depth grid; windows appear in row-major grid order.
struct DepthField {
    std::vector<WindowDepth> windows;
};

std::vector<DepthField> compute_depth_fields(const SparseVideo& video,
                                             const AdefanParams& params, int threads = 0);

/// One window's unquantized filter output plus its Gaussian blend weights
/// (zero wherever the window saw no sample).
struct WindowResult {
    Rect rect;
    std::vector<double> values;   // rect.w * rect.h * 3
    std::vector<double> weights;  // rect.w * rect.h
};

/// Depth-limited completion of a single window of frame l: the spatial
/// splats of frames [l-(depth_bwd-1), l+(depth_fwd-1)] are combined with
/// the truncated temporal Gaussian and resolved over the window pixels.
WindowResult complete_window(const SparseVideo& video, int l, const Rect& window, int depth_fwd,
                             int depth_bwd, const AdefanParams& params);

/// Weighted average of overlapping window contents; quantization to 8 bits
/// happens here only.
DenseFrame assemble_frame(const std::vector<WindowResult>& partials, int width, int height,
                          Rgb fallback = {0, 0, 0});

std::vector<DenseFrame> complete_video_adefan(const SparseVideo& video, const AdefanParams& params,
                                              Rgb fallback = {0, 0, 0}, int threads = 0);

/// CSV rows (frame, window_x, window_y, depth_fwd, depth_bwd), one line per
/// window per frame, for inspection of the depth decisions.
std::string depth_fields_csv(const std::vector<DepthField>& fields);

}  // namespace xvc
