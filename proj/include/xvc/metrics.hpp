#pragma once

#include <vector>

#include "xvc/core.hpp"

namespace xvc {

/// Video PSNR report. pooled_db comes from the MSE aggregated over all
/// frames (the headline number); mean_frames_db averages the per-frame
/// PSNRs. Identical content yields +inf.
struct PsnrReport {
    std::vector<double> per_frame_db;
    double mean_frames_db = 0.0;
    double pooled_db = 0.0;
    double mse = 0.0;
};

/// Mean squared error over all pixels and channels.
double frame_mse(const DenseFrame& reference, const DenseFrame& test);

/// 10*log10(255^2 / MSE); +inf when the frames are identical.
double psnr(const DenseFrame& reference, const DenseFrame& test);

PsnrReport psnr_video(const std::vector<DenseFrame>& reference,
                      const std::vector<DenseFrame>& test);

}  // namespace xvc
