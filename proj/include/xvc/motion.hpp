#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "xvc/core.hpp"

namespace xvc {

/// Per-channel 256-bin normalized intensity distribution of a window.
struct ColorHistogram {
    std::array<std::array<double, 256>, 3> bins{};
    int count = 0;
};

struct MotionParams {
    double alpha = 0.95;  // uniform-mix smoothing weight, in (0, 1)
    double beta = 14.0;   // divergence impact on depth
    int window_size = 160;
    int fr_max = 49;  // maximum one-sided temporal depth
    // Window pairs with fewer samples than this carry no usable estimate
    // and are skipped by the divergence search.
    int min_window_samples = 8;

    void validate() const;
};

enum class Direction { forward, backward };

ColorHistogram histogram(const SparseFrame& frame, const Rect& window);
ColorHistogram histogram(const DenseFrame& frame, const Rect& window);

/// Mean over channels of D_KL(p~ || q~) with p~ = alpha*p + (1-alpha)/256
/// (natural log). The uniform mix keeps every bin positive, so the result
/// is finite and >= 0 for any two normalized histograms.
/// Throws if either histogram is empty (count == 0).
double smoothed_kl(const ColorHistogram& p, const ColorHistogram& q, double alpha);

/// Walks m = 1, 2, ... comparing the window's histogram in frame l against
/// frame l +/- m, and returns the divergence at the first m where the next
/// step would decrease it (or at the video boundary / fr_max cap). Pairs
/// with too few samples are skipped; with no valid pair at all the result
/// is 0 (no observed motion).
double divergence_search(const SparseVideo& video, const Rect& window, int l,
                         Direction direction, const MotionParams& params);

/// ceil(fr_max / (1 + beta*div)); monotone non-increasing in div with range
/// exactly [1, fr_max].
int depth_from_divergence(double div, int fr_max, double beta);

/// Smallest even window size >= 160*sqrt(0.01/f), clamped to [80, 160].
int default_window_size(double fraction);

/// Row-major stride grid of windows covering the frame; border windows are
/// clipped. stride <= size guarantees coverage.
std::vector<Rect> window_grid(int width, int height, int size, int stride);

/// One (sparse-estimate, dense ground-truth) divergence pair.
struct DivergencePair {
    double sparse_kl = 0.0;
    double dense_kl = 0.0;
};

/// Sparse-vs-dense KL estimates over all consecutive-frame pairs on a 50%
/// overlap grid of `window_size` windows. Pairs whose sparse windows are
/// under-sampled are dropped.
std::vector<DivergencePair> divergence_dataset(const std::vector<DenseFrame>& dense,
                                               const SparseVideo& sparse, int window_size,
                                               const MotionParams& params);

double mean_squared_error(const std::vector<DivergencePair>& pairs);
double pearson_correlation(const std::vector<DivergencePair>& pairs);

struct MseRange {
    double lo = 0.15;
    double hi = 0.2;
};

struct CalibrationEntry {
    int window_size = 0;
    double mse = 0.0;
    double pearson_r = 0.0;
};

class CalibrationError : public std::runtime_error {
public:
    CalibrationError(std::string message, std::vector<CalibrationEntry> table_)
        : std::runtime_error(std::move(message)), table(std::move(table_)) {}

    std::vector<CalibrationEntry> table;
};

/// Returns the smallest candidate whose sparse-vs-dense KL MSE is within
/// range (<= range.hi). Throws CalibrationError carrying the full per-size
/// table when no candidate qualifies. If table_out is non-null the table is
/// stored there as well.
int calibrate_window_size(const std::vector<DenseFrame>& dense, const SparseVideo& sparse,
                          const std::vector<int>& candidate_sizes, MseRange range,
                          const MotionParams& params,
                          std::vector<CalibrationEntry>* table_out = nullptr);

}  // namespace xvc
