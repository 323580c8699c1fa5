#include "xvc/motion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace xvc {

void MotionParams::validate() const {
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw std::invalid_argument("MotionParams: alpha must be in (0, 1)");
    }
    if (!(beta >= 0.0)) throw std::invalid_argument("MotionParams: beta must be >= 0");
    if (window_size < 1) throw std::invalid_argument("MotionParams: window_size must be >= 1");
    if (fr_max < 1) throw std::invalid_argument("MotionParams: fr_max must be >= 1");
    if (min_window_samples < 1) {
        throw std::invalid_argument("MotionParams: min_window_samples must be >= 1");
    }
}

ColorHistogram histogram(const SparseFrame& frame, const Rect& window) {
    ColorHistogram h;
    for (const Sample& s : frame.samples) {
        if (!window.contains(s.x, s.y)) continue;
        h.bins[0][s.r] += 1.0;
        h.bins[1][s.g] += 1.0;
        h.bins[2][s.b] += 1.0;
        ++h.count;
    }
    if (h.count > 0) {
        const double inv = 1.0 / h.count;
        for (auto& channel : h.bins) {
            for (double& bin : channel) bin *= inv;
        }
    }
    return h;
}

ColorHistogram histogram(const DenseFrame& frame, const Rect& window) {
    ColorHistogram h;
    const int x0 = std::max(0, window.x);
    const int y0 = std::max(0, window.y);
    const int x1 = std::min(frame.width, window.x + window.w);
    const int y1 = std::min(frame.height, window.y + window.h);
    for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) {
            const std::size_t o = frame.offset(x, y);
            h.bins[0][frame.data[o]] += 1.0;
            h.bins[1][frame.data[o + 1]] += 1.0;
            h.bins[2][frame.data[o + 2]] += 1.0;
            ++h.count;
        }
    }
    if (h.count > 0) {
        const double inv = 1.0 / h.count;
        for (auto& channel : h.bins) {
            for (double& bin : channel) bin *= inv;
        }
    }
    return h;
}

double smoothed_kl(const ColorHistogram& p, const ColorHistogram& q, double alpha) {
    if (p.count == 0 || q.count == 0) {
        throw std::invalid_argument("smoothed_kl: histograms must be non-empty");
    }
    const double uniform = (1.0 - alpha) / 256.0;
    double total = 0.0;
    for (int ch = 0; ch < 3; ++ch) {
        double kl = 0.0;
        for (int c = 0; c < 256; ++c) {
            const double pc = alpha * p.bins[ch][c] + uniform;
            const double qc = alpha * q.bins[ch][c] + uniform;
            kl += pc * std::log(pc / qc);
        }
        total += kl;
    }
    return total / 3.0;
}

double divergence_search(const SparseVideo& video, const Rect& window, int l,
                         Direction direction, const MotionParams& params) {
    params.validate();
    const int n = static_cast<int>(video.frames.size());
    if (l < 0 || l >= n) throw std::invalid_argument("divergence_search: frame index out of range");

    const ColorHistogram base = histogram(video.frames[static_cast<std::size_t>(l)], window);
    if (base.count < params.min_window_samples) return 0.0;

    const int step = direction == Direction::forward ? 1 : -1;
    bool have_last = false;
    double last = 0.0;
    for (int m = 1; m <= params.fr_max; ++m) {
        const int z = l + step * m;
        if (z < 0 || z >= n) break;
        const ColorHistogram h = histogram(video.frames[static_cast<std::size_t>(z)], window);
        if (h.count < params.min_window_samples) continue;
        const double d = smoothed_kl(base, h, params.alpha);
        if (have_last && d < last) return last;  // divergence started to fall: stop
        last = d;
        have_last = true;
    }
    return have_last ? last : 0.0;
}

int depth_from_divergence(double div, int fr_max, double beta) {
    if (div < 0.0) throw std::invalid_argument("depth_from_divergence: div must be >= 0");
    const double depth = std::ceil(static_cast<double>(fr_max) / (1.0 + beta * div));
    return static_cast<int>(std::clamp(depth, 1.0, static_cast<double>(fr_max)));
}

int default_window_size(double fraction) {
    if (!(fraction > 0.0) || fraction > 1.0) {
        throw std::invalid_argument("default_window_size: fraction must be in (0, 1]");
    }
    const double target = 160.0 * std::sqrt(0.01 / fraction);
    int size = static_cast<int>(std::ceil(target));
    if (size % 2 != 0) ++size;
    return std::clamp(size, 80, 160);
}

std::vector<Rect> window_grid(int width, int height, int size, int stride) {
    if (size < 1 || stride < 1 || stride > size) {
        throw std::invalid_argument("window_grid: need 1 <= stride <= size");
    }
    std::vector<Rect> grid;
    for (int y = 0; y < height; y += stride) {
        for (int x = 0; x < width; x += stride) {
            grid.push_back(Rect{x, y, std::min(size, width - x), std::min(size, height - y)});
        }
    }
    return grid;
}

std::vector<DivergencePair> divergence_dataset(const std::vector<DenseFrame>& dense,
                                               const SparseVideo& sparse, int window_size,
                                               const MotionParams& params) {
    params.validate();
    if (dense.size() != sparse.frames.size()) {
        throw std::invalid_argument("divergence_dataset: frame count mismatch");
    }
    std::vector<DivergencePair> pairs;
    if (dense.size() < 2) return pairs;

    // Only full-size windows: clipped border rectangles carry a different
    // sample count, hence a different estimator noise floor, and would
    // contaminate the per-size comparison.
    std::vector<Rect> grid;
    for (const Rect& w :
         window_grid(sparse.width, sparse.height, window_size, std::max(1, window_size / 2))) {
        if (w.w == window_size && w.h == window_size) grid.push_back(w);
    }
    for (std::size_t l = 0; l + 1 < dense.size(); ++l) {
        for (const Rect& w : grid) {
            const ColorHistogram sp = histogram(sparse.frames[l], w);
            const ColorHistogram sq = histogram(sparse.frames[l + 1], w);
            if (sp.count < params.min_window_samples || sq.count < params.min_window_samples) {
                continue;
            }
            const ColorHistogram dp = histogram(dense[l], w);
            const ColorHistogram dq = histogram(dense[l + 1], w);
            pairs.push_back(DivergencePair{smoothed_kl(sp, sq, params.alpha),
                                           smoothed_kl(dp, dq, params.alpha)});
        }
    }
    return pairs;
}

double mean_squared_error(const std::vector<DivergencePair>& pairs) {
    if (pairs.empty()) return 0.0;
    double sum = 0.0;
    for (const DivergencePair& p : pairs) {
        const double d = p.sparse_kl - p.dense_kl;
        sum += d * d;
    }
    return sum / static_cast<double>(pairs.size());
}

double pearson_correlation(const std::vector<DivergencePair>& pairs) {
    const std::size_t n = pairs.size();
    if (n < 2) return 0.0;
    double mx = 0.0, my = 0.0;
    for (const DivergencePair& p : pairs) {
        mx += p.sparse_kl;
        my += p.dense_kl;
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (const DivergencePair& p : pairs) {
        const double dx = p.sparse_kl - mx;
        const double dy = p.dense_kl - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

int calibrate_window_size(const std::vector<DenseFrame>& dense, const SparseVideo& sparse,
                          const std::vector<int>& candidate_sizes, MseRange range,
                          const MotionParams& params,
                          std::vector<CalibrationEntry>* table_out) {
    if (candidate_sizes.empty()) {
        throw std::invalid_argument("calibrate_window_size: no candidate sizes");
    }
    std::vector<int> sizes = candidate_sizes;
    std::sort(sizes.begin(), sizes.end());

    std::vector<CalibrationEntry> table;
    table.reserve(sizes.size());
    int chosen = -1;
    for (int size : sizes) {
        const std::vector<DivergencePair> pairs = divergence_dataset(dense, sparse, size, params);
        CalibrationEntry entry;
        entry.window_size = size;
        entry.mse = mean_squared_error(pairs);
        entry.pearson_r = pearson_correlation(pairs);
        table.push_back(entry);
        if (chosen < 0 && !pairs.empty() && entry.mse <= range.hi) chosen = size;
    }
    if (table_out != nullptr) *table_out = table;
    if (chosen < 0) {
        std::ostringstream msg;
        msg << "calibrate_window_size: no candidate reaches MSE <= " << range.hi << " (";
        for (std::size_t i = 0; i < table.size(); ++i) {
            if (i > 0) msg << ", ";
            msg << table[i].window_size << ": " << table[i].mse;
        }
        msg << ")";
        throw CalibrationError(msg.str(), table);
    }
    return chosen;
}

}  // namespace xvc
