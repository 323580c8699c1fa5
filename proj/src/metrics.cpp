#include "xvc/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace xvc {

namespace {

double sum_squared_error(const DenseFrame& a, const DenseFrame& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        const double d = static_cast<double>(a.data[i]) - static_cast<double>(b.data[i]);
        sum += d * d;
    }
    return sum;
}

double psnr_from_mse(double mse) {
    if (mse <= 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

void check_dims(const DenseFrame& a, const DenseFrame& b) {
    if (a.width != b.width || a.height != b.height) {
        throw std::invalid_argument("psnr: dimension mismatch (" + std::to_string(a.width) + "x" +
                                    std::to_string(a.height) + " vs " + std::to_string(b.width) +
                                    "x" + std::to_string(b.height) + ")");
    }
}

}  // namespace

double frame_mse(const DenseFrame& reference, const DenseFrame& test) {
    check_dims(reference, test);
    if (reference.data.empty()) return 0.0;
    return sum_squared_error(reference, test) / static_cast<double>(reference.data.size());
}

double psnr(const DenseFrame& reference, const DenseFrame& test) {
    return psnr_from_mse(frame_mse(reference, test));
}

PsnrReport psnr_video(const std::vector<DenseFrame>& reference,
                      const std::vector<DenseFrame>& test) {
    if (reference.size() != test.size()) {
        throw std::invalid_argument("psnr_video: frame count mismatch (" +
                                    std::to_string(reference.size()) + " vs " +
                                    std::to_string(test.size()) + ")");
    }
    PsnrReport report;
    report.per_frame_db.reserve(reference.size());
    double total_sq = 0.0;
    double total_values = 0.0;
    double psnr_sum = 0.0;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        check_dims(reference[i], test[i]);
        const double sq = sum_squared_error(reference[i], test[i]);
        total_sq += sq;
        total_values += static_cast<double>(reference[i].data.size());
        const double db = psnr_from_mse(
            reference[i].data.empty() ? 0.0 : sq / static_cast<double>(reference[i].data.size()));
        report.per_frame_db.push_back(db);
        psnr_sum += db;
    }
    report.mse = total_values > 0.0 ? total_sq / total_values : 0.0;
    report.pooled_db = psnr_from_mse(report.mse);
    report.mean_frames_db = report.per_frame_db.empty()
                                ? psnr_from_mse(0.0)
                                : psnr_sum / static_cast<double>(report.per_frame_db.size());
    return report;
}

}  // namespace xvc
