#include "xvc/core.hpp"

#include <cmath>
#include <stdexcept>

namespace xvc {

void AccumulatorPlane::merge(const AccumulatorPlane& other) {
    if (other.width != width || other.height != height) {
        throw std::invalid_argument("AccumulatorPlane::merge: dimension mismatch");
    }
    for (std::size_t i = 0; i < numer.size(); ++i) numer[i] += other.numer[i];
    for (std::size_t i = 0; i < denom.size(); ++i) denom[i] += other.denom[i];
}

std::uint8_t quantize_intensity(double v) {
    const long long q = std::llround(v);  // ties away from zero
    if (q < 0) return 0;
    if (q > 255) return 255;
    return static_cast<std::uint8_t>(q);
}

DenseFrame normalize(const AccumulatorPlane& acc, Rgb fallback) {
    DenseFrame out(acc.width, acc.height);
    const std::size_t pixels = acc.denom.size();
    for (std::size_t p = 0; p < pixels; ++p) {
        const double d = acc.denom[p];
        if (d > 0.0) {
            out.data[p * 3] = quantize_intensity(acc.numer[p * 3] / d);
            out.data[p * 3 + 1] = quantize_intensity(acc.numer[p * 3 + 1] / d);
            out.data[p * 3 + 2] = quantize_intensity(acc.numer[p * 3 + 2] / d);
        } else {
            out.data[p * 3] = fallback.r;
            out.data[p * 3 + 1] = fallback.g;
            out.data[p * 3 + 2] = fallback.b;
        }
    }
    return out;
}

RealFrame resolve(const AccumulatorPlane& acc) {
    RealFrame out;
    out.width = acc.width;
    out.height = acc.height;
    out.values.assign(acc.numer.size(), 0.0);
    out.mask.assign(acc.denom.size(), 0);
    for (std::size_t p = 0; p < acc.denom.size(); ++p) {
        const double d = acc.denom[p];
        if (d > 0.0) {
            out.mask[p] = 1;
            out.values[p * 3] = acc.numer[p * 3] / d;
            out.values[p * 3 + 1] = acc.numer[p * 3 + 1] / d;
            out.values[p * 3 + 2] = acc.numer[p * 3 + 2] / d;
        }
    }
    return out;
}

}  // namespace xvc
