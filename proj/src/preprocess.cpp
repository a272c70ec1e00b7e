#include "gsynth/preprocess.hpp"

#include <algorithm>
#include <cmath>

namespace gsynth {

int otsu_threshold(const std::uint64_t histogram[256]) {
    std::uint64_t total = 0;
    double weighted_total = 0.0;
    for (int v = 0; v < 256; ++v) {
        total += histogram[v];
        weighted_total += static_cast<double>(v) * histogram[v];
    }
    if (total == 0) return -1;

    // split at t: lower class [0..t], upper class [t+1..255]
    int best_t = -1;
    double best_var = -1.0;
    std::uint64_t count_lo = 0;
    double sum_lo = 0.0;
    for (int t = 0; t < 255; ++t) {
        count_lo += histogram[t];
        sum_lo += static_cast<double>(t) * histogram[t];
        const std::uint64_t count_hi = total - count_lo;
        if (count_lo == 0 || count_hi == 0) continue;
        const double mean_lo = sum_lo / count_lo;
        const double mean_hi = (weighted_total - sum_lo) / count_hi;
        const double diff = mean_lo - mean_hi;
        const double between =
            static_cast<double>(count_lo) * static_cast<double>(count_hi) * diff * diff;
        if (between > best_var) {
            best_var = between;
            best_t = t;
        }
    }
    return best_t;
}

BinarizeResult binarize(const GrayImage& src, const BinarizeRule& rule,
                        Polarity polarity) {
    int threshold = rule.threshold;
    bool fallback = false;
    if (rule.mode == BinarizeRule::Mode::Otsu) {
        std::uint64_t hist[256] = {};
        for (float v : src.values()) {
            long bin = std::lrintf(v);
            bin = std::clamp(bin, 0L, 255L);
            ++hist[bin];
        }
        threshold = otsu_threshold(hist);
        if (threshold < 0) {
            threshold = 128;
            fallback = true;
        }
    } else {
        if (threshold < 0 || threshold > 255)
            throw std::invalid_argument("binarize: threshold must lie in [0, 255]");
    }

    BinaryImage out(src.width(), src.height());
    const float t = static_cast<float>(threshold);
    const bool bright = polarity == Polarity::InkIsBright;
    const auto& vals = src.values();
    auto& bits = out.bits();
    for (std::size_t i = 0; i < vals.size(); ++i) {
        const bool upper = vals[i] > t;
        bits[i] = (upper == bright) ? 1 : 0;
    }
    return {std::move(out), threshold, fallback};
}

BinaryImage central_crop(const BinaryImage& src, int out_w, int out_h, CropMode mode) {
    if (out_w <= 0 || out_h <= 0)
        throw std::invalid_argument("central_crop: output dims must be positive");
    if (src.width() < out_w || src.height() < out_h)
        throw std::invalid_argument(
            "central_crop: source (" + std::to_string(src.width()) + "x" +
            std::to_string(src.height()) + ") smaller than requested window");

    int origin_r = (src.height() - out_h) / 2;
    int origin_c = (src.width() - out_w) / 2;

    if (mode == CropMode::ForegroundCentroid) {
        std::uint64_t n = 0, sum_r = 0, sum_c = 0;
        for (int r = 0; r < src.height(); ++r)
            for (int c = 0; c < src.width(); ++c)
                if (src.at(r, c)) {
                    ++n;
                    sum_r += r;
                    sum_c += c;
                }
        if (n > 0) {
            const long cr = std::lround(static_cast<double>(sum_r) / n);
            const long cc = std::lround(static_cast<double>(sum_c) / n);
            origin_r = static_cast<int>(cr) - out_h / 2;
            origin_c = static_cast<int>(cc) - out_w / 2;
            origin_r = std::clamp(origin_r, 0, src.height() - out_h);
            origin_c = std::clamp(origin_c, 0, src.width() - out_w);
        }
    }

    BinaryImage out(out_w, out_h);
    for (int r = 0; r < out_h; ++r)
        for (int c = 0; c < out_w; ++c)
            out.at(r, c) = src.at(origin_r + r, origin_c + c);
    return out;
}

BinaryImage downsample_2x(const BinaryImage& src) {
    if (src.width() != 64 || src.height() != 64)
        throw std::invalid_argument("downsample_2x: expected a 64x64 input, got " +
                                    std::to_string(src.width()) + "x" +
                                    std::to_string(src.height()));
    BinaryImage out(32, 32);
    for (int r = 0; r < 32; ++r)
        for (int c = 0; c < 32; ++c) {
            const int count = src.at(2 * r, 2 * c) + src.at(2 * r, 2 * c + 1) +
                              src.at(2 * r + 1, 2 * c) + src.at(2 * r + 1, 2 * c + 1);
            out.at(r, c) = count >= 2 ? 1 : 0;
        }
    return out;
}

}  // namespace gsynth
