#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "gsynth/image.hpp"

namespace gsynth {

enum class Polarity : std::uint8_t { InkIsBright, InkIsDark };

struct BinarizeRule {
    enum class Mode : std::uint8_t { Otsu, FixedThreshold };

    Mode mode = Mode::Otsu;
    int threshold = 128;  // used by FixedThreshold only

    static BinarizeRule otsu() { return {Mode::Otsu, 128}; }
    static BinarizeRule fixed(int t) {
        if (t < 0 || t > 255)
            throw std::invalid_argument("BinarizeRule: threshold must lie in [0, 255]");
        return {Mode::FixedThreshold, t};
    }
};

struct BinarizeResult {
    BinaryImage image;
    int threshold_used;
    bool otsu_fallback;  // constant image: fell back to FixedThreshold(128)
};

/// Threshold a 0-255 grayscale image. The bright class is v > t; dark
/// polarity selects the complement (v <= t). Otsu picks the t that
/// maximizes between-class variance over the 256-bin histogram, smallest
/// t on ties.
BinarizeResult binarize(const GrayImage& src, const BinarizeRule& rule,
                        Polarity polarity);

/// Otsu threshold of a 256-bin intensity histogram, or -1 when no
/// threshold separates two non-empty classes (constant image).
int otsu_threshold(const std::uint64_t histogram[256]);

enum class CropMode : std::uint8_t { GeometricCenter, ForegroundCentroid };

/// Cut an out_w x out_h window from src. GeometricCenter places the
/// window origin at ((h-out_h)/2, (w-out_w)/2) with floor division;
/// ForegroundCentroid centers the window on the foreground centroid and
/// clamps it into bounds (falling back to the geometric center when
/// there is no foreground).
BinaryImage central_crop(const BinaryImage& src, int out_w, int out_h, CropMode mode);

/// Halve a 64x64 binary image: each output pixel covers a disjoint 2x2
/// block and is foreground iff the block holds >= 2 foreground pixels
/// (majority, ties to foreground).
BinaryImage downsample_2x(const BinaryImage& src);

}  // namespace gsynth
