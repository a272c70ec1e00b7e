#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "gsynth/image.hpp"

namespace gsynth {

struct CannyParams {
    double blur_sigma = 1.0;
    double low_threshold = 0.1;   // fraction of the max gradient magnitude
    double high_threshold = 0.3;  // ditto; low <= high

    void validate() const {
        if (!(blur_sigma > 0.0))
            throw std::invalid_argument("CannyParams: blur_sigma must be positive");
        if (!(low_threshold > 0.0 && low_threshold <= high_threshold &&
              high_threshold <= 1.0))
            throw std::invalid_argument(
                "CannyParams: need 0 < low_threshold <= high_threshold <= 1");
    }
};

/// Row-major {0,1} edge marks.
class EdgeMap {
public:
    EdgeMap(int width, int height)
        : width_(width), height_(height),
          edge_(static_cast<std::size_t>(width) * height, 0) {
        if (width <= 0 || height <= 0)
            throw std::invalid_argument("EdgeMap: width and height must be positive");
    }

    int width() const { return width_; }
    int height() const { return height_; }
    std::uint8_t at(int r, int c) const {
        return edge_[static_cast<std::size_t>(r) * width_ + c];
    }
    std::uint8_t& at(int r, int c) {
        return edge_[static_cast<std::size_t>(r) * width_ + c];
    }
    const std::vector<std::uint8_t>& edge() const { return edge_; }
    std::size_t edge_count() const {
        std::size_t n = 0;
        for (auto e : edge_) n += e;
        return n;
    }

private:
    int width_;
    int height_;
    std::vector<std::uint8_t> edge_;
};

/// Separable Gaussian blur, kernel radius ceil(3*sigma), reflect-101
/// borders. Weights use det::exp, so blurred images are reproducible
/// across platforms.
GrayImage gaussian_blur(const GrayImage& src, double sigma);

/// Classical Canny over a binary image treated as 0/255 grayscale:
/// blur -> Sobel -> 4-bin direction quantization -> non-maximum
/// suppression -> double-threshold hysteresis with 8-connected linking
/// from strong pixels. Thresholds are fractions of the maximum gradient
/// magnitude.
EdgeMap canny(const BinaryImage& src, const CannyParams& params);

}  // namespace gsynth
