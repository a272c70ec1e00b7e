#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gsynth {

/// Row-major grid of real-valued intensities. Origin is the top-left
/// corner, addressed as (row, col).
class GrayImage {
public:
    GrayImage(int width, int height, float fill = 0.0f)
        : width_(width), height_(height) {
        check_dims(width, height);
        values_.assign(static_cast<std::size_t>(width) * height, fill);
    }

    GrayImage(int width, int height, std::vector<float> values)
        : width_(width), height_(height), values_(std::move(values)) {
        check_dims(width, height);
        if (values_.size() != static_cast<std::size_t>(width) * height)
            throw std::invalid_argument("GrayImage: values length != width * height");
    }

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return values_.size(); }

    float at(int r, int c) const { return values_[index(r, c)]; }
    float& at(int r, int c) { return values_[index(r, c)]; }

    const std::vector<float>& values() const { return values_; }
    std::vector<float>& values() { return values_; }

private:
    static void check_dims(int w, int h) {
        if (w <= 0 || h <= 0)
            throw std::invalid_argument("GrayImage: width and height must be positive");
    }
    std::size_t index(int r, int c) const {
        return static_cast<std::size_t>(r) * width_ + c;
    }

    int width_;
    int height_;
    std::vector<float> values_;
};

/// Row-major grid over {0 = background, 1 = foreground}.
class BinaryImage {
public:
    BinaryImage(int width, int height, std::uint8_t fill = 0)
        : width_(width), height_(height) {
        check_dims(width, height);
        bits_.assign(static_cast<std::size_t>(width) * height, fill ? 1 : 0);
    }

    BinaryImage(int width, int height, std::vector<std::uint8_t> bits)
        : width_(width), height_(height), bits_(std::move(bits)) {
        check_dims(width, height);
        if (bits_.size() != static_cast<std::size_t>(width) * height)
            throw std::invalid_argument("BinaryImage: bits length != width * height");
    }

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return bits_.size(); }

    std::uint8_t at(int r, int c) const { return bits_[index(r, c)]; }
    std::uint8_t& at(int r, int c) { return bits_[index(r, c)]; }

    bool in_bounds(int r, int c) const {
        return r >= 0 && r < height_ && c >= 0 && c < width_;
    }

    std::size_t foreground_count() const {
        std::size_t n = 0;
        for (auto b : bits_) n += b;
        return n;
    }

    const std::vector<std::uint8_t>& bits() const { return bits_; }
    std::vector<std::uint8_t>& bits() { return bits_; }

private:
    static void check_dims(int w, int h) {
        if (w <= 0 || h <= 0)
            throw std::invalid_argument("BinaryImage: width and height must be positive");
    }
    std::size_t index(int r, int c) const {
        return static_cast<std::size_t>(r) * width_ + c;
    }

    int width_;
    int height_;
    std::vector<std::uint8_t> bits_;
};

/// The four pixel classes a digit mask decomposes into.
enum class Region : std::uint8_t {
    Outside = 0,
    OutsideBoundary = 1,
    InsideBoundary = 2,
    Inside = 3,
};

inline const char* region_name(Region r) {
    switch (r) {
        case Region::Outside: return "outside";
        case Region::OutsideBoundary: return "outside-boundary";
        case Region::InsideBoundary: return "inside-boundary";
        case Region::Inside: return "inside";
    }
    return "?";
}

/// A single-label-per-pixel partition of a grid into the four regions.
/// Disjointness and full coverage hold by representation; the cached
/// per-region counts are derived from the labels at construction.
class RegionPartition {
public:
    RegionPartition(int width, int height, std::vector<Region> labels)
        : width_(width), height_(height), labels_(std::move(labels)) {
        if (width <= 0 || height <= 0)
            throw std::invalid_argument("RegionPartition: width and height must be positive");
        if (labels_.size() != static_cast<std::size_t>(width) * height)
            throw std::invalid_argument("RegionPartition: labels length != width * height");
        sizes_.fill(0);
        for (Region r : labels_) ++sizes_[static_cast<std::size_t>(r)];
    }

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t pixel_count() const { return labels_.size(); }

    Region label(int r, int c) const {
        return labels_[static_cast<std::size_t>(r) * width_ + c];
    }
    const std::vector<Region>& labels() const { return labels_; }

    /// Counts indexed by Region enum order: outside, outside-boundary,
    /// inside-boundary, inside.
    const std::array<std::size_t, 4>& region_sizes() const { return sizes_; }
    std::size_t size_of(Region r) const { return sizes_[static_cast<std::size_t>(r)]; }

private:
    int width_;
    int height_;
    std::vector<Region> labels_;
    std::array<std::size_t, 4> sizes_;
};

RegionPartition partition_from_labels(std::vector<Region> labels, int width, int height);

/// One image's worth of Gaussian draws plus its descending-sorted form.
/// Sorting is stable so that equal values keep draw order; the placement
/// step depends on this for bit-exact regeneration.
class GaussianVector {
public:
    static constexpr std::size_t kLength = 1024;

    explicit GaussianVector(std::vector<float> raw);

    const std::vector<float>& raw() const { return raw_; }
    const std::vector<float>& sorted_desc() const { return sorted_desc_; }

private:
    std::vector<float> raw_;
    std::vector<float> sorted_desc_;
};

}  // namespace gsynth
