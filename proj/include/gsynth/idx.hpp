#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "gsynth/image.hpp"

namespace gsynth {

/// IDX container (the MNIST binary layout): 4 magic bytes encoding
/// dtype and rank, big-endian 32-bit dimension counts, then raw
/// row-major data. All multi-byte values are big-endian.
///
/// Magic used here: 00 00 0D 03 (float32, rank 3), 00 00 08 03 (ubyte,
/// rank 3), 00 00 08 01 (ubyte, rank 1 - labels).

/// Lossless float32 export; the canonical dataset carrier. All images
/// must share one width/height.
void write_idx_float(const std::vector<GrayImage>& images,
                     const std::filesystem::path& path);

std::vector<GrayImage> read_idx_float(const std::filesystem::path& path);

/// clamp(nearbyint(128 + 127 * v / (4*sigma)), 0, 255); the +-4 sigma
/// window covers 99.994% of N(0, sigma^2) mass. Lossy by construction.
std::vector<std::uint8_t> quantize_image(const GrayImage& image, double sigma);

/// Count of pixels outside the +-4 sigma quantizer window.
std::size_t count_clipped(const GrayImage& image, double sigma);

/// Lossy u8 convenience export, standard MNIST image file layout.
void write_idx_u8(const std::vector<GrayImage>& images,
                  const std::filesystem::path& path, double sigma);

struct U8Images {
    int width = 0;
    int height = 0;
    std::vector<std::vector<std::uint8_t>> pixels;
};

U8Images read_idx_u8(const std::filesystem::path& path);

void write_idx_labels(const std::vector<std::uint8_t>& labels,
                      const std::filesystem::path& path);

std::vector<std::uint8_t> read_idx_labels(const std::filesystem::path& path);

}  // namespace gsynth
