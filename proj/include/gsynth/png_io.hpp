#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "gsynth/image.hpp"

namespace gsynth {

/// 8-bit grayscale PNG writer (color type 0, no interlace).
void write_png_gray(const std::filesystem::path& path,
                    const std::vector<std::uint8_t>& pixels, int width, int height);

/// PNG reader covering the common still-image cases: gray 1/2/4/8-bit,
/// 8-bit RGB/RGBA (converted to luma), 8-bit palette. Interlaced files
/// and 16-bit depths are rejected with a DataError. Values come back as
/// 0-255 floats.
GrayImage read_png_gray(const std::filesystem::path& path);

/// Binary PGM (P5, maxval <= 255).
void write_pgm(const std::filesystem::path& path,
               const std::vector<std::uint8_t>& pixels, int width, int height);
GrayImage read_pgm(const std::filesystem::path& path);

/// Dispatch by extension (.png, .pgm).
GrayImage read_image(const std::filesystem::path& path);

/// Quantize a synthetic image (see quantize_image) and write it as PNG;
/// the PNG pixel bytes equal the u8 IDX bytes for the same image.
void write_png_preview(const GrayImage& image, const std::filesystem::path& path,
                       double sigma);

}  // namespace gsynth
