#include "gsynth/idx.hpp"

#include <cstring>
#include <fstream>

#include "gsynth/error.hpp"
#include "gsynth/kernels.hpp"

namespace gsynth {

namespace {

constexpr std::uint32_t kMagicFloat3 = 0x00000D03;
constexpr std::uint32_t kMagicU8_3 = 0x00000803;
constexpr std::uint32_t kMagicU8_1 = 0x00000801;

void put_be32(std::ostream& os, std::uint32_t v) {
    const unsigned char b[4] = {
        static_cast<unsigned char>(v >> 24), static_cast<unsigned char>(v >> 16),
        static_cast<unsigned char>(v >> 8), static_cast<unsigned char>(v)};
    os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_be32(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    if (!is) throw DataError("idx: truncated header");
    return (std::uint32_t(b[0]) << 24) | (std::uint32_t(b[1]) << 16) |
           (std::uint32_t(b[2]) << 8) | std::uint32_t(b[3]);
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw DataError("idx: cannot open for writing: " + path.string());
    return os;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw DataError("idx: cannot open: " + path.string());
    return is;
}

void check_uniform_dims(const std::vector<GrayImage>& images) {
    for (const auto& im : images)
        if (im.width() != images.front().width() ||
            im.height() != images.front().height())
            throw std::invalid_argument("idx: images must share one size");
}

}  // namespace

void write_idx_float(const std::vector<GrayImage>& images,
                     const std::filesystem::path& path) {
    check_uniform_dims(images);
    const int w = images.empty() ? 0 : images.front().width();
    const int h = images.empty() ? 0 : images.front().height();

    auto os = open_out(path);
    put_be32(os, kMagicFloat3);
    put_be32(os, static_cast<std::uint32_t>(images.size()));
    put_be32(os, static_cast<std::uint32_t>(h));
    put_be32(os, static_cast<std::uint32_t>(w));
    std::vector<unsigned char> row(static_cast<std::size_t>(w) * 4);
    for (const auto& im : images) {
        for (int r = 0; r < h; ++r) {
            for (int c = 0; c < w; ++c) {
                std::uint32_t bits;
                const float v = im.at(r, c);
                std::memcpy(&bits, &v, 4);
                row[c * 4 + 0] = static_cast<unsigned char>(bits >> 24);
                row[c * 4 + 1] = static_cast<unsigned char>(bits >> 16);
                row[c * 4 + 2] = static_cast<unsigned char>(bits >> 8);
                row[c * 4 + 3] = static_cast<unsigned char>(bits);
            }
            os.write(reinterpret_cast<const char*>(row.data()), row.size());
        }
    }
    if (!os) throw DataError("idx: write failed: " + path.string());
}

std::vector<GrayImage> read_idx_float(const std::filesystem::path& path) {
    auto is = open_in(path);
    if (get_be32(is) != kMagicFloat3)
        throw DataError("idx: not a float32 rank-3 file: " + path.string());
    const std::uint32_t n = get_be32(is);
    const std::uint32_t h = get_be32(is);
    const std::uint32_t w = get_be32(is);

    std::vector<GrayImage> out;
    out.reserve(n);
    std::vector<unsigned char> buf(static_cast<std::size_t>(w) * h * 4);
    for (std::uint32_t i = 0; i < n; ++i) {
        is.read(reinterpret_cast<char*>(buf.data()), buf.size());
        if (!is) throw DataError("idx: truncated image data: " + path.string());
        std::vector<float> vals(static_cast<std::size_t>(w) * h);
        for (std::size_t p = 0; p < vals.size(); ++p) {
            const std::uint32_t bits = (std::uint32_t(buf[p * 4]) << 24) |
                                       (std::uint32_t(buf[p * 4 + 1]) << 16) |
                                       (std::uint32_t(buf[p * 4 + 2]) << 8) |
                                       std::uint32_t(buf[p * 4 + 3]);
            std::memcpy(&vals[p], &bits, 4);
        }
        out.emplace_back(static_cast<int>(w), static_cast<int>(h), std::move(vals));
    }
    return out;
}

std::vector<std::uint8_t> quantize_image(const GrayImage& image, double sigma) {
    std::vector<std::uint8_t> out(image.size());
    const float scale = static_cast<float>(127.0 / (4.0 * sigma));
    kernels::active().quantize_u8(image.values().data(), image.size(), scale, 128.0f,
                                  out.data());
    return out;
}

std::size_t count_clipped(const GrayImage& image, double sigma) {
    const double lo = -4.0 * sigma, hi = 4.0 * sigma;
    std::size_t n = 0;
    for (float v : image.values())
        if (v < lo || v > hi) ++n;
    return n;
}

void write_idx_u8(const std::vector<GrayImage>& images,
                  const std::filesystem::path& path, double sigma) {
    check_uniform_dims(images);
    const int w = images.empty() ? 0 : images.front().width();
    const int h = images.empty() ? 0 : images.front().height();

    auto os = open_out(path);
    put_be32(os, kMagicU8_3);
    put_be32(os, static_cast<std::uint32_t>(images.size()));
    put_be32(os, static_cast<std::uint32_t>(h));
    put_be32(os, static_cast<std::uint32_t>(w));
    for (const auto& im : images) {
        const auto q = quantize_image(im, sigma);
        os.write(reinterpret_cast<const char*>(q.data()), q.size());
    }
    if (!os) throw DataError("idx: write failed: " + path.string());
}

U8Images read_idx_u8(const std::filesystem::path& path) {
    auto is = open_in(path);
    if (get_be32(is) != kMagicU8_3)
        throw DataError("idx: not a ubyte rank-3 file: " + path.string());
    U8Images out;
    const std::uint32_t n = get_be32(is);
    out.height = static_cast<int>(get_be32(is));
    out.width = static_cast<int>(get_be32(is));
    out.pixels.reserve(n);
    const std::size_t pixels = static_cast<std::size_t>(out.width) * out.height;
    for (std::uint32_t i = 0; i < n; ++i) {
        std::vector<std::uint8_t> img(pixels);
        is.read(reinterpret_cast<char*>(img.data()), img.size());
        if (!is) throw DataError("idx: truncated image data: " + path.string());
        out.pixels.push_back(std::move(img));
    }
    return out;
}

void write_idx_labels(const std::vector<std::uint8_t>& labels,
                      const std::filesystem::path& path) {
    auto os = open_out(path);
    put_be32(os, kMagicU8_1);
    put_be32(os, static_cast<std::uint32_t>(labels.size()));
    os.write(reinterpret_cast<const char*>(labels.data()), labels.size());
    if (!os) throw DataError("idx: write failed: " + path.string());
}

std::vector<std::uint8_t> read_idx_labels(const std::filesystem::path& path) {
    auto is = open_in(path);
    if (get_be32(is) != kMagicU8_1)
        throw DataError("idx: not a ubyte rank-1 file: " + path.string());
    const std::uint32_t n = get_be32(is);
    std::vector<std::uint8_t> labels(n);
    is.read(reinterpret_cast<char*>(labels.data()), labels.size());
    if (!is) throw DataError("idx: truncated label data: " + path.string());
    return labels;
}

}  // namespace gsynth
