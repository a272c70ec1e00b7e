#include "gsynth/png_io.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "gsynth/error.hpp"
#include "gsynth/idx.hpp"

namespace gsynth {

namespace {

const unsigned char kPngSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

void append_be32(std::vector<unsigned char>& v, std::uint32_t x) {
    v.push_back(static_cast<unsigned char>(x >> 24));
    v.push_back(static_cast<unsigned char>(x >> 16));
    v.push_back(static_cast<unsigned char>(x >> 8));
    v.push_back(static_cast<unsigned char>(x));
}

std::uint32_t read_be32(const unsigned char* p) {
    return (std::uint32_t(p[0]) << 24) | (std::uint32_t(p[1]) << 16) |
           (std::uint32_t(p[2]) << 8) | std::uint32_t(p[3]);
}

void write_chunk(std::vector<unsigned char>& out, const char type[4],
                 const std::vector<unsigned char>& data) {
    append_be32(out, static_cast<std::uint32_t>(data.size()));
    const std::size_t crc_start = out.size();
    out.insert(out.end(), type, type + 4);
    out.insert(out.end(), data.begin(), data.end());
    const uLong crc =
        crc32(0, out.data() + crc_start, static_cast<uInt>(out.size() - crc_start));
    append_be32(out, static_cast<std::uint32_t>(crc));
}

std::vector<unsigned char> zlib_compress(const std::vector<unsigned char>& raw) {
    uLongf bound = compressBound(static_cast<uLong>(raw.size()));
    std::vector<unsigned char> out(bound);
    if (compress2(out.data(), &bound, raw.data(), static_cast<uLong>(raw.size()), 6) !=
        Z_OK)
        throw DataError("png: deflate failed");
    out.resize(bound);
    return out;
}

std::vector<unsigned char> zlib_decompress(const std::vector<unsigned char>& comp,
                                           std::size_t expected) {
    std::vector<unsigned char> out(expected);
    uLongf len = static_cast<uLongf>(expected);
    const int rc =
        uncompress(out.data(), &len, comp.data(), static_cast<uLong>(comp.size()));
    if (rc != Z_OK || len != expected) throw DataError("png: inflate failed");
    return out;
}

int paeth(int a, int b, int c) {
    const int p = a + b - c;
    const int pa = std::abs(p - a), pb = std::abs(p - b), pc = std::abs(p - c);
    if (pa <= pb && pa <= pc) return a;
    if (pb <= pc) return b;
    return c;
}

}  // namespace

void write_png_gray(const std::filesystem::path& path,
                    const std::vector<std::uint8_t>& pixels, int width, int height) {
    if (width <= 0 || height <= 0 ||
        pixels.size() != static_cast<std::size_t>(width) * height)
        throw std::invalid_argument("write_png_gray: bad dimensions");

    std::vector<unsigned char> ihdr;
    append_be32(ihdr, static_cast<std::uint32_t>(width));
    append_be32(ihdr, static_cast<std::uint32_t>(height));
    ihdr.push_back(8);  // bit depth
    ihdr.push_back(0);  // color type: grayscale
    ihdr.push_back(0);  // compression
    ihdr.push_back(0);  // filter method
    ihdr.push_back(0);  // no interlace

    // filter byte 0 (None) per scanline
    std::vector<unsigned char> raw;
    raw.reserve(static_cast<std::size_t>(height) * (width + 1));
    for (int r = 0; r < height; ++r) {
        raw.push_back(0);
        raw.insert(raw.end(), pixels.begin() + static_cast<std::size_t>(r) * width,
                   pixels.begin() + static_cast<std::size_t>(r + 1) * width);
    }

    std::vector<unsigned char> out(kPngSignature, kPngSignature + 8);
    write_chunk(out, "IHDR", ihdr);
    write_chunk(out, "IDAT", zlib_compress(raw));
    write_chunk(out, "IEND", {});

    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw DataError("png: cannot open for writing: " + path.string());
    os.write(reinterpret_cast<const char*>(out.data()), out.size());
    if (!os) throw DataError("png: write failed: " + path.string());
}

GrayImage read_png_gray(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw DataError("png: cannot open: " + path.string());
    std::vector<unsigned char> file((std::istreambuf_iterator<char>(is)),
                                    std::istreambuf_iterator<char>());
    if (file.size() < 8 || std::memcmp(file.data(), kPngSignature, 8) != 0)
        throw DataError("png: bad signature: " + path.string());

    std::size_t pos = 8;
    std::uint32_t width = 0, height = 0;
    int bit_depth = 0, color_type = 0;
    std::vector<unsigned char> idat;
    std::vector<unsigned char> palette;  // rgb triples
    bool seen_ihdr = false, seen_iend = false;

    while (pos + 8 <= file.size() && !seen_iend) {
        const std::uint32_t len = read_be32(&file[pos]);
        if (pos + 12 + static_cast<std::size_t>(len) > file.size())
            throw DataError("png: truncated chunk: " + path.string());
        const char* type = reinterpret_cast<const char*>(&file[pos + 4]);
        const unsigned char* data = &file[pos + 8];

        if (std::memcmp(type, "IHDR", 4) == 0) {
            if (len != 13) throw DataError("png: bad IHDR: " + path.string());
            width = read_be32(data);
            height = read_be32(data + 4);
            bit_depth = data[8];
            color_type = data[9];
            if (data[12] != 0)
                throw DataError("png: interlaced files unsupported: " + path.string());
            seen_ihdr = true;
        } else if (std::memcmp(type, "PLTE", 4) == 0) {
            palette.assign(data, data + len);
        } else if (std::memcmp(type, "IDAT", 4) == 0) {
            idat.insert(idat.end(), data, data + len);
        } else if (std::memcmp(type, "IEND", 4) == 0) {
            seen_iend = true;
        }
        pos += 12 + len;
    }
    if (!seen_ihdr || width == 0 || height == 0)
        throw DataError("png: missing or empty IHDR: " + path.string());

    int channels;
    switch (color_type) {
        case 0: channels = 1; break;
        case 2: channels = 3; break;
        case 3: channels = 1; break;
        case 6: channels = 4; break;
        default:
            throw DataError("png: unsupported color type " +
                            std::to_string(color_type) + ": " + path.string());
    }
    if (color_type != 0 && bit_depth != 8)
        throw DataError("png: unsupported bit depth: " + path.string());
    if (color_type == 0 && bit_depth != 1 && bit_depth != 2 && bit_depth != 4 &&
        bit_depth != 8)
        throw DataError("png: unsupported bit depth: " + path.string());

    const std::size_t bits_per_pixel = static_cast<std::size_t>(bit_depth) * channels;
    const std::size_t row_bytes = (static_cast<std::size_t>(width) * bits_per_pixel + 7) / 8;
    const std::size_t bpp = std::max<std::size_t>(1, bits_per_pixel / 8);

    std::vector<unsigned char> raw =
        zlib_decompress(idat, (row_bytes + 1) * height);

    // unfilter in place into scanlines
    std::vector<unsigned char> img(row_bytes * height, 0);
    for (std::uint32_t r = 0; r < height; ++r) {
        const unsigned char filter = raw[r * (row_bytes + 1)];
        const unsigned char* src = &raw[r * (row_bytes + 1) + 1];
        unsigned char* dst = &img[r * row_bytes];
        const unsigned char* prev = r > 0 ? &img[(r - 1) * row_bytes] : nullptr;
        for (std::size_t i = 0; i < row_bytes; ++i) {
            const int a = i >= bpp ? dst[i - bpp] : 0;
            const int b = prev ? prev[i] : 0;
            const int c = (prev && i >= bpp) ? prev[i - bpp] : 0;
            int v = src[i];
            switch (filter) {
                case 0: break;
                case 1: v += a; break;
                case 2: v += b; break;
                case 3: v += (a + b) / 2; break;
                case 4: v += paeth(a, b, c); break;
                default:
                    throw DataError("png: bad filter type: " + path.string());
            }
            dst[i] = static_cast<unsigned char>(v & 0xff);
        }
    }

    GrayImage out(static_cast<int>(width), static_cast<int>(height));
    auto& vals = out.values();
    for (std::uint32_t r = 0; r < height; ++r) {
        const unsigned char* row = &img[r * row_bytes];
        for (std::uint32_t c = 0; c < width; ++c) {
            int v;
            if (color_type == 0) {
                if (bit_depth == 8) {
                    v = row[c];
                } else {
                    const std::size_t bit = static_cast<std::size_t>(c) * bit_depth;
                    const int sample =
                        (row[bit / 8] >> (8 - bit_depth - bit % 8)) &
                        ((1 << bit_depth) - 1);
                    const int maxval = (1 << bit_depth) - 1;
                    v = sample * 255 / maxval;
                }
            } else if (color_type == 3) {
                const std::size_t p = static_cast<std::size_t>(row[c]) * 3;
                if (p + 2 >= palette.size())
                    throw DataError("png: palette index out of range: " + path.string());
                v = (77 * palette[p] + 150 * palette[p + 1] + 29 * palette[p + 2] + 128) >>
                    8;
            } else {
                const unsigned char* px = row + static_cast<std::size_t>(c) * channels;
                v = (77 * px[0] + 150 * px[1] + 29 * px[2] + 128) >> 8;
            }
            vals[static_cast<std::size_t>(r) * width + c] = static_cast<float>(v);
        }
    }
    return out;
}

void write_pgm(const std::filesystem::path& path,
               const std::vector<std::uint8_t>& pixels, int width, int height) {
    if (width <= 0 || height <= 0 ||
        pixels.size() != static_cast<std::size_t>(width) * height)
        throw std::invalid_argument("write_pgm: bad dimensions");
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw DataError("pgm: cannot open for writing: " + path.string());
    os << "P5\n" << width << " " << height << "\n255\n";
    os.write(reinterpret_cast<const char*>(pixels.data()), pixels.size());
    if (!os) throw DataError("pgm: write failed: " + path.string());
}

GrayImage read_pgm(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw DataError("pgm: cannot open: " + path.string());
    std::string magic;
    is >> magic;
    if (magic != "P5") throw DataError("pgm: only binary P5 supported: " + path.string());
    int w = 0, h = 0, maxval = 0;
    is >> w >> h >> maxval;
    if (!is || w <= 0 || h <= 0 || maxval <= 0 || maxval > 255)
        throw DataError("pgm: bad header: " + path.string());
    is.get();  // single whitespace after maxval
    std::vector<unsigned char> buf(static_cast<std::size_t>(w) * h);
    is.read(reinterpret_cast<char*>(buf.data()), buf.size());
    if (!is) throw DataError("pgm: truncated pixel data: " + path.string());
    GrayImage out(w, h);
    for (std::size_t i = 0; i < buf.size(); ++i)
        out.values()[i] = static_cast<float>(buf[i] * 255 / maxval);
    return out;
}

GrayImage read_image(const std::filesystem::path& path) {
    const auto ext = path.extension().string();
    if (ext == ".png" || ext == ".PNG") return read_png_gray(path);
    if (ext == ".pgm" || ext == ".PGM") return read_pgm(path);
    throw DataError("read_image: unsupported file type: " + path.string());
}

void write_png_preview(const GrayImage& image, const std::filesystem::path& path,
                       double sigma) {
    write_png_gray(path, quantize_image(image, sigma), image.width(), image.height());
}

}  // namespace gsynth
