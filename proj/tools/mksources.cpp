// gsynth-mksources: writes a NIST-style class-foldered tree of synthetic
// digit scans (white glyph on black, hex-named class folders) so the
// pipeline can be exercised without the real archive. Glyph scale,
// position jitter and stroke thickness vary deterministically per image.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "gsynth/error.hpp"
#include "gsynth/png_io.hpp"
#include "gsynth/rng.hpp"

namespace fs = std::filesystem;
using namespace gsynth;

namespace {

// 5x7 digit glyphs, one byte per row, low 5 bits used
constexpr std::uint8_t kFont[10][7] = {
    {0x0E, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0E},  // 0
    {0x04, 0x0C, 0x04, 0x04, 0x04, 0x04, 0x0E},  // 1
    {0x0E, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1F},  // 2
    {0x1F, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0E},  // 3
    {0x02, 0x06, 0x0A, 0x12, 0x1F, 0x02, 0x02},  // 4
    {0x1F, 0x10, 0x1E, 0x01, 0x01, 0x11, 0x0E},  // 5
    {0x06, 0x08, 0x10, 0x1E, 0x11, 0x11, 0x0E},  // 6
    {0x1F, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08},  // 7
    {0x0E, 0x11, 0x11, 0x0E, 0x11, 0x11, 0x0E},  // 8
    {0x0E, 0x11, 0x11, 0x0F, 0x01, 0x02, 0x0C},  // 9
};

std::vector<std::uint8_t> render_digit(int digit, int side, RngStream& rng) {
    std::vector<std::uint8_t> img(static_cast<std::size_t>(side) * side, 0);

    // glyphs sized to survive the pipeline's central 64x64 crop
    const int scale = 7 + static_cast<int>(rng.next_below(3));  // 7..9
    const int dx = static_cast<int>(rng.next_below(13)) - 6;    // -6..6
    const int dy = static_cast<int>(rng.next_below(13)) - 6;
    const bool dilate = rng.next_below(2) != 0;

    const int glyph_w = 5 * scale, glyph_h = 7 * scale;
    const int ox = (side - glyph_w) / 2 + dx;
    const int oy = (side - glyph_h) / 2 + dy;

    for (int gr = 0; gr < 7; ++gr)
        for (int gc = 0; gc < 5; ++gc) {
            if (!((kFont[digit][gr] >> (4 - gc)) & 1)) continue;
            for (int r = oy + gr * scale; r < oy + (gr + 1) * scale; ++r)
                for (int c = ox + gc * scale; c < ox + (gc + 1) * scale; ++c)
                    if (r >= 0 && r < side && c >= 0 && c < side)
                        img[static_cast<std::size_t>(r) * side + c] = 255;
        }

    if (dilate) {
        std::vector<std::uint8_t> grown = img;
        for (int r = 0; r < side; ++r)
            for (int c = 0; c < side; ++c) {
                if (img[static_cast<std::size_t>(r) * side + c]) continue;
                for (int dr = -1; dr <= 1 && !grown[static_cast<std::size_t>(r) * side + c]; ++dr)
                    for (int dc = -1; dc <= 1; ++dc) {
                        const int rr = r + dr, cc = c + dc;
                        if (rr >= 0 && rr < side && cc >= 0 && cc < side &&
                            img[static_cast<std::size_t>(rr) * side + cc]) {
                            grown[static_cast<std::size_t>(r) * side + c] = 255;
                            break;
                        }
                    }
            }
        img = std::move(grown);
    }
    return img;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Write a synthetic NIST-style source tree for gsynth"};
    std::string out_dir;
    int per_class = 200;
    int side = 128;
    std::uint64_t seed = 1;
    std::string format = "png";
    app.add_option("--out-dir", out_dir, "Tree root to create")->required();
    app.add_option("--per-class", per_class, "Images per digit class")
        ->capture_default_str();
    app.add_option("--size", side, "Square image side, >= 64")
        ->check(CLI::Range(64, 4096))
        ->capture_default_str();
    app.add_option("--seed", seed, "Jitter seed")->capture_default_str();
    app.add_option("--format", format, "Image format")
        ->check(CLI::IsMember({"png", "pgm"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        for (int digit = 0; digit <= 9; ++digit) {
            const fs::path class_dir = fs::path(out_dir) / ("3" + std::to_string(digit));
            fs::create_directories(class_dir);
            for (int i = 0; i < per_class; ++i) {
                RngStream rng = RngStream::derive(
                    seed, static_cast<std::uint64_t>(digit) * 1000003u + i);
                const auto pixels = render_digit(digit, side, rng);
                char name[32];
                std::snprintf(name, sizeof name, "d%d_%06d.%s", digit, i,
                              format.c_str());
                if (format == "png")
                    write_png_gray(class_dir / name, pixels, side, side);
                else
                    write_pgm(class_dir / name, pixels, side, side);
            }
        }
        std::cout << "wrote " << per_class << " images per class under " << out_dir
                  << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
