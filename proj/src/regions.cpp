#include "gsynth/regions.hpp"

#include <stdexcept>

#include "gsynth/error.hpp"

namespace gsynth {

namespace {

bool has_8_neighbor(const BinaryImage& img, int r, int c, std::uint8_t value) {
    for (int dr = -1; dr <= 1; ++dr)
        for (int dc = -1; dc <= 1; ++dc) {
            if (dr == 0 && dc == 0) continue;
            const int rr = r + dr, cc = c + dc;
            if (img.in_bounds(rr, cc) && img.at(rr, cc) == value) return true;
        }
    return false;
}

}  // namespace

RegionPartition decompose_regions(const BinaryImage& binary, const EdgeMap& edges,
                                  DecomposeMode mode) {
    const int w = binary.width(), h = binary.height();
    if (mode == DecomposeMode::CannyGuided &&
        (edges.width() != w || edges.height() != h))
        throw std::invalid_argument("decompose_regions: edge map dimensions differ");

    const std::size_t fg = binary.foreground_count();
    if (fg == 0 || fg == binary.size())
        throw DegenerateMaskError(
            fg == 0 ? "decompose_regions: mask has no foreground"
                    : "decompose_regions: mask has no background");

    std::vector<Region> labels(binary.size(), Region::Outside);
    auto label_at = [&](int r, int c) -> Region& {
        return labels[static_cast<std::size_t>(r) * w + c];
    };

    if (mode == DecomposeMode::Morphological) {
        for (int r = 0; r < h; ++r)
            for (int c = 0; c < w; ++c) {
                if (binary.at(r, c))
                    label_at(r, c) = has_8_neighbor(binary, r, c, 0)
                                         ? Region::InsideBoundary
                                         : Region::Inside;
                else
                    label_at(r, c) = has_8_neighbor(binary, r, c, 1)
                                         ? Region::OutsideBoundary
                                         : Region::Outside;
            }
        return RegionPartition(w, h, std::move(labels));
    }

    // CannyGuided
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            if (binary.at(r, c))
                label_at(r, c) = edges.at(r, c) ? Region::InsideBoundary : Region::Inside;
        }
    static constexpr int kOrth[4][2] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            if (binary.at(r, c)) continue;
            for (const auto& d : kOrth) {
                const int rr = r + d[0], cc = c + d[1];
                if (rr < 0 || rr >= h || cc < 0 || cc >= w) continue;
                if (label_at(rr, cc) == Region::InsideBoundary) {
                    label_at(r, c) = Region::OutsideBoundary;
                    break;
                }
            }
        }
    return RegionPartition(w, h, std::move(labels));
}

RegionPartition decompose(const BinaryImage& binary, DecomposeMode mode,
                          const CannyParams& params) {
    if (mode == DecomposeMode::Morphological) {
        const EdgeMap unused(binary.width(), binary.height());
        return decompose_regions(binary, unused, mode);
    }
    return decompose_regions(binary, canny(binary, params), mode);
}

}  // namespace gsynth
