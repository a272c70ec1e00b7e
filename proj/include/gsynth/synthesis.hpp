#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "gsynth/gaussian.hpp"
#include "gsynth/image.hpp"
#include "gsynth/rng.hpp"

namespace gsynth {

/// Band order of the sorted split: band 0 holds the largest values.
/// Note the rim interleave - the inside boundary sits above the outside
/// boundary in the sort order. This assignment is fixed; see docs.
inline constexpr std::array<Region, 4> kBandOrder = {
    Region::Outside,
    Region::InsideBoundary,
    Region::OutsideBoundary,
    Region::Inside,
};

/// The descending-sorted draw vector cut into four contiguous bands,
/// band k sized to its region. Concatenating the bands in order
/// reproduces sorted_desc exactly.
struct SortedSplit {
    std::array<std::vector<float>, 4> parts;  // indexed by band, kBandOrder
    std::array<std::size_t, 4> sizes;
};

/// Contiguous prefix split of gv.sorted_desc by the partition's region
/// sizes, in kBandOrder.
SortedSplit split_sorted(const GaussianVector& gv, const RegionPartition& partition);

/// Scatter each band into its region: enumerate the region's positions
/// in row-major order, Fisher-Yates shuffle them with the stream (one
/// shuffle per band, in band order), then assign the band's descending
/// values to the shuffled positions. Every pixel is written exactly
/// once, so the output's value multiset equals the draw multiset.
GrayImage place(const SortedSplit& split, const RegionPartition& partition,
                RngStream& rng);

struct SynthesisResult {
    GrayImage image;
    GaussianVector draws;
};

/// Full per-image step: draw 1024 values from N(0, variance), sort,
/// split by the partition, place. Consumes the stream in a pinned order
/// (512 Box-Muller pairs, then the four shuffles), which is what makes
/// manifest regeneration byte-exact.
SynthesisResult synthesize_image(const RegionPartition& partition, RngStream& rng,
                                 double variance = 1024.0);

}  // namespace gsynth
