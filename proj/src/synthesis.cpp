#include "gsynth/synthesis.hpp"

#include <cstdint>
#include <stdexcept>

namespace gsynth {

SortedSplit split_sorted(const GaussianVector& gv, const RegionPartition& partition) {
    if (partition.pixel_count() != gv.sorted_desc().size())
        throw std::invalid_argument(
            "split_sorted: partition size differs from draw count");

    SortedSplit split;
    const auto& sorted = gv.sorted_desc();
    std::size_t offset = 0;
    for (std::size_t band = 0; band < 4; ++band) {
        const std::size_t n = partition.size_of(kBandOrder[band]);
        split.sizes[band] = n;
        split.parts[band].assign(sorted.begin() + offset, sorted.begin() + offset + n);
        offset += n;
    }
    return split;
}

GrayImage place(const SortedSplit& split, const RegionPartition& partition,
                RngStream& rng) {
    for (std::size_t band = 0; band < 4; ++band)
        if (split.sizes[band] != partition.size_of(kBandOrder[band]) ||
            split.parts[band].size() != split.sizes[band])
            throw std::invalid_argument("place: split sizes differ from region sizes");

    const int w = partition.width(), h = partition.height();
    GrayImage out(w, h);

    for (std::size_t band = 0; band < 4; ++band) {
        const Region region = kBandOrder[band];
        std::vector<std::uint32_t> positions;
        positions.reserve(split.sizes[band]);
        for (int r = 0; r < h; ++r)
            for (int c = 0; c < w; ++c)
                if (partition.label(r, c) == region)
                    positions.push_back(static_cast<std::uint32_t>(r) * w + c);
        shuffle(rng, positions);
        const auto& values = split.parts[band];
        for (std::size_t i = 0; i < positions.size(); ++i)
            out.values()[positions[i]] = values[i];
    }
    return out;
}

SynthesisResult synthesize_image(const RegionPartition& partition, RngStream& rng,
                                 double variance) {
    GaussianVector gv = gaussian_vector(rng, variance);
    const SortedSplit split = split_sorted(gv, partition);
    GrayImage image = place(split, partition, rng);
    return {std::move(image), std::move(gv)};
}

}  // namespace gsynth
