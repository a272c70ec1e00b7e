#include <doctest.h>

#include <algorithm>
#include <map>
#include <vector>

#include "gsynth/regions.hpp"
#include "gsynth/stats.hpp"
#include "gsynth/synthesis.hpp"

using namespace gsynth;

namespace {

// 2x2 grid with one pixel per region, in scanline order:
// outside, outside-boundary, inside-boundary, inside
RegionPartition one_of_each() {
    return partition_from_labels({Region::Outside, Region::OutsideBoundary,
                                  Region::InsideBoundary, Region::Inside},
                                 2, 2);
}

GaussianVector padded_vector(std::vector<float> head) {
    // embed the interesting values in a full-length vector whose filler
    // sorts above everything else; the filler then pads the outside
    // band and the head values land at the band boundaries
    std::vector<float> raw(GaussianVector::kLength, 1e30f);
    std::copy(head.begin(), head.end(), raw.begin());
    return GaussianVector(std::move(raw));
}

}  // namespace

TEST_CASE("split_sorted slices sorted_desc by band sizes") {
    // 2x2 grid, x = [3, -1, 2, 0]: outside [3], inside-boundary [2],
    // outside-boundary [0], inside [-1]
    std::vector<Region> labels(1024, Region::Outside);
    labels[0] = Region::Outside;
    labels[1] = Region::OutsideBoundary;
    labels[2] = Region::InsideBoundary;
    labels[3] = Region::Inside;
    // shrink to an exact 4-pixel scenario via a 2x2 partition and a
    // hand-built split: use the 1024-length machinery directly instead
    const auto partition = one_of_each();
    std::vector<float> raw{3.0f, -1.0f, 2.0f, 0.0f};

    // split the 4-vector by hand through the library path: a fake
    // GaussianVector is fixed at 1024 entries, so check the slicing rule
    // on the real sizes instead
    const GaussianVector gv = padded_vector(raw);
    std::vector<Region> big(1024, Region::Outside);
    big[1] = Region::OutsideBoundary;
    big[2] = Region::InsideBoundary;
    big[3] = Region::Inside;
    const auto big_partition = partition_from_labels(big, 32, 32);
    const SortedSplit split = split_sorted(gv, big_partition);

    CHECK(split.sizes == std::array<std::size_t, 4>{1021, 1, 1, 1});
    CHECK(split.parts[0].back() == 3.0f);  // outside band ends at the largest head value
    CHECK(split.parts[1][0] == 2.0f);      // inside-boundary next
    CHECK(split.parts[2][0] == 0.0f);      // outside-boundary next
    CHECK(split.parts[3][0] == -1.0f);     // inside takes the smallest
    (void)partition;
}

TEST_CASE("degenerate partition puts everything in one band") {
    std::vector<Region> labels(1024, Region::Outside);
    const auto partition = partition_from_labels(labels, 32, 32);
    RngStream rng = RngStream::derive(8, 0);
    const GaussianVector gv = gaussian_vector(rng);
    const SortedSplit split = split_sorted(gv, partition);
    CHECK(split.sizes == std::array<std::size_t, 4>{1024, 0, 0, 0});
    CHECK(split.parts[0] == gv.sorted_desc());
    CHECK(split.parts[1].empty());
}

TEST_CASE("band concatenation reproduces sorted_desc and the min/max chain") {
    RngStream rng = RngStream::derive(15, 2);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Region> labels(1024);
        for (auto& l : labels) l = static_cast<Region>(rng.next_below(4));
        const auto partition = partition_from_labels(labels, 32, 32);
        const GaussianVector gv = gaussian_vector(rng);
        const SortedSplit split = split_sorted(gv, partition);

        std::vector<float> concat;
        for (const auto& part : split.parts)
            concat.insert(concat.end(), part.begin(), part.end());
        CHECK(concat == gv.sorted_desc());

        for (int band = 0; band + 1 < 4; ++band) {
            if (split.parts[band].empty() || split.parts[band + 1].empty()) continue;
            CHECK(split.parts[band].back() >= split.parts[band + 1].front());
        }
    }
}

TEST_CASE("size mismatch between split and partition is an error") {
    RngStream rng = RngStream::derive(5, 5);
    const GaussianVector gv = gaussian_vector(rng);
    std::vector<Region> labels(1024, Region::Outside);
    labels[0] = Region::Inside;
    const auto partition = partition_from_labels(labels, 32, 32);
    SortedSplit split = split_sorted(gv, partition);
    split.parts[0].pop_back();
    split.sizes[0] -= 1;
    CHECK_THROWS_AS(place(split, partition, rng), std::invalid_argument);
}

TEST_CASE("place puts each 2x2 band value on its labeled pixel") {
    std::vector<Region> big(1024, Region::Outside);
    big[1] = Region::OutsideBoundary;
    big[2] = Region::InsideBoundary;
    big[3] = Region::Inside;
    const auto partition = partition_from_labels(big, 32, 32);
    const GaussianVector gv = padded_vector({3.0f, -1.0f, 2.0f, 0.0f});
    const SortedSplit split = split_sorted(gv, partition);
    RngStream rng = RngStream::derive(77, 0);
    const GrayImage img = place(split, partition, rng);

    CHECK(img.values()[1] == 0.0f);   // outside-boundary pixel
    CHECK(img.values()[2] == 2.0f);   // inside-boundary pixel
    CHECK(img.values()[3] == -1.0f);  // inside pixel
    // the outside band holds 3 and the filler; pixel 0 is one of them
    const auto sorted_out = [&] {
        auto v = img.values();
        std::sort(v.begin(), v.end(), std::greater<float>());
        return v;
    }();
    CHECK(sorted_out == gv.sorted_desc());
}

TEST_CASE("synthesize_image is a value-preserving bijection") {
    RngStream mask_rng = RngStream::derive(31, 4);
    std::vector<Region> labels(1024);
    for (auto& l : labels) l = static_cast<Region>(mask_rng.next_below(4));
    const auto partition = partition_from_labels(labels, 32, 32);

    RngStream rng = RngStream::derive(42, 7);
    const SynthesisResult r = synthesize_image(partition, rng);
    CHECK(r.image.width() == 32);
    CHECK(r.image.height() == 32);
    CHECK(r.image.size() == 1024);

    auto placed = r.image.values();
    std::sort(placed.begin(), placed.end(), std::greater<float>());
    CHECK(placed == r.draws.sorted_desc());

    // identical stream state and partition give identical images
    RngStream rng2 = RngStream::derive(42, 7);
    const SynthesisResult r2 = synthesize_image(partition, rng2);
    CHECK(r2.image.values() == r.image.values());
}

TEST_CASE("per-image region ordering invariant holds via labels") {
    RngStream mask_rng = RngStream::derive(300, 1);
    std::vector<Region> labels(1024);
    for (auto& l : labels) l = static_cast<Region>(mask_rng.next_below(4));
    const auto partition = partition_from_labels(labels, 32, 32);
    RngStream rng = RngStream::derive(300, 2);
    const SynthesisResult r = synthesize_image(partition, rng);

    std::array<float, 4> min_of, max_of;
    min_of.fill(1e30f);
    max_of.fill(-1e30f);
    for (int row = 0; row < 32; ++row)
        for (int col = 0; col < 32; ++col) {
            // band index in sort order
            int band = 0;
            switch (partition.label(row, col)) {
                case Region::Outside: band = 0; break;
                case Region::InsideBoundary: band = 1; break;
                case Region::OutsideBoundary: band = 2; break;
                case Region::Inside: band = 3; break;
            }
            const float v = r.image.at(row, col);
            min_of[band] = std::min(min_of[band], v);
            max_of[band] = std::max(max_of[band], v);
        }
    CHECK(min_of[0] >= max_of[1]);
    CHECK(min_of[1] >= max_of[2]);
    CHECK(min_of[2] >= max_of[3]);
}

TEST_CASE("within-region placement is exchangeable") {
    // a 3-pixel inside region: all 6 assignments of distinct values to
    // positions should be equally frequent
    std::vector<Region> labels(1024, Region::Outside);
    labels[10] = labels[20] = labels[30] = Region::Inside;
    const auto partition = partition_from_labels(labels, 32, 32);

    RngStream rng = RngStream::derive(606, 0);
    const GaussianVector gv = gaussian_vector(rng);
    const SortedSplit split = split_sorted(gv, partition);
    std::map<std::array<int, 3>, int> counts;
    const int trials = 120000;
    for (int t = 0; t < trials; ++t) {
        const GrayImage img = place(split, partition, rng);
        // rank of each inside pixel's value among the three
        const std::array<float, 3> vals{img.values()[10], img.values()[20],
                                        img.values()[30]};
        std::array<int, 3> rank{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (vals[j] < vals[i]) ++rank[i];
        ++counts[rank];
    }
    CHECK(counts.size() == 6);
    const double expected = trials / 6.0;
    double statistic = 0.0;
    for (const auto& [perm, n] : counts) {
        const double d = n - expected;
        statistic += d * d / expected;
    }
    CHECK(statistic < chi_square_critical(0.001, 5));
}
