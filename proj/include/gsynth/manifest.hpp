#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "gsynth/canny.hpp"
#include "gsynth/preprocess.hpp"
#include "gsynth/regions.hpp"

namespace gsynth {

enum class Split : std::uint8_t { Train, Test };

inline const char* split_name(Split s) { return s == Split::Train ? "train" : "test"; }

/// Per-record metadata; pixel data lives in the IDX files.
struct DatasetRecord {
    std::uint32_t label = 0;         // class id, 0..9
    Split split = Split::Train;
    std::uint64_t rng_stream_id = 0; // equals the record's global index
    std::string source_id;           // provider-relative path of the mask source
};

/// Everything the pipeline was configured with; enough to re-run it.
struct GenerationParams {
    double variance = 1024.0;
    BinarizeRule binarize = BinarizeRule::otsu();
    Polarity polarity = Polarity::InkIsBright;
    CropMode crop = CropMode::GeometricCenter;
    DecomposeMode edge_mode = DecomposeMode::CannyGuided;
    CannyParams canny;
    std::string downsample_rule = "majority-2x2-ties-foreground";
    std::string rng_algorithm;  // filled from RngStream::kAlgorithmTag
};

/// The regeneration contract: global seed + parameters + the ordered
/// record table determine the image store byte-for-byte.
struct DatasetManifest {
    static constexpr int kFormatVersion = 1;

    std::uint64_t global_seed = 0;
    GenerationParams params;
    std::vector<DatasetRecord> records;  // global index order

    /// Per-class (train, test) tallies derived from the record table.
    std::map<std::uint32_t, std::pair<std::uint64_t, std::uint64_t>> class_counts() const;

    void serialize(std::ostream& os) const;
    static DatasetManifest parse(std::istream& is);

    void save(const std::string& path) const;
    static DatasetManifest load(const std::string& path);
};

}  // namespace gsynth
