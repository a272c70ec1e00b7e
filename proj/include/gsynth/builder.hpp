#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gsynth/image.hpp"
#include "gsynth/manifest.hpp"

namespace gsynth {

struct BuildConfig {
    std::uint64_t global_seed = 42;
    int train_per_class = 6000;
    int test_per_class = 1000;
    std::vector<int> classes = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    GenerationParams params;
    int jobs = 1;

    void validate() const;
};

/// Supplies the mask source images, one pool per class label. list_class
/// must return ids in lexicographic order; that order fixes the
/// train/test split and must be stable across runs.
class SourceProvider {
public:
    virtual ~SourceProvider() = default;
    virtual std::vector<std::string> list_class(int label) = 0;
    virtual GrayImage load(std::string_view source_id) = 0;
};

/// NIST-style directory tree: class folders named by the character's hex
/// code ("30".."39") or plainly "0".."9", scanned recursively for
/// .png/.pgm files. An optional labels.tsv sidecar (path<TAB>label)
/// overrides the folder convention.
class DirectorySource : public SourceProvider {
public:
    explicit DirectorySource(std::filesystem::path root, std::ostream* log = nullptr);

    std::vector<std::string> list_class(int label) override;
    GrayImage load(std::string_view source_id) override;

private:
    std::filesystem::path root_;
    std::map<int, std::vector<std::string>> by_class_;
};

struct RejectedSource {
    std::string source_id;
    std::string reason;
};

struct BuildResult {
    DatasetManifest manifest;
    std::vector<GrayImage> images;  // global index order, matches manifest.records
    std::vector<RejectedSource> rejects;
};

/// A source image pushed through steps (ii)-(v): binarize, 64x64 crop,
/// 2x downsample, four-region decomposition. nullopt (with a reason)
/// when the image is unusable: too small, blank after cropping, or
/// degenerate after downsampling.
std::optional<RegionPartition> prepare_mask(const GrayImage& src,
                                            const GenerationParams& params,
                                            std::string* reject_reason = nullptr);

/// The outer loop: per class, consume sources in lexicographic id order,
/// keep the first train+test usable ones (train first), then synthesize
/// every record on its own stream (stream_id = global record index).
/// Output is independent of jobs.
BuildResult build(const BuildConfig& config, SourceProvider& source,
                  std::ostream* log = nullptr);

/// Re-create the image store of a previous build from its manifest;
/// byte-identical to the original.
std::vector<GrayImage> regenerate(const DatasetManifest& manifest,
                                  SourceProvider& source, int jobs = 1);

/// Write/read the on-disk dataset layout (IDX files + manifest).
void write_dataset(const std::filesystem::path& out_dir, const BuildResult& result,
                   std::ostream* log = nullptr);

}  // namespace gsynth
