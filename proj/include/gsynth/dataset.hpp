#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gsynth/image.hpp"
#include "gsynth/manifest.hpp"
#include "gsynth/stats.hpp"

namespace gsynth {

/// A generated dataset loaded back into memory: manifest plus the
/// float32 images in global record order. Verification always runs on
/// this store, never on the quantized u8 exports.
struct ImageStore {
    DatasetManifest manifest;
    std::vector<GrayImage> images;
};

/// Read manifest.txt plus the float IDX and label files from a
/// generate() output directory, cross-checking counts and labels.
ImageStore load_dataset(const std::filesystem::path& dir);

struct AuditReport {
    std::size_t images_checked = 0;
    std::size_t mismatches = 0;
    std::vector<std::size_t> mismatch_indices;  // capped at 32 entries

    TestReport as_report() const;
};

/// The permutation invariant, mechanized: re-derive every record's
/// Gaussian vector from (global_seed, stream_id) and compare value
/// multisets bit-for-bit against the stored image.
AuditReport audit_permutation(const ImageStore& store);

using PositionPair = std::pair<std::uint16_t, std::uint16_t>;

/// Distinct unordered position pairs drawn from a dedicated stream of
/// the given seed; deterministic for reproducible reports.
std::vector<PositionPair> sample_position_pairs(std::size_t count, int width,
                                                int height, std::uint64_t seed);

/// Two-sample KS between the value sequences at the two positions of
/// each pair, across all images. Needs >= 1000 images.
std::vector<TestReport> stationarity_test(const ImageStore& store,
                                          const std::vector<PositionPair>& pairs,
                                          double alpha);

struct VerifyOptions {
    double alpha = 0.01;
    std::size_t stationarity_pairs = 100;
    bool stationarity_all_pairs = false;
    double min_image_pass_rate = 0.98;
    double min_pair_pass_rate = 0.95;
    std::uint64_t pair_seed = 42;
    // subset of {"audit", "pooled-ks", "image-ks", "chi2", "stationarity"}
    std::set<std::string> checks = {"audit", "pooled-ks", "image-ks", "chi2",
                                    "stationarity"};
};

struct VerifyOutcome {
    std::vector<TestReport> reports;       // summary rows, one per check
    std::vector<TestReport> pair_reports;  // per-pair stationarity detail
    AuditReport audit;
    bool all_pass = true;
};

VerifyOutcome run_verify(const ImageStore& store, const VerifyOptions& options);

void write_verify_report(const VerifyOutcome& outcome,
                         const std::filesystem::path& text_path,
                         const std::filesystem::path& csv_path);

}  // namespace gsynth
