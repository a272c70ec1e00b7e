// Acceptance suite: one pass/fail line per criterion, nonzero exit when
// any fails. Usage: gsynth_acceptance <gsynth> <gsynth-mksources> <workdir>
//
// The distribution criteria run through the installed CLI surface; the
// structural ones (partition, ordering, oracle equivalence, formats)
// link the library directly.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gsynth/builder.hpp"
#include "gsynth/dataset.hpp"
#include "gsynth/idx.hpp"
#include "gsynth/preprocess.hpp"
#include "gsynth/regions.hpp"
#include "gsynth/rng.hpp"
#include "gsynth/synthesis.hpp"
#include "../support/oracles.hpp"
#include "../support/proc.hpp"

namespace fs = std::filesystem;
using namespace gsynth;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion,
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

void info(const std::string& line) {
    std::printf("[INFO] %s\n", line.c_str());
    std::fflush(stdout);
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Pull "NAME statistic=<v>" and the PASS/FAIL flag out of verify output.
struct CheckLine {
    bool found = false;
    bool pass = false;
    double statistic = 0.0;
    double critical = 0.0;
};

CheckLine find_check(const std::string& output, const std::string& name) {
    CheckLine out;
    std::istringstream is(output);
    std::string line;
    while (std::getline(is, line)) {
        if (line.find(" " + name + " ") == std::string::npos) continue;
        out.found = true;
        out.pass = line.rfind("PASS", 0) == 0;
        const auto spos = line.find("statistic=");
        if (spos != std::string::npos) out.statistic = std::atof(line.c_str() + spos + 10);
        const auto cpos = line.find("critical=");
        if (cpos != std::string::npos) out.critical = std::atof(line.c_str() + cpos + 9);
        return out;
    }
    return out;
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

}  // namespace

int main(int argc, char** argv) {
    if (argc != 4) {
        std::fprintf(stderr,
                     "usage: gsynth_acceptance <gsynth> <mksources> <workdir>\n");
        return 2;
    }
    const std::string gsynth_bin = argv[1];
    const std::string mksources_bin = argv[2];
    const fs::path work = argv[3];

    std::error_code ec;
    fs::remove_all(work, ec);
    fs::create_directories(work);
    const fs::path src = work / "sources";
    const fs::path ds1k = work / "ds1k";
    const fs::path ds10k = work / "ds10k";

    {
        const auto t0 = Clock::now();
        const auto r = proc::run(mksources_bin + " --out-dir " + q(src) +
                                 " --per-class 1010 --seed 9");
        if (r.exit_code != 0) {
            std::fprintf(stderr, "mksources failed:\n%s\n", r.output.c_str());
            return 2;
        }
        info("source tree ready in " + std::to_string(seconds_since(t0)) + " s");
    }

    // ---- criterion 1: permutation invariant on a 1,000-image dataset ----
    {
        const auto tg = Clock::now();
        const auto gen = proc::run(gsynth_bin + " generate --source-dir " + q(src) +
                                   " --out-dir " + q(ds1k) +
                                   " --seed 42 --train-per-class 90 "
                                   "--test-per-class 10 --jobs 2");
        info("ds1k generate: " + std::to_string(seconds_since(tg)) + " s");
        if (gen.exit_code != 0) {
            report(1, false, "generate failed: " + gen.output);
        } else {
            const auto t0 = Clock::now();
            const auto ver = proc::run(gsynth_bin + " verify --dataset " + q(ds1k) +
                                       " --checks audit");
            const double dt = seconds_since(t0);
            const CheckLine audit = find_check(ver.output, "audit-permutation");
            const bool pass = ver.exit_code == 0 && audit.found && audit.pass &&
                              audit.statistic == 0.0 && dt < 10.0;
            report(1, pass,
                   "audit mismatches=" + std::to_string(audit.statistic) + " over 1000 "
                   "images (seed 42, 100/class), runtime " + std::to_string(dt) +
                   " s (< 10 s)");
        }
    }

    // ---- criterion 2: Gaussian conformance, pooled and per-image ----
    {
        const auto t0 = Clock::now();
        const auto ver = proc::run(gsynth_bin + " verify --dataset " + q(ds1k) +
                                   " --checks pooled-ks,image-ks --alpha 0.01");
        const double dt = seconds_since(t0);
        const CheckLine pooled = find_check(ver.output, "pooled-ks");
        const CheckLine images = find_check(ver.output, "image-ks-rate");
        const bool pass = pooled.found && pooled.pass && pooled.statistic < 0.00161 &&
                          images.found && images.pass && dt < 30.0;
        std::ostringstream detail;
        detail << "pooled D=" << pooled.statistic << " (< 0.00161), per-image pass "
               << "rate=" << (1.0 - images.statistic) * 100.0 << "% (>= 98%), runtime "
               << dt << " s (< 30 s)";
        report(2, pass, detail.str());
    }

    // ---- criterion 3: spatial stationarity over 10,000 images ----
    {
        const auto tg = Clock::now();
        const auto gen = proc::run(gsynth_bin + " generate --source-dir " + q(src) +
                                   " --out-dir " + q(ds10k) +
                                   " --seed 42 --train-per-class 1000 "
                                   "--test-per-class 0 --jobs 2");
        info("ds10k generate: " + std::to_string(seconds_since(tg)) + " s");
        if (gen.exit_code != 0) {
            report(3, false, "generate failed: " + gen.output);
        } else {
            const auto t0 = Clock::now();
            const auto ver = proc::run(gsynth_bin + " verify --dataset " + q(ds10k) +
                                       " --checks stationarity --pairs 100 "
                                       "--alpha 0.01");
            const double dt = seconds_since(t0);
            const CheckLine rate = find_check(ver.output, "stationarity-rate");
            const int passed_pairs =
                rate.found ? static_cast<int>(std::lround((1.0 - rate.statistic) * 100.0))
                           : -1;
            const bool pass = rate.found && rate.pass && dt < 120.0;
            std::ostringstream detail;
            detail << passed_pairs << "/100 position pairs pass two-sample KS at "
                   << "alpha=0.01 (need >= 95), runtime " << dt << " s (< 2 min)";
            if (!pass)
                detail << " -- positions whose mask-region profiles differ draw from "
                          "different sorted bands, so their marginals differ; see "
                          "README";
            report(3, pass, detail.str());
        }
    }

    // ---- criteria 4 + 5: partition property and region ordering ----
    {
        std::size_t partition_violations = 0, ordering_violations = 0;
        std::size_t checked = 0;
        try {
            const ImageStore store = load_dataset(ds1k);
            DirectorySource provider(src);
            for (std::size_t i = 0; i < store.images.size(); ++i) {
                const auto& rec = store.manifest.records[i];
                const GrayImage source = provider.load(rec.source_id);
                const auto& params = store.manifest.params;

                const BinarizeResult bin =
                    binarize(source, params.binarize, params.polarity);
                const BinaryImage cropped =
                    central_crop(bin.image, 64, 64, params.crop);
                const BinaryImage small = downsample_2x(cropped);
                const RegionPartition partition =
                    decompose(small, params.edge_mode, params.canny);

                // four disjoint regions covering 1024 positions, with
                // inside u inside-boundary equal to the mask foreground
                const auto& sizes = partition.region_sizes();
                if (sizes[0] + sizes[1] + sizes[2] + sizes[3] != 1024)
                    ++partition_violations;
                bool consistent = true;
                for (int r = 0; r < 32 && consistent; ++r)
                    for (int c = 0; c < 32; ++c) {
                        const Region label = partition.label(r, c);
                        const bool fg_label = label == Region::Inside ||
                                              label == Region::InsideBoundary;
                        if (fg_label != (small.at(r, c) != 0)) {
                            consistent = false;
                            break;
                        }
                    }
                if (!consistent) ++partition_violations;

                // descending chain across the four bands
                std::array<float, 4> min_of, max_of;
                min_of.fill(1e30f);
                max_of.fill(-1e30f);
                for (int r = 0; r < 32; ++r)
                    for (int c = 0; c < 32; ++c) {
                        int band = 0;
                        switch (partition.label(r, c)) {
                            case Region::Outside: band = 0; break;
                            case Region::InsideBoundary: band = 1; break;
                            case Region::OutsideBoundary: band = 2; break;
                            case Region::Inside: band = 3; break;
                        }
                        const float v = store.images[i].at(r, c);
                        min_of[band] = std::min(min_of[band], v);
                        max_of[band] = std::max(max_of[band], v);
                    }
                for (int band = 0; band + 1 < 4; ++band) {
                    if (partition.size_of(kBandOrder[band]) == 0) continue;
                    for (int next = band + 1; next < 4; ++next) {
                        if (partition.size_of(kBandOrder[next]) == 0) continue;
                        if (min_of[band] < max_of[next]) ++ordering_violations;
                        break;
                    }
                }
                ++checked;
            }
        } catch (const std::exception& e) {
            report(4, false, std::string("exception: ") + e.what());
            report(5, false, "skipped after exception");
            checked = 0;
        }
        if (checked > 0) {
            report(4, partition_violations == 0,
                   "partition property over " + std::to_string(checked) + " images: " +
                   std::to_string(partition_violations) + " violations");
            report(5, ordering_violations == 0,
                   "region-ordering chain over " + std::to_string(checked) +
                   " images: " + std::to_string(ordering_violations) + " violations");
        }
    }

    // ---- criterion 6: determinism across reruns and worker counts ----
    {
        const std::string flags = " --seed 11 --train-per-class 20 --test-per-class 5";
        const fs::path da = work / "det-a", db = work / "det-b", dc = work / "det-c";
        const auto ra = proc::run(gsynth_bin + " generate --source-dir " + q(src) +
                                  " --out-dir " + q(da) + flags + " --jobs 1");
        const auto rb = proc::run(gsynth_bin + " generate --source-dir " + q(src) +
                                  " --out-dir " + q(db) + flags + " --jobs 1");
        const auto rc = proc::run(gsynth_bin + " generate --source-dir " + q(src) +
                                  " --out-dir " + q(dc) + flags + " --jobs 8");
        bool pass = ra.exit_code == 0 && rb.exit_code == 0 && rc.exit_code == 0;
        std::string mismatch;
        for (const char* name :
             {"train-images-idx3-float", "t10k-images-idx3-float",
              "train-images-idx3-ubyte", "t10k-images-idx3-ubyte",
              "train-labels-idx1-ubyte", "t10k-labels-idx1-ubyte", "manifest.txt"}) {
            if (!pass) break;
            const auto ha = proc::hash_file((da / name).string());
            if (ha != proc::hash_file((db / name).string()) ||
                ha != proc::hash_file((dc / name).string())) {
                pass = false;
                mismatch = name;
            }
        }
        report(6, pass,
               pass ? "identical hashes across rerun and jobs 1 vs 8 (7 files)"
                    : "hash mismatch in " + mismatch);
    }

    // ---- criterion 7: oracle equivalence ----
    {
        RngStream rng = RngStream::derive(777, 0);
        std::size_t region_mismatches = 0, downsample_mismatches = 0;
        int region_checked = 0;
        for (int trial = 0; trial < 1000; ++trial) {
            BinaryImage img(32, 32);
            for (auto& b : img.bits()) b = rng.next_below(4) == 0;
            const std::size_t fg = img.foreground_count();
            if (fg == 0 || fg == img.size()) continue;
            const auto p = decompose(img, DecomposeMode::Morphological, CannyParams{});
            if (p.labels() != oracle::decompose_morphological(img))
                ++region_mismatches;
            ++region_checked;
        }
        for (int trial = 0; trial < 1000; ++trial) {
            BinaryImage img(64, 64);
            for (auto& b : img.bits()) b = rng.next_below(3) == 0;
            if (downsample_2x(img).bits() != oracle::downsample_blocks(img).bits())
                ++downsample_mismatches;
        }
        report(7, region_mismatches == 0 && downsample_mismatches == 0,
               "morphological decomposition vs 8-neighborhood oracle: " +
               std::to_string(region_mismatches) + "/" +
               std::to_string(region_checked) + " mismatches; downsample vs block "
               "scanner: " + std::to_string(downsample_mismatches) +
               "/1000 mismatches");
    }

    // ---- criterion 8: format fidelity ----
    {
        bool pass = true;
        std::string detail;
        try {
            // bit-exact float round-trip over the real train file
            const fs::path train = ds1k / "train-images-idx3-float";
            const auto images = read_idx_float(train);
            const fs::path copy = work / "roundtrip.idx";
            write_idx_float(images, copy);
            if (proc::hash_file(train.string()) != proc::hash_file(copy.string())) {
                pass = false;
                detail += "float round-trip not bit-exact; ";
            }

            // a single-image float file is exactly 4112 bytes
            write_idx_float({images.front()}, work / "one.idx");
            const auto size = fs::file_size(work / "one.idx");
            if (size != 4112) {
                pass = false;
                detail += "1-image float IDX is " + std::to_string(size) +
                          " bytes, want 4112; ";
            }

            // u8 export parses under an independent reader (python/struct)
            const fs::path script = work / "read_idx.py";
            {
                std::ofstream os(script);
                os << "import struct, sys\n"
                      "p = sys.argv[1]\n"
                      "f = open(p, 'rb')\n"
                      "magic, n, rows, cols = struct.unpack('>IIII', f.read(16))\n"
                      "assert magic == 0x00000803, hex(magic)\n"
                      "data = f.read()\n"
                      "assert len(data) == n * rows * cols\n"
                      "print('dims', n, rows, cols)\n"
                      "print('checksum', sum(data) % (2**32))\n";
            }
            const fs::path u8file = ds1k / "train-images-idx3-ubyte";
            const auto py =
                proc::run("python3 " + q(script) + " " + q(u8file));
            if (py.exit_code != 0) {
                pass = false;
                detail += "independent reader failed: " + py.output + "; ";
            } else {
                const auto u8 = read_idx_u8(u8file);
                std::uint64_t checksum = 0;
                for (const auto& im : u8.pixels)
                    for (auto b : im) checksum += b;
                checksum %= (1ull << 32);
                std::ostringstream want;
                want << "dims " << u8.pixels.size() << " 32 32\nchecksum " << checksum;
                if (py.output.find(want.str()) == std::string::npos) {
                    pass = false;
                    detail += "independent reader disagrees: " + py.output + "; ";
                }
            }
        } catch (const std::exception& e) {
            pass = false;
            detail += std::string("exception: ") + e.what();
        }
        report(8, pass,
               pass ? "float IDX round-trip bit-exact, 1-image file = 4112 bytes, u8 "
                      "export readable by an independent python reader"
                    : detail);
    }

    // ---- criterion 9: composition and balance at desk scale ----
    {
        bool pass = true;
        std::string detail;
        try {
            const auto manifest =
                DatasetManifest::load((ds1k / "manifest.txt").string());
            const auto counts = manifest.class_counts();
            if (counts.size() != 10) pass = false;
            for (const auto& [label, c] : counts)
                if (c.first != 90 || c.second != 10) pass = false;
            if (manifest.records.size() != 1000) pass = false;

            // split disjointness per class
            std::set<std::string> train_ids, test_ids;
            for (const auto& rec : manifest.records)
                (rec.split == Split::Train ? train_ids : test_ids)
                    .insert(rec.source_id);
            for (const auto& id : test_ids)
                if (train_ids.count(id)) pass = false;

            const auto labels = read_idx_labels(ds1k / "train-labels-idx1-ubyte");
            if (labels.size() != 900) pass = false;
            detail = "1000 records, 90 train + 10 test per class x 10 classes, "
                     "disjoint splits (full NIST scale: same checks at 6000/1000 "
                     "per class)";
        } catch (const std::exception& e) {
            pass = false;
            detail = std::string("exception: ") + e.what();
        }
        report(9, pass, detail);
    }

    // ---- criterion 10: out of scope by design ----
    info("criterion 10: classifier training is downstream of this artifact; the "
         "MNIST-format exports from criterion 8 are the enabling substitute (not "
         "run here)");

    std::printf("%d criterion failure(s)\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
