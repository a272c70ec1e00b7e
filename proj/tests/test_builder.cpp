#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "gsynth/builder.hpp"
#include "gsynth/dataset.hpp"
#include "gsynth/error.hpp"
#include "gsynth/rng.hpp"

using namespace gsynth;
namespace fs = std::filesystem;

namespace {

/// In-memory provider: blobby fake digits, deterministic per id, plus
/// optional deliberately-unusable sources.
class FakeSource : public SourceProvider {
public:
    explicit FakeSource(int per_class, int blanks_first = 0)
        : per_class_(per_class), blanks_(blanks_first) {}

    std::vector<std::string> list_class(int label) override {
        std::vector<std::string> ids;
        for (int i = 0; i < blanks_; ++i)
            ids.push_back("c" + std::to_string(label) + "/blank" + std::to_string(i));
        for (int i = 0; i < per_class_; ++i) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "c%d/img%04d", label, i);
            ids.push_back(buf);
        }
        std::sort(ids.begin(), ids.end());
        return ids;
    }

    GrayImage load(std::string_view source_id) override {
        const std::string id(source_id);
        GrayImage img(96, 96, 0.0f);
        if (id.find("blank") != std::string::npos) return img;  // unusable

        // a filled rectangle whose geometry depends on the id hash
        std::uint64_t h = 1469598103934665603ull;
        for (char ch : id) {
            h ^= static_cast<unsigned char>(ch);
            h *= 1099511628211ull;
        }
        RngStream rng = RngStream::derive(h, 0);
        const int top = 24 + static_cast<int>(rng.next_below(16));
        const int left = 24 + static_cast<int>(rng.next_below(16));
        const int hgt = 16 + static_cast<int>(rng.next_below(24));
        const int wid = 16 + static_cast<int>(rng.next_below(24));
        for (int r = top; r < std::min(96, top + hgt); ++r)
            for (int c = left; c < std::min(96, left + wid); ++c)
                img.at(r, c) = 255.0f;
        return img;
    }

private:
    int per_class_;
    int blanks_;
};

BuildConfig small_config() {
    BuildConfig config;
    config.global_seed = 42;
    config.train_per_class = 2;
    config.test_per_class = 1;
    config.classes = {0};
    return config;
}

}  // namespace

TEST_CASE("build produces the configured counts and labels") {
    FakeSource source(8);
    const BuildResult result = build(small_config(), source);
    REQUIRE(result.manifest.records.size() == 3);
    REQUIRE(result.images.size() == 3);
    for (const auto& rec : result.manifest.records) CHECK(rec.label == 0);
    CHECK(result.manifest.records[0].split == Split::Train);
    CHECK(result.manifest.records[1].split == Split::Train);
    CHECK(result.manifest.records[2].split == Split::Test);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(result.manifest.records[i].rng_stream_id == i);
}

TEST_CASE("class balance and split disjointness across all classes") {
    FakeSource source(10);
    BuildConfig config = small_config();
    config.classes = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    config.train_per_class = 4;
    config.test_per_class = 2;
    const BuildResult result = build(config, source);

    const auto counts = result.manifest.class_counts();
    REQUIRE(counts.size() == 10);
    for (const auto& [label, c] : counts) {
        CHECK(c.first == 4);
        CHECK(c.second == 2);
    }
    // no source may serve both splits
    std::set<std::string> train_ids, test_ids;
    for (const auto& rec : result.manifest.records)
        (rec.split == Split::Train ? train_ids : test_ids).insert(rec.source_id);
    for (const auto& id : test_ids) CHECK(train_ids.count(id) == 0);
}

TEST_CASE("unusable sources are skipped and logged") {
    FakeSource source(5, 3);  // three blank sources sort first
    std::ostringstream log;
    const BuildResult result = build(small_config(), source, &log);
    CHECK(result.rejects.size() == 3);
    for (const auto& rej : result.rejects)
        CHECK(rej.reason.find("foreground") != std::string::npos);
    CHECK(log.str().find("reject") != std::string::npos);
    CHECK(result.manifest.records.size() == 3);
}

TEST_CASE("source exhaustion names the class") {
    FakeSource source(2);  // need 3 per class
    try {
        build(small_config(), source);
        FAIL("expected DataError");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("class 0") != std::string::npos);
    }
}

TEST_CASE("builds are independent of the worker count") {
    FakeSource source(8);
    BuildConfig config = small_config();
    config.classes = {0, 1, 2};
    config.train_per_class = 5;
    config.test_per_class = 2;

    config.jobs = 1;
    const BuildResult a = build(config, source);
    config.jobs = 8;
    const BuildResult b = build(config, source);
    REQUIRE(a.images.size() == b.images.size());
    for (std::size_t i = 0; i < a.images.size(); ++i)
        CHECK(a.images[i].values() == b.images[i].values());
}

TEST_CASE("regenerate reproduces the build byte for byte") {
    FakeSource source(8);
    const BuildConfig config = small_config();
    const BuildResult original = build(config, source);

    const auto again = regenerate(original.manifest, source, 2);
    REQUIRE(again.size() == original.images.size());
    for (std::size_t i = 0; i < again.size(); ++i)
        CHECK(again[i].values() == original.images[i].values());

    // a different seed produces different images
    DatasetManifest tweaked = original.manifest;
    tweaked.global_seed ^= 1;
    const auto other = regenerate(tweaked, source, 1);
    bool any_differs = false;
    for (std::size_t i = 0; i < other.size(); ++i)
        if (other[i].values() != original.images[i].values()) any_differs = true;
    CHECK(any_differs);
}

TEST_CASE("regenerate fails when a source is missing") {
    FakeSource source(8);
    const BuildResult original = build(small_config(), source);
    DatasetManifest broken = original.manifest;
    broken.records[0].source_id = "c0/definitely-not-there";

    class MissingSource : public FakeSource {
    public:
        using FakeSource::FakeSource;
        GrayImage load(std::string_view id) override {
            if (std::string(id).find("not-there") != std::string::npos)
                throw DataError("no such source");
            return FakeSource::load(id);
        }
    } missing(8);
    CHECK_THROWS_AS(regenerate(broken, missing), DataError);
}

TEST_CASE("manifest text round-trips") {
    FakeSource source(8);
    BuildConfig config = small_config();
    config.params.binarize = BinarizeRule::fixed(99);
    config.params.edge_mode = DecomposeMode::Morphological;
    config.params.crop = CropMode::ForegroundCentroid;
    const BuildResult result = build(config, source);

    std::stringstream buf;
    result.manifest.serialize(buf);
    const DatasetManifest back = DatasetManifest::parse(buf);
    CHECK(back.global_seed == result.manifest.global_seed);
    CHECK(back.params.variance == result.manifest.params.variance);
    CHECK(back.params.binarize.mode == BinarizeRule::Mode::FixedThreshold);
    CHECK(back.params.binarize.threshold == 99);
    CHECK(back.params.edge_mode == DecomposeMode::Morphological);
    CHECK(back.params.crop == CropMode::ForegroundCentroid);
    CHECK(back.records.size() == result.manifest.records.size());
    for (std::size_t i = 0; i < back.records.size(); ++i) {
        CHECK(back.records[i].label == result.manifest.records[i].label);
        CHECK(back.records[i].split == result.manifest.records[i].split);
        CHECK(back.records[i].source_id == result.manifest.records[i].source_id);
        CHECK(back.records[i].rng_stream_id ==
              result.manifest.records[i].rng_stream_id);
    }
}

TEST_CASE("directory source: class folders, warnings, sidecar, bad files") {
    const fs::path root = fs::temp_directory_path() /
                          ("gsynth-src-" + std::to_string(::getpid()));
    fs::remove_all(root);
    fs::create_directories(root / "30");   // hex code for '0'
    fs::create_directories(root / "7");    // plain digit folder
    fs::create_directories(root / "zz");   // not a digit class
    {
        std::ofstream png(root / "30" / "a.png", std::ios::binary);
        png << "not really a png";
        std::ofstream pgm(root / "30" / "b.pgm", std::ios::binary);
        pgm << "P5\n4 4\n255\n";
        for (int i = 0; i < 16; ++i) pgm.put('\x80');
        std::ofstream txt(root / "30" / "notes.txt");  // ignored extension
        txt << "hello";
        std::ofstream other(root / "7" / "c.pgm", std::ios::binary);
        other << "P5\n2 2\n255\nabcd";
    }

    std::ostringstream log;
    DirectorySource source(root, &log);
    CHECK(log.str().find("zz") != std::string::npos);  // warned and skipped
    CHECK(source.list_class(0) ==
          std::vector<std::string>{"30/a.png", "30/b.pgm"});
    CHECK(source.list_class(7) == std::vector<std::string>{"7/c.pgm"});
    CHECK(source.list_class(3).empty());

    CHECK(source.load("30/b.pgm").width() == 4);
    CHECK_THROWS_AS(source.load("30/a.png"), DataError);  // truncated file

    // a sidecar listing overrides the folder convention
    {
        std::ofstream sidecar(root / "labels.tsv");
        sidecar << "30/b.pgm\t5\n7/c.pgm\t5\nmissing.png\t99\n";
    }
    DirectorySource with_sidecar(root);
    CHECK(with_sidecar.list_class(5) ==
          std::vector<std::string>{"30/b.pgm", "7/c.pgm"});
    CHECK(with_sidecar.list_class(0).empty());

    fs::remove_all(root);
    const auto make_missing = [&] { DirectorySource missing(root); };
    CHECK_THROWS_AS(make_missing(), DataError);
}

TEST_CASE("write_dataset + load_dataset round-trip with audit") {
    FakeSource source(8);
    BuildConfig config = small_config();
    config.classes = {0, 1};
    const BuildResult result = build(config, source);

    const fs::path dir = fs::temp_directory_path() /
                         ("gsynth-ds-" + std::to_string(::getpid()));
    fs::remove_all(dir);
    write_dataset(dir, result);

    const ImageStore store = load_dataset(dir);
    REQUIRE(store.images.size() == result.images.size());
    for (std::size_t i = 0; i < store.images.size(); ++i)
        CHECK(store.images[i].values() == result.images[i].values());

    const AuditReport audit = audit_permutation(store);
    CHECK(audit.mismatches == 0);
    fs::remove_all(dir);
}
