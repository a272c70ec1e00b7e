#include "gsynth/builder.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <thread>

#include "gsynth/error.hpp"
#include "gsynth/idx.hpp"
#include "gsynth/png_io.hpp"
#include "gsynth/rng.hpp"
#include "gsynth/synthesis.hpp"

namespace gsynth {

namespace fs = std::filesystem;

void BuildConfig::validate() const {
    if (train_per_class < 0 || test_per_class < 0)
        throw std::invalid_argument("BuildConfig: negative per-class counts");
    if (classes.empty())
        throw std::invalid_argument("BuildConfig: classes must be non-empty");
    for (int c : classes)
        if (c < 0 || c > 9)
            throw std::invalid_argument("BuildConfig: class labels must lie in 0..9");
    if (!(params.variance > 0.0))
        throw std::invalid_argument("BuildConfig: variance must be positive");
    if (jobs < 1) throw std::invalid_argument("BuildConfig: jobs must be >= 1");
    params.canny.validate();
}

DirectorySource::DirectorySource(fs::path root, std::ostream* log)
    : root_(std::move(root)) {
    if (!fs::is_directory(root_))
        throw DataError("source directory not found: " + root_.string());

    // sidecar listing wins over the folder convention
    const fs::path sidecar = root_ / "labels.tsv";
    if (fs::is_regular_file(sidecar)) {
        std::ifstream is(sidecar);
        std::string line;
        while (std::getline(is, line)) {
            if (line.empty()) continue;
            const auto tab = line.find('\t');
            if (tab == std::string::npos) continue;
            const int label = std::atoi(line.c_str() + tab + 1);
            if (label >= 0 && label <= 9)
                by_class_[label].push_back(line.substr(0, tab));
        }
        for (auto& [label, ids] : by_class_) std::sort(ids.begin(), ids.end());
        return;
    }

    for (const auto& entry : fs::directory_iterator(root_)) {
        if (!entry.is_directory()) continue;
        const std::string name = entry.path().filename().string();
        int label = -1;
        if (name.size() == 1 && name[0] >= '0' && name[0] <= '9')
            label = name[0] - '0';
        else if (name.size() == 2 && name[0] == '3' && name[1] >= '0' && name[1] <= '9')
            label = name[1] - '0';  // hex character code 0x30..0x39
        if (label < 0) {
            if (log)
                *log << "warning: skipping non-digit class folder: " << name << "\n";
            continue;
        }
        auto& ids = by_class_[label];
        for (const auto& f : fs::recursive_directory_iterator(entry.path())) {
            if (!f.is_regular_file()) continue;
            const auto ext = f.path().extension().string();
            if (ext != ".png" && ext != ".PNG" && ext != ".pgm" && ext != ".PGM")
                continue;
            ids.push_back(fs::relative(f.path(), root_).generic_string());
        }
    }
    for (auto& [label, ids] : by_class_) std::sort(ids.begin(), ids.end());
}

std::vector<std::string> DirectorySource::list_class(int label) {
    const auto it = by_class_.find(label);
    return it == by_class_.end() ? std::vector<std::string>{} : it->second;
}

GrayImage DirectorySource::load(std::string_view source_id) {
    return read_image(root_ / fs::path(std::string(source_id)));
}

std::optional<RegionPartition> prepare_mask(const GrayImage& src,
                                            const GenerationParams& params,
                                            std::string* reject_reason) {
    auto reject = [&](std::string why) -> std::optional<RegionPartition> {
        if (reject_reason) *reject_reason = std::move(why);
        return std::nullopt;
    };

    if (src.width() < 64 || src.height() < 64)
        return reject("source smaller than 64x64 (" + std::to_string(src.width()) +
                      "x" + std::to_string(src.height()) + ")");

    const BinarizeResult bin = binarize(src, params.binarize, params.polarity);
    const BinaryImage cropped = central_crop(bin.image, 64, 64, params.crop);
    if (cropped.foreground_count() == 0) return reject("no foreground after cropping");

    const BinaryImage small = downsample_2x(cropped);
    try {
        return decompose(small, params.edge_mode, params.canny);
    } catch (const DegenerateMaskError& e) {
        return reject(e.what());
    }
}

namespace {

void synthesize_range(const std::vector<const RegionPartition*>& partitions,
                      std::uint64_t global_seed, double variance, int jobs,
                      std::vector<GrayImage>& out) {
    const std::size_t n = partitions.size();
    out.clear();
    out.resize(n, GrayImage(1, 1));

    auto worker = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            RngStream stream = RngStream::derive(global_seed, i);
            out[i] = synthesize_image(*partitions[i], stream, variance).image;
        }
    };

    const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
    if (workers == 1) {
        worker(0, n);
        return;
    }
    std::vector<std::thread> threads;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (int t = 0; t < workers; ++t) {
        const std::size_t begin = static_cast<std::size_t>(t) * chunk;
        if (begin >= n) break;
        threads.emplace_back(worker, begin, std::min(n, begin + chunk));
    }
    for (auto& t : threads) t.join();
}

}  // namespace

BuildResult build(const BuildConfig& config, SourceProvider& source, std::ostream* log) {
    config.validate();

    std::vector<int> classes = config.classes;
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());

    BuildResult result;
    result.manifest.global_seed = config.global_seed;
    result.manifest.params = config.params;
    result.manifest.params.rng_algorithm = RngStream::kAlgorithmTag;

    const int per_class = config.train_per_class + config.test_per_class;
    std::vector<RegionPartition> partitions;
    partitions.reserve(static_cast<std::size_t>(per_class) * classes.size());

    for (int label : classes) {
        const std::vector<std::string> ids = source.list_class(label);
        int usable = 0;
        for (const std::string& id : ids) {
            if (usable == per_class) break;
            std::string reason;
            GrayImage src(1, 1);
            try {
                src = source.load(id);
            } catch (const DataError& e) {
                result.rejects.push_back({id, e.what()});
                if (log) *log << "reject " << id << ": " << e.what() << "\n";
                continue;
            }
            auto partition = prepare_mask(src, config.params, &reason);
            if (!partition) {
                result.rejects.push_back({id, reason});
                if (log) *log << "reject " << id << ": " << reason << "\n";
                continue;
            }
            DatasetRecord rec;
            rec.label = static_cast<std::uint32_t>(label);
            rec.split = usable < config.train_per_class ? Split::Train : Split::Test;
            rec.rng_stream_id = result.manifest.records.size();
            rec.source_id = id;
            result.manifest.records.push_back(std::move(rec));
            partitions.push_back(std::move(*partition));
            ++usable;
        }
        if (usable < per_class)
            throw DataError("build: class " + std::to_string(label) + " needs " +
                            std::to_string(per_class) + " usable sources, found " +
                            std::to_string(usable));
    }

    std::vector<const RegionPartition*> ptrs;
    ptrs.reserve(partitions.size());
    for (const auto& p : partitions) ptrs.push_back(&p);
    synthesize_range(ptrs, config.global_seed, config.params.variance, config.jobs,
                     result.images);
    return result;
}

std::vector<GrayImage> regenerate(const DatasetManifest& manifest,
                                  SourceProvider& source, int jobs) {
    std::vector<RegionPartition> partitions;
    partitions.reserve(manifest.records.size());
    for (const auto& rec : manifest.records) {
        GrayImage src(1, 1);
        try {
            src = source.load(rec.source_id);
        } catch (const DataError& e) {
            throw DataError("regenerate: source " + rec.source_id +
                            " unavailable: " + e.what());
        }
        std::string reason;
        auto partition = prepare_mask(src, manifest.params, &reason);
        if (!partition)
            throw DataError("regenerate: source " + rec.source_id +
                            " no longer usable: " + reason);
        partitions.push_back(std::move(*partition));
    }

    std::vector<const RegionPartition*> ptrs;
    ptrs.reserve(partitions.size());
    for (const auto& p : partitions) ptrs.push_back(&p);
    std::vector<GrayImage> images;
    synthesize_range(ptrs, manifest.global_seed, manifest.params.variance, jobs, images);
    return images;
}

void write_dataset(const fs::path& out_dir, const BuildResult& result,
                   std::ostream* log) {
    fs::create_directories(out_dir);

    std::vector<GrayImage> train, test;
    std::vector<std::uint8_t> train_labels, test_labels;
    for (std::size_t i = 0; i < result.manifest.records.size(); ++i) {
        const auto& rec = result.manifest.records[i];
        if (rec.split == Split::Train) {
            train.push_back(result.images[i]);
            train_labels.push_back(static_cast<std::uint8_t>(rec.label));
        } else {
            test.push_back(result.images[i]);
            test_labels.push_back(static_cast<std::uint8_t>(rec.label));
        }
    }

    const double sigma = std::sqrt(result.manifest.params.variance);
    write_idx_float(train, out_dir / "train-images-idx3-float");
    write_idx_float(test, out_dir / "t10k-images-idx3-float");
    write_idx_u8(train, out_dir / "train-images-idx3-ubyte", sigma);
    write_idx_u8(test, out_dir / "t10k-images-idx3-ubyte", sigma);
    write_idx_labels(train_labels, out_dir / "train-labels-idx1-ubyte");
    write_idx_labels(test_labels, out_dir / "t10k-labels-idx1-ubyte");
    result.manifest.save((out_dir / "manifest.txt").string());

    if (log) {
        std::size_t clipped = 0;
        for (const auto& im : result.images) clipped += count_clipped(im, sigma);
        *log << "wrote " << train.size() << " train + " << test.size()
             << " test images to " << out_dir.string() << " (u8 quantizer clipped "
             << clipped << " pixels)\n";
    }
}

}  // namespace gsynth
