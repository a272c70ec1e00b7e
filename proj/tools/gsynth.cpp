// gsynth: generate / verify / preview / masks for the Gaussian synthetic
// digit dataset. Exit codes: 0 success, 1 usage error, 2 data or build
// error, 3 verification failure.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "gsynth/builder.hpp"
#include "gsynth/dataset.hpp"
#include "gsynth/error.hpp"
#include "gsynth/idx.hpp"
#include "gsynth/png_io.hpp"
#include "gsynth/regions.hpp"
#include "gsynth/rng.hpp"
#include "gsynth/stats.hpp"
#include "gsynth/synthesis.hpp"

namespace fs = std::filesystem;
using namespace gsynth;

namespace {

std::vector<int> parse_classes(const std::string& spec) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < spec.size()) {
        std::size_t comma = spec.find(',', pos);
        if (comma == std::string::npos) comma = spec.size();
        const std::string token = spec.substr(pos, comma - pos);
        const auto dash = token.find('-');
        auto digit = [](const std::string& s) {
            if (s.size() != 1 || s[0] < '0' || s[0] > '9')
                throw CLI::ValidationError("--classes",
                                           "expected digits 0-9, got '" + s + "'");
            return s[0] - '0';
        };
        if (dash == std::string::npos) {
            out.push_back(digit(token));
        } else {
            const int lo = digit(token.substr(0, dash));
            const int hi = digit(token.substr(dash + 1));
            if (lo > hi)
                throw CLI::ValidationError("--classes", "empty range '" + token + "'");
            for (int c = lo; c <= hi; ++c) out.push_back(c);
        }
        pos = comma + 1;
    }
    if (out.empty()) throw CLI::ValidationError("--classes", "no classes given");
    return out;
}

BinarizeRule parse_binarize(const std::string& spec) {
    if (spec == "otsu") return BinarizeRule::otsu();
    if (spec.rfind("fixed:", 0) == 0) {
        try {
            return BinarizeRule::fixed(std::stoi(spec.substr(6)));
        } catch (const std::exception&) {
            throw CLI::ValidationError("--binarize", "bad threshold in '" + spec + "'");
        }
    }
    throw CLI::ValidationError("--binarize", "expected otsu or fixed:<t>");
}

struct PipelineFlags {
    std::string binarize = "otsu";
    std::string polarity = "bright";
    std::string crop = "center";
    std::string edge_mode = "canny";
    double canny_sigma = 1.0;
    double canny_low = 0.1;
    double canny_high = 0.3;
    double variance = 1024.0;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--binarize", binarize,
                        "Binarization rule: otsu or fixed:<t> with t in 0..255")
            ->capture_default_str();
        cmd->add_option("--polarity", polarity, "Ink polarity: bright or dark")
            ->check(CLI::IsMember({"bright", "dark"}))
            ->capture_default_str();
        cmd->add_option("--crop", crop, "64x64 crop anchor: center or centroid")
            ->check(CLI::IsMember({"center", "centroid"}))
            ->capture_default_str();
        cmd->add_option("--edge-mode", edge_mode,
                        "Region decomposition: canny or morphology")
            ->check(CLI::IsMember({"canny", "morphology"}))
            ->capture_default_str();
        cmd->add_option("--canny-sigma", canny_sigma, "Gaussian blur sigma, pixels")
            ->capture_default_str();
        cmd->add_option("--canny-low", canny_low,
                        "Low hysteresis threshold, fraction of max gradient")
            ->capture_default_str();
        cmd->add_option("--canny-high", canny_high,
                        "High hysteresis threshold, fraction of max gradient")
            ->capture_default_str();
        cmd->add_option("--variance", variance, "Gaussian variance of pixel values")
            ->capture_default_str();
    }

    GenerationParams to_params() const {
        GenerationParams p;
        p.variance = variance;
        p.binarize = parse_binarize(binarize);
        p.polarity = polarity == "bright" ? Polarity::InkIsBright : Polarity::InkIsDark;
        p.crop = crop == "center" ? CropMode::GeometricCenter
                                  : CropMode::ForegroundCentroid;
        p.edge_mode = edge_mode == "canny" ? DecomposeMode::CannyGuided
                                           : DecomposeMode::Morphological;
        p.canny.blur_sigma = canny_sigma;
        p.canny.low_threshold = canny_low;
        p.canny.high_threshold = canny_high;
        return p;
    }
};

void write_binary_png(const BinaryImage& img, const fs::path& path) {
    std::vector<std::uint8_t> px(img.size());
    for (std::size_t i = 0; i < img.size(); ++i) px[i] = img.bits()[i] ? 255 : 0;
    write_png_gray(path, px, img.width(), img.height());
}

int cmd_generate(const std::string& source_dir, const std::string& out_dir,
                 std::uint64_t seed, int train_per_class, int test_per_class,
                 const std::string& classes, const PipelineFlags& flags, int jobs) {
    BuildConfig config;
    config.global_seed = seed;
    config.train_per_class = train_per_class;
    config.test_per_class = test_per_class;
    config.classes = parse_classes(classes);
    config.params = flags.to_params();
    config.jobs = jobs;
    config.validate();

    DirectorySource source(source_dir, &std::cerr);
    const BuildResult result = build(config, source, &std::cerr);
    write_dataset(out_dir, result, &std::cerr);

    std::cout << "generated " << result.manifest.records.size() << " images ("
              << result.rejects.size() << " sources rejected)\n";
    for (const auto& [label, counts] : result.manifest.class_counts())
        std::cout << "  class " << label << ": " << counts.first << " train, "
                  << counts.second << " test\n";
    return 0;
}

int cmd_verify(const std::string& dataset_dir, const VerifyOptions& options,
               const std::string& report_dir) {
    const ImageStore store = load_dataset(dataset_dir);
    const VerifyOutcome outcome = run_verify(store, options);

    for (const auto& r : outcome.reports)
        std::printf("%s %s statistic=%.6g critical=%.6g alpha=%g n=%zu\n",
                    r.pass ? "PASS" : "FAIL", r.test_name.c_str(), r.statistic,
                    r.critical_value, r.alpha, r.sample_size);

    const fs::path dir = report_dir.empty() ? fs::path(dataset_dir)
                                            : fs::path(report_dir);
    fs::create_directories(dir);
    write_verify_report(outcome, dir / "verify-report.txt", dir / "verify-report.csv");
    std::cout << "report written to " << (dir / "verify-report.txt").string() << "\n";
    return outcome.all_pass ? 0 : 3;
}

int cmd_preview(const std::string& dataset_dir, const std::string& split_name,
                const std::vector<int>& indices, const std::string& out_dir,
                double bin_width) {
    const ImageStore store = load_dataset(dataset_dir);
    const Split split = split_name == "train" ? Split::Train : Split::Test;
    const double sigma = std::sqrt(store.manifest.params.variance);

    std::vector<std::size_t> global;  // store indices of the chosen split, file order
    for (std::size_t i = 0; i < store.manifest.records.size(); ++i)
        if (store.manifest.records[i].split == split) global.push_back(i);

    const fs::path dir = out_dir.empty() ? fs::path(dataset_dir) : fs::path(out_dir);
    fs::create_directories(dir);
    for (int index : indices) {
        if (index < 0 || static_cast<std::size_t>(index) >= global.size())
            throw DataError("preview: index " + std::to_string(index) +
                            " out of range for split " + split_name + " (size " +
                            std::to_string(global.size()) + ")");
        const GrayImage& image = store.images[global[index]];
        const std::string stem = split_name + "-" + std::to_string(index);
        write_png_preview(image, dir / ("preview-" + stem + ".png"), sigma);
        const Histogram h = histogram_export(image, bin_width, 0.0, sigma);
        write_histogram_csv(h, (dir / ("histogram-" + stem + ".csv")).string());
    }
    std::cout << "wrote " << indices.size() << " preview(s) to " << dir.string()
              << "\n";
    return 0;
}

int cmd_masks(const std::string& source_file, const std::string& out_dir,
              const PipelineFlags& flags, std::uint64_t seed) {
    const GenerationParams params = flags.to_params();
    params.canny.validate();
    const GrayImage src = read_image(source_file);
    if (src.width() < 64 || src.height() < 64)
        throw DataError("masks: source must be at least 64x64");

    const BinarizeResult bin = binarize(src, params.binarize, params.polarity);
    const BinaryImage cropped = central_crop(bin.image, 64, 64, params.crop);
    if (cropped.foreground_count() == 0)
        throw DataError("masks: degenerate mask (no foreground after cropping)");
    const BinaryImage small = downsample_2x(cropped);

    const fs::path dir(out_dir);
    fs::create_directories(dir);
    write_binary_png(bin.image, dir / "binarized.png");
    write_binary_png(cropped, dir / "cropped.png");
    write_binary_png(small, dir / "downsampled.png");

    RegionPartition partition(1, 1, {Region::Outside});
    if (params.edge_mode == DecomposeMode::CannyGuided) {
        const EdgeMap edges = canny(small, params.canny);
        BinaryImage edge_img(edges.width(), edges.height());
        edge_img.bits() = edges.edge();
        write_binary_png(edge_img, dir / "edges.png");
        partition = decompose_regions(small, edges, DecomposeMode::CannyGuided);
    } else {
        partition = decompose(small, DecomposeMode::Morphological, params.canny);
        BinaryImage edge_img(partition.width(), partition.height());
        for (int r = 0; r < partition.height(); ++r)
            for (int c = 0; c < partition.width(); ++c)
                edge_img.at(r, c) = partition.label(r, c) == Region::InsideBoundary;
        write_binary_png(edge_img, dir / "edges.png");
    }

    const std::array<std::pair<Region, const char*>, 4> region_files = {{
        {Region::Outside, "region_outside.png"},
        {Region::OutsideBoundary, "region_outside_boundary.png"},
        {Region::InsideBoundary, "region_inside_boundary.png"},
        {Region::Inside, "region_inside.png"},
    }};
    for (const auto& [region, name] : region_files) {
        BinaryImage mask(partition.width(), partition.height());
        for (int r = 0; r < partition.height(); ++r)
            for (int c = 0; c < partition.width(); ++c)
                mask.at(r, c) = partition.label(r, c) == region;
        write_binary_png(mask, dir / name);
    }

    // synthetic panels from a fixed stream, full image plus one per region
    RngStream stream = RngStream::derive(seed, 0);
    const SynthesisResult synth = synthesize_image(partition, stream, params.variance);
    const double sigma = std::sqrt(params.variance);
    write_png_preview(synth.image, dir / "synthetic.png", sigma);
    for (const auto& [region, name] : region_files) {
        GrayImage part(partition.width(), partition.height(),
                       static_cast<float>(-4.0 * sigma));  // renders black
        for (int r = 0; r < partition.height(); ++r)
            for (int c = 0; c < partition.width(); ++c)
                if (partition.label(r, c) == region)
                    part.at(r, c) = synth.image.at(r, c);
        write_png_preview(part, dir / (std::string("synthetic_") + name), sigma);
    }

    std::cout << "wrote mask decomposition to " << dir.string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Synthetic handwritten-digit dataset with N(0, variance) pixel "
                 "values, plus its verification suite",
                 "gsynth"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand(
        "generate", "Build a dataset from a class-foldered source tree");
    std::string gen_source, gen_out;
    std::uint64_t gen_seed = 42;
    int gen_train = 6000, gen_test = 1000, gen_jobs = 1;
    std::string gen_classes = "0-9";
    PipelineFlags gen_flags;
    gen->add_option("--source-dir", gen_source, "Source image tree (NIST-style)")
        ->required();
    gen->add_option("--out-dir", gen_out, "Output directory")->required();
    gen->add_option("--seed", gen_seed, "Global 64-bit seed")->capture_default_str();
    gen->add_option("--train-per-class", gen_train, "Training images per class")
        ->capture_default_str();
    gen->add_option("--test-per-class", gen_test, "Testing images per class")
        ->capture_default_str();
    gen->add_option("--classes", gen_classes, "Class list, e.g. 0-9 or 0,3,7")
        ->capture_default_str();
    gen_flags.add_to(gen);
    gen->add_option("--jobs", gen_jobs, "Worker threads (output independent of N)")
        ->capture_default_str();

    // verify
    auto* ver = app.add_subcommand("verify", "Run distribution checks on a dataset");
    std::string ver_dataset, ver_report;
    std::string ver_checks = "audit,pooled-ks,image-ks,chi2,stationarity";
    VerifyOptions ver_options;
    ver->add_option("--dataset", ver_dataset, "Dataset directory from generate")
        ->required();
    ver->add_option("--alpha", ver_options.alpha, "Significance level")
        ->capture_default_str();
    ver->add_option("--checks", ver_checks,
                    "Comma list of audit,pooled-ks,image-ks,chi2,stationarity")
        ->capture_default_str();
    ver->add_option("--pairs", ver_options.stationarity_pairs,
                    "Random position pairs for the stationarity check")
        ->capture_default_str();
    ver->add_flag("--all-pairs", ver_options.stationarity_all_pairs,
                  "Test every position pair (slow)");
    ver->add_option("--pair-seed", ver_options.pair_seed,
                    "Seed for position pair sampling")
        ->capture_default_str();
    ver->add_option("--min-image-pass-rate", ver_options.min_image_pass_rate,
                    "Required per-image KS pass fraction")
        ->capture_default_str();
    ver->add_option("--min-pair-pass-rate", ver_options.min_pair_pass_rate,
                    "Required stationarity pair pass fraction")
        ->capture_default_str();
    ver->add_option("--report-dir", ver_report,
                    "Where to write verify-report.{txt,csv} (default: dataset dir)");

    // preview
    auto* pre = app.add_subcommand("preview",
                                   "Export PNG previews and histogram CSVs");
    std::string pre_dataset, pre_split = "train", pre_out;
    std::vector<int> pre_indices{0};
    double pre_bin_width = 8.0;
    pre->add_option("--dataset", pre_dataset, "Dataset directory")->required();
    pre->add_option("--split", pre_split, "Which split to index")
        ->check(CLI::IsMember({"train", "test"}))
        ->capture_default_str();
    pre->add_option("--index", pre_indices, "Image indices within the split")
        ->capture_default_str();
    pre->add_option("--out-dir", pre_out, "Output directory (default: dataset dir)");
    pre->add_option("--bin-width", pre_bin_width, "Histogram bin width")
        ->capture_default_str();

    // masks
    auto* msk = app.add_subcommand(
        "masks", "Decompose one source image and export every mask stage");
    std::string msk_source, msk_out;
    std::uint64_t msk_seed = 42;
    PipelineFlags msk_flags;
    msk->add_option("--source", msk_source, "Source image file (.png/.pgm)")
        ->required();
    msk->add_option("--out-dir", msk_out, "Output directory")->required();
    msk_flags.add_to(msk);
    msk->add_option("--seed", msk_seed, "Seed for the synthetic panels")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (gen->parsed())
            return cmd_generate(gen_source, gen_out, gen_seed, gen_train, gen_test,
                                gen_classes, gen_flags, gen_jobs);
        if (ver->parsed()) {
            ver_options.checks.clear();
            std::size_t pos = 0;
            while (pos <= ver_checks.size()) {
                std::size_t comma = ver_checks.find(',', pos);
                if (comma == std::string::npos) comma = ver_checks.size();
                const std::string name = ver_checks.substr(pos, comma - pos);
                if (name.empty() ||
                    (name != "audit" && name != "pooled-ks" && name != "image-ks" &&
                     name != "chi2" && name != "stationarity")) {
                    std::cerr << "unknown check: '" << name << "'\n";
                    return 1;
                }
                ver_options.checks.insert(name);
                pos = comma + 1;
            }
            return cmd_verify(ver_dataset, ver_options, ver_report);
        }
        if (pre->parsed())
            return cmd_preview(pre_dataset, pre_split, pre_indices, pre_out,
                               pre_bin_width);
        if (msk->parsed()) return cmd_masks(msk_source, msk_out, msk_flags, msk_seed);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
