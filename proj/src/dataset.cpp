#include "gsynth/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "gsynth/error.hpp"
#include "gsynth/gaussian.hpp"
#include "gsynth/idx.hpp"
#include "gsynth/rng.hpp"

namespace gsynth {

namespace fs = std::filesystem;

ImageStore load_dataset(const fs::path& dir) {
    ImageStore store;
    store.manifest = DatasetManifest::load((dir / "manifest.txt").string());

    const auto train = read_idx_float(dir / "train-images-idx3-float");
    const auto test = read_idx_float(dir / "t10k-images-idx3-float");
    const auto train_labels = read_idx_labels(dir / "train-labels-idx1-ubyte");
    const auto test_labels = read_idx_labels(dir / "t10k-labels-idx1-ubyte");

    if (train.size() != train_labels.size() || test.size() != test_labels.size())
        throw DataError("dataset: image/label count mismatch in " + dir.string());

    std::size_t train_i = 0, test_i = 0;
    store.images.reserve(store.manifest.records.size());
    for (const auto& rec : store.manifest.records) {
        if (rec.split == Split::Train) {
            if (train_i >= train.size())
                throw DataError("dataset: train file shorter than manifest");
            if (train_labels[train_i] != rec.label)
                throw DataError("dataset: train label mismatch at file index " +
                                std::to_string(train_i));
            store.images.push_back(train[train_i++]);
        } else {
            if (test_i >= test.size())
                throw DataError("dataset: test file shorter than manifest");
            if (test_labels[test_i] != rec.label)
                throw DataError("dataset: test label mismatch at file index " +
                                std::to_string(test_i));
            store.images.push_back(test[test_i++]);
        }
    }
    if (train_i != train.size() || test_i != test.size())
        throw DataError("dataset: IDX files hold more images than the manifest lists");
    return store;
}

namespace {

// order-preserving map to unsigned keys; total order distinguishes -0/+0
std::uint32_t float_key(float v) {
    std::uint32_t u;
    std::memcpy(&u, &v, 4);
    return (u & 0x80000000u) ? ~u : (u | 0x80000000u);
}

std::vector<std::uint32_t> sorted_keys(const std::vector<float>& values) {
    std::vector<std::uint32_t> keys(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) keys[i] = float_key(values[i]);
    std::sort(keys.begin(), keys.end());
    return keys;
}

}  // namespace

TestReport AuditReport::as_report() const {
    TestReport r;
    r.test_name = "audit-permutation";
    r.statistic = static_cast<double>(mismatches);
    r.critical_value = 1.0;  // pass means zero mismatching images
    r.alpha = 0.0;
    r.pass = mismatches == 0;
    r.sample_size = images_checked;
    return r;
}

AuditReport audit_permutation(const ImageStore& store) {
    AuditReport report;
    report.images_checked = store.images.size();
    for (std::size_t i = 0; i < store.images.size(); ++i) {
        const auto& rec = store.manifest.records[i];
        RngStream stream = RngStream::derive(store.manifest.global_seed,
                                             rec.rng_stream_id);
        const GaussianVector gv = gaussian_vector(stream, store.manifest.params.variance);
        if (sorted_keys(store.images[i].values()) != sorted_keys(gv.raw())) {
            ++report.mismatches;
            if (report.mismatch_indices.size() < 32) report.mismatch_indices.push_back(i);
        }
    }
    return report;
}

std::vector<PositionPair> sample_position_pairs(std::size_t count, int width,
                                                int height, std::uint64_t seed) {
    // dedicated stream id, disjoint from the per-image indices
    RngStream stream = RngStream::derive(seed, 0xBEEF5EEDBEEF5EEDull);
    const std::uint64_t positions = static_cast<std::uint64_t>(width) * height;
    if (count > positions * (positions - 1) / 2)
        throw std::invalid_argument(
            "sample_position_pairs: more pairs requested than exist");
    std::set<PositionPair> seen;
    std::vector<PositionPair> out;
    while (out.size() < count) {
        auto p = static_cast<std::uint16_t>(stream.next_below(positions));
        auto q = static_cast<std::uint16_t>(stream.next_below(positions));
        if (p == q) continue;
        if (p > q) std::swap(p, q);
        if (seen.insert({p, q}).second) out.push_back({p, q});
    }
    return out;
}

std::vector<TestReport> stationarity_test(const ImageStore& store,
                                          const std::vector<PositionPair>& pairs,
                                          double alpha) {
    if (store.images.size() < 1000)
        throw std::invalid_argument(
            "stationarity_test: needs at least 1000 images, got " +
            std::to_string(store.images.size()));

    // sort each position's cross-image sequence once; pairs then cost a
    // single linear sweep, which is what makes --all-pairs feasible
    std::map<std::uint16_t, std::vector<double>> sorted_at;
    for (const auto& [p, q] : pairs) {
        sorted_at.try_emplace(p);
        sorted_at.try_emplace(q);
    }
    for (auto& [pos, seq] : sorted_at) {
        seq.resize(store.images.size());
        for (std::size_t i = 0; i < store.images.size(); ++i)
            seq[i] = store.images[i].values()[pos];
        std::sort(seq.begin(), seq.end());
    }

    std::vector<TestReport> reports;
    reports.reserve(pairs.size());
    const int w = store.images.front().width();
    for (const auto& [p, q] : pairs) {
        TestReport r = ks_two_sample_sorted(
            sorted_at[p], sorted_at[q], alpha,
            "stationarity(" + std::to_string(p / w) + "," + std::to_string(p % w) +
                ")-(" + std::to_string(q / w) + "," + std::to_string(q % w) + ")");
        reports.push_back(std::move(r));
    }
    return reports;
}

VerifyOutcome run_verify(const ImageStore& store, const VerifyOptions& options) {
    VerifyOutcome outcome;
    const double sigma = std::sqrt(store.manifest.params.variance);
    const Cdf cdf = [sigma](double x) { return normal_cdf(x, 0.0, sigma); };

    auto add = [&outcome](TestReport r) {
        outcome.all_pass = outcome.all_pass && r.pass;
        outcome.reports.push_back(std::move(r));
    };

    if (options.checks.count("audit")) {
        outcome.audit = audit_permutation(store);
        add(outcome.audit.as_report());
    }

    if (options.checks.count("pooled-ks")) {
        std::vector<double> pooled;
        pooled.reserve(store.images.size() * 1024);
        for (const auto& im : store.images)
            for (float v : im.values()) pooled.push_back(v);
        add(ks_one_sample(std::move(pooled), cdf, options.alpha, "pooled-ks"));
    }

    if (options.checks.count("image-ks")) {
        std::size_t failures = 0;
        for (const auto& im : store.images) {
            std::vector<double> vals(im.values().begin(), im.values().end());
            const TestReport r = ks_one_sample(std::move(vals), cdf, options.alpha,
                                               "image-ks");
            if (!r.pass) ++failures;
        }
        TestReport summary;
        summary.test_name = "image-ks-rate";
        summary.statistic =
            static_cast<double>(failures) / static_cast<double>(store.images.size());
        summary.critical_value = 1.0 - options.min_image_pass_rate;
        summary.alpha = options.alpha;
        summary.pass = summary.statistic <= summary.critical_value;
        summary.sample_size = store.images.size();
        add(summary);
    }

    if (options.checks.count("chi2")) {
        std::vector<double> pooled;
        pooled.reserve(store.images.size() * 1024);
        for (const auto& im : store.images)
            for (float v : im.values()) pooled.push_back(v);
        std::vector<double> edges;
        for (int k = 1; k < 16; ++k)
            edges.push_back(sigma * normal_quantile(k / 16.0));
        add(chi_square_gof(pooled, edges, cdf, options.alpha, "pooled-chi2"));
    }

    if (options.checks.count("stationarity")) {
        const int w = store.images.front().width();
        const int h = store.images.front().height();
        std::vector<PositionPair> pairs;
        if (options.stationarity_all_pairs) {
            for (std::uint32_t p = 0; p < static_cast<std::uint32_t>(w) * h; ++p)
                for (std::uint32_t q = p + 1; q < static_cast<std::uint32_t>(w) * h; ++q)
                    pairs.push_back({static_cast<std::uint16_t>(p),
                                     static_cast<std::uint16_t>(q)});
        } else {
            pairs = sample_position_pairs(options.stationarity_pairs, w, h,
                                          options.pair_seed);
        }
        outcome.pair_reports = stationarity_test(store, pairs, options.alpha);
        std::size_t failures = 0;
        for (const auto& r : outcome.pair_reports)
            if (!r.pass) ++failures;
        TestReport summary;
        summary.test_name = "stationarity-rate";
        summary.statistic =
            static_cast<double>(failures) / static_cast<double>(pairs.size());
        summary.critical_value = 1.0 - options.min_pair_pass_rate;
        summary.alpha = options.alpha;
        summary.pass = summary.statistic <= summary.critical_value;
        summary.sample_size = pairs.size();
        add(summary);
    }

    return outcome;
}

void write_verify_report(const VerifyOutcome& outcome, const fs::path& text_path,
                         const fs::path& csv_path) {
    {
        std::ofstream os(text_path, std::ios::trunc);
        if (!os) throw DataError("verify: cannot write " + text_path.string());
        for (const auto& r : outcome.reports)
            os << (r.pass ? "PASS" : "FAIL") << " " << r.test_name
               << " statistic=" << r.statistic << " critical=" << r.critical_value
               << " alpha=" << r.alpha << " n=" << r.sample_size << "\n";
        if (!outcome.audit.mismatch_indices.empty()) {
            os << "audit mismatched record indices:";
            for (auto i : outcome.audit.mismatch_indices) os << " " << i;
            os << "\n";
        }
    }
    {
        std::ofstream os(csv_path, std::ios::trunc);
        if (!os) throw DataError("verify: cannot write " + csv_path.string());
        os << "test_name,statistic,critical_value,alpha,pass,sample_size\n";
        for (const auto& r : outcome.reports)
            os << r.test_name << "," << r.statistic << "," << r.critical_value << ","
               << r.alpha << "," << (r.pass ? 1 : 0) << "," << r.sample_size << "\n";
        for (const auto& r : outcome.pair_reports)
            os << r.test_name << "," << r.statistic << "," << r.critical_value << ","
               << r.alpha << "," << (r.pass ? 1 : 0) << "," << r.sample_size << "\n";
    }
}

}  // namespace gsynth
