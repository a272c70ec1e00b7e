#include "gsynth/manifest.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gsynth/error.hpp"

namespace gsynth {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& s, const char* key) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw DataError(std::string("manifest: bad numeric value for ") + key + ": " + s);
    }
}

std::uint64_t parse_u64(const std::string& s, const char* key) {
    try {
        std::size_t used = 0;
        const std::uint64_t v = std::stoull(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw DataError(std::string("manifest: bad integer value for ") + key + ": " + s);
    }
}

}  // namespace

std::map<std::uint32_t, std::pair<std::uint64_t, std::uint64_t>>
DatasetManifest::class_counts() const {
    std::map<std::uint32_t, std::pair<std::uint64_t, std::uint64_t>> counts;
    for (const auto& rec : records) {
        auto& c = counts[rec.label];
        if (rec.split == Split::Train)
            ++c.first;
        else
            ++c.second;
    }
    return counts;
}

void DatasetManifest::serialize(std::ostream& os) const {
    os << "gsynth-manifest " << kFormatVersion << "\n";
    os << "global_seed " << global_seed << "\n";
    os << "rng_algorithm " << params.rng_algorithm << "\n";
    os << "variance " << fmt_double(params.variance) << "\n";
    if (params.binarize.mode == BinarizeRule::Mode::Otsu)
        os << "binarize otsu\n";
    else
        os << "binarize fixed:" << params.binarize.threshold << "\n";
    os << "polarity "
       << (params.polarity == Polarity::InkIsBright ? "bright" : "dark") << "\n";
    os << "crop "
       << (params.crop == CropMode::GeometricCenter ? "center" : "centroid") << "\n";
    os << "edge_mode "
       << (params.edge_mode == DecomposeMode::CannyGuided ? "canny" : "morphology")
       << "\n";
    os << "canny_sigma " << fmt_double(params.canny.blur_sigma) << "\n";
    os << "canny_low " << fmt_double(params.canny.low_threshold) << "\n";
    os << "canny_high " << fmt_double(params.canny.high_threshold) << "\n";
    os << "downsample " << params.downsample_rule << "\n";
    os << "records " << records.size() << "\n";
    os << "# index label split stream_id source_id\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        os << i << " " << r.label << " " << split_name(r.split) << " "
           << r.rng_stream_id << " " << r.source_id << "\n";
    }
}

DatasetManifest DatasetManifest::parse(std::istream& is) {
    DatasetManifest m;
    std::string line;

    if (!std::getline(is, line)) throw DataError("manifest: empty file");
    {
        std::istringstream head(line);
        std::string tag;
        int version = 0;
        head >> tag >> version;
        if (tag != "gsynth-manifest")
            throw DataError("manifest: missing gsynth-manifest header");
        if (version != kFormatVersion)
            throw DataError("manifest: unsupported format version " +
                            std::to_string(version));
    }

    std::size_t expected_records = 0;
    bool in_records = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!in_records) {
            const auto space = line.find(' ');
            const std::string key = line.substr(0, space);
            const std::string value =
                space == std::string::npos ? "" : line.substr(space + 1);
            if (key == "global_seed") {
                m.global_seed = parse_u64(value, "global_seed");
            } else if (key == "rng_algorithm") {
                m.params.rng_algorithm = value;
            } else if (key == "variance") {
                m.params.variance = parse_double(value, "variance");
            } else if (key == "binarize") {
                if (value == "otsu")
                    m.params.binarize = BinarizeRule::otsu();
                else if (value.rfind("fixed:", 0) == 0)
                    m.params.binarize = BinarizeRule::fixed(
                        static_cast<int>(parse_u64(value.substr(6), "binarize")));
                else
                    throw DataError("manifest: bad binarize value: " + value);
            } else if (key == "polarity") {
                if (value == "bright")
                    m.params.polarity = Polarity::InkIsBright;
                else if (value == "dark")
                    m.params.polarity = Polarity::InkIsDark;
                else
                    throw DataError("manifest: bad polarity value: " + value);
            } else if (key == "crop") {
                if (value == "center")
                    m.params.crop = CropMode::GeometricCenter;
                else if (value == "centroid")
                    m.params.crop = CropMode::ForegroundCentroid;
                else
                    throw DataError("manifest: bad crop value: " + value);
            } else if (key == "edge_mode") {
                if (value == "canny")
                    m.params.edge_mode = DecomposeMode::CannyGuided;
                else if (value == "morphology")
                    m.params.edge_mode = DecomposeMode::Morphological;
                else
                    throw DataError("manifest: bad edge_mode value: " + value);
            } else if (key == "canny_sigma") {
                m.params.canny.blur_sigma = parse_double(value, "canny_sigma");
            } else if (key == "canny_low") {
                m.params.canny.low_threshold = parse_double(value, "canny_low");
            } else if (key == "canny_high") {
                m.params.canny.high_threshold = parse_double(value, "canny_high");
            } else if (key == "downsample") {
                m.params.downsample_rule = value;
            } else if (key == "records") {
                expected_records = parse_u64(value, "records");
                m.records.reserve(expected_records);
                in_records = true;
            } else {
                throw DataError("manifest: unknown key: " + key);
            }
            continue;
        }

        // record rows: index label split stream_id source_id
        std::istringstream row(line);
        std::uint64_t index = 0, stream_id = 0;
        std::uint32_t label = 0;
        std::string split_str, source_id;
        row >> index >> label >> split_str >> stream_id;
        std::getline(row, source_id);
        if (!row || source_id.size() < 2 || source_id[0] != ' ')
            throw DataError("manifest: malformed record row: " + line);
        source_id.erase(0, 1);
        if (index != m.records.size())
            throw DataError("manifest: record rows out of order at index " +
                            std::to_string(index));
        DatasetRecord rec;
        rec.label = label;
        if (split_str == "train")
            rec.split = Split::Train;
        else if (split_str == "test")
            rec.split = Split::Test;
        else
            throw DataError("manifest: bad split value: " + split_str);
        rec.rng_stream_id = stream_id;
        rec.source_id = source_id;
        m.records.push_back(std::move(rec));
    }

    if (m.records.size() != expected_records)
        throw DataError("manifest: expected " + std::to_string(expected_records) +
                        " records, found " + std::to_string(m.records.size()));
    return m;
}

void DatasetManifest::save(const std::string& path) const {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw DataError("manifest: cannot open for writing: " + path);
    serialize(os);
    if (!os) throw DataError("manifest: write failed: " + path);
}

DatasetManifest DatasetManifest::load(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw DataError("manifest: cannot open: " + path);
    return parse(is);
}

}  // namespace gsynth
