#include "gsynth/image.hpp"

#include <algorithm>

namespace gsynth {

RegionPartition partition_from_labels(std::vector<Region> labels, int width, int height) {
    return RegionPartition(width, height, std::move(labels));
}

GaussianVector::GaussianVector(std::vector<float> raw) : raw_(std::move(raw)) {
    if (raw_.size() != kLength)
        throw std::invalid_argument("GaussianVector: expected 1024 draws, got " +
                                    std::to_string(raw_.size()));
    sorted_desc_ = raw_;
    std::stable_sort(sorted_desc_.begin(), sorted_desc_.end(),
                     [](float a, float b) { return a > b; });
}

}  // namespace gsynth
