#include "gsynth/gaussian.hpp"

#include <cmath>
#include <stdexcept>

#include "gsynth/det_math.hpp"

namespace gsynth {

BoxMullerPair box_muller_pair(double u1, double u2) {
    const double radius = std::sqrt(-2.0 * det::log(u1));
    double c, s;
    det::sincos_2pi(u2, c, s);
    return {radius * c, radius * s};
}

std::vector<double> sample_gaussian(RngStream& rng, std::size_t n, double mean,
                                    double variance) {
    if (variance <= 0.0)
        throw std::invalid_argument("sample_gaussian: variance must be positive");
    if (n == 0)
        throw std::invalid_argument("sample_gaussian: n must be positive");

    const double sigma = std::sqrt(variance);
    std::vector<double> out;
    out.reserve(n);
    while (out.size() < n) {
        const double u1 = rng.next_unit_open();
        const double u2 = rng.next_unit();
        const BoxMullerPair z = box_muller_pair(u1, u2);
        out.push_back(mean + sigma * z.z0);
        if (out.size() < n) out.push_back(mean + sigma * z.z1);
    }
    return out;
}

GaussianVector gaussian_vector(RngStream& rng, double variance) {
    const std::vector<double> draws =
        sample_gaussian(rng, GaussianVector::kLength, 0.0, variance);
    std::vector<float> raw(draws.begin(), draws.end());
    return GaussianVector(std::move(raw));
}

}  // namespace gsynth
