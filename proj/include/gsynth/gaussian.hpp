#pragma once

#include <cstddef>
#include <vector>

#include "gsynth/image.hpp"
#include "gsynth/rng.hpp"

namespace gsynth {

struct BoxMullerPair {
    double z0;
    double z1;
};

/// Standard-normal pair from two uniforms:
///   z0 = sqrt(-2 ln u1) * cos(2 pi u2),  z1 = sqrt(-2 ln u1) * sin(2 pi u2)
/// u1 must lie in (0, 1], u2 in [0, 1). Evaluated with det:: math so the
/// mapping is bit-reproducible.
BoxMullerPair box_muller_pair(double u1, double u2);

/// n draws from N(mean, variance). Each Box-Muller evaluation consumes
/// exactly two uniforms and yields both outputs in order, so the stream
/// position after the call depends only on n.
std::vector<double> sample_gaussian(RngStream& rng, std::size_t n, double mean,
                                    double variance);

/// The per-image vector: 1024 draws from N(0, variance), stored as
/// float32 (the pipeline's carrier precision) with the descending sort
/// attached.
GaussianVector gaussian_vector(RngStream& rng, double variance = 1024.0);

}  // namespace gsynth
