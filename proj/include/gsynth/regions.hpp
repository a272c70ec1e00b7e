#pragma once

#include <cstdint>

#include "gsynth/canny.hpp"
#include "gsynth/image.hpp"

namespace gsynth {

enum class DecomposeMode : std::uint8_t { CannyGuided, Morphological };

/// Split a 0/1 mask into the four regions.
///
/// CannyGuided: inside-boundary = edge pixels that land on foreground;
/// outside-boundary = background pixels 4-adjacent to the inside
/// boundary (derived by adjacency, since a 1-pixel edge curve cannot
/// cover both sides of the transition); inside = remaining foreground;
/// outside = remaining background.
///
/// Morphological: inside-boundary = foreground 8-adjacent to background;
/// outside-boundary = background 8-adjacent to foreground; inside and
/// outside as above. This mode needs no edge map and doubles as the
/// oracle for cross-mode checks.
///
/// Throws DegenerateMaskError when the mask is all-foreground or
/// all-background.
RegionPartition decompose_regions(const BinaryImage& binary, const EdgeMap& edges,
                                  DecomposeMode mode);

/// Pipeline convenience: runs canny() when the mode needs it.
RegionPartition decompose(const BinaryImage& binary, DecomposeMode mode,
                          const CannyParams& params);

}  // namespace gsynth
