#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace gsynth {

/// Deterministic random stream: xoshiro256++ state expanded with
/// splitmix64 from (global_seed, stream_id). Identical inputs produce
/// identical output on every platform; every constant is written out
/// here rather than delegated to a library default.
///
/// A stream is single-owner while in use. Derivation is pure, so
/// distinct streams can be driven from distinct workers.
class RngStream {
public:
    static constexpr const char* kAlgorithmTag = "xoshiro256++/splitmix64/box-muller/v1";

    static RngStream derive(std::uint64_t global_seed, std::uint64_t stream_id);

    std::uint64_t next_u64();

    /// Uniform double in [0, 1), 53 random bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in (0, 1]; safe to feed into log().
    double next_unit_open() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    /// Unbiased integer in [0, bound) via multiply-reject; consumes a
    /// variable number of draws but a deterministic sequence of them.
    std::uint64_t next_below(std::uint64_t bound);

    std::uint64_t stream_id() const { return stream_id_; }

private:
    RngStream(std::array<std::uint64_t, 4> state, std::uint64_t id)
        : state_(state), stream_id_(id) {}

    std::array<std::uint64_t, 4> state_;
    std::uint64_t stream_id_;
};

/// In-place Fisher-Yates shuffle, iterating from the back: at step i the
/// swap partner is next_below(i+1). Uniform over permutations and pinned
/// for regeneration.
template <typename T>
void shuffle(RngStream& rng, std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace gsynth
