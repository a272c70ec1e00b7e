#include "gsynth/rng.hpp"

namespace gsynth {

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

inline std::uint64_t splitmix64(std::uint64_t& s) {
    std::uint64_t z = (s += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

#if defined(__SIZEOF_INT128__)
inline std::uint64_t mul_hi_lo(std::uint64_t a, std::uint64_t b, std::uint64_t& lo) {
    const unsigned __int128 m = static_cast<unsigned __int128>(a) * b;
    lo = static_cast<std::uint64_t>(m);
    return static_cast<std::uint64_t>(m >> 64);
}
#else
inline std::uint64_t mul_hi_lo(std::uint64_t a, std::uint64_t b, std::uint64_t& lo) {
    const std::uint64_t a_lo = a & 0xffffffffull, a_hi = a >> 32;
    const std::uint64_t b_lo = b & 0xffffffffull, b_hi = b >> 32;
    const std::uint64_t p0 = a_lo * b_lo;
    const std::uint64_t p1 = a_lo * b_hi;
    const std::uint64_t p2 = a_hi * b_lo;
    const std::uint64_t p3 = a_hi * b_hi;
    const std::uint64_t mid = (p0 >> 32) + (p1 & 0xffffffffull) + (p2 & 0xffffffffull);
    lo = (mid << 32) | (p0 & 0xffffffffull);
    return p3 + (p1 >> 32) + (p2 >> 32) + (mid >> 32);
}
#endif

}  // namespace

RngStream RngStream::derive(std::uint64_t global_seed, std::uint64_t stream_id) {
    // One splitmix pass over the id decorrelates adjacent ids, then the
    // folded seed is expanded into the 256-bit xoshiro state.
    std::uint64_t id_state = stream_id;
    const std::uint64_t id_mix = splitmix64(id_state);
    std::uint64_t s = global_seed ^ id_mix;

    std::array<std::uint64_t, 4> state;
    for (auto& word : state) word = splitmix64(s);
    if ((state[0] | state[1] | state[2] | state[3]) == 0)
        state[0] = 0x9E3779B97F4A7C15ull;  // all-zero state is a fixed point
    return RngStream(state, stream_id);
}

std::uint64_t RngStream::next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

std::uint64_t RngStream::next_below(std::uint64_t bound) {
    if (bound == 0)
        throw std::invalid_argument("RngStream::next_below: bound must be positive");
    std::uint64_t lo;
    std::uint64_t hi = mul_hi_lo(next_u64(), bound, lo);
    if (lo < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
        while (lo < threshold) hi = mul_hi_lo(next_u64(), bound, lo);
    }
    return hi;
}

}  // namespace gsynth
