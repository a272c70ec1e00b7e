#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace gsynth::kernels {

/// Data-parallel inner loops behind the image pipeline. Every backend
/// performs the identical IEEE-754 operation sequence per output
/// element, so implementations are interchangeable bit-for-bit; the
/// equivalence suite enforces this. Reductions and transcendentals stay
/// out of this table on purpose.
struct Table {
    const char* name;

    /// y[i] = sum_k w[k] * x[i+k] for i in [0, n), accumulated in
    /// ascending k. x must hold n + taps - 1 elements (caller pads).
    void (*conv1d)(const float* x, std::size_t n, const float* w, std::size_t taps,
                   float* y);

    /// 3x3 Sobel pair over a reflect-padded (w+2) x (h+2) source.
    /// gx, gy are w x h, y axis pointing down.
    void (*sobel3)(const float* padded, std::size_t w, std::size_t h, float* gx,
                   float* gy);

    /// out[i] = sqrt(gx[i]^2 + gy[i]^2)
    void (*magnitude)(const float* gx, const float* gy, std::size_t n, float* out);

    /// out[i] = clamp(nearbyint(v[i] * scale + offset), 0, 255), ties to even.
    void (*quantize_u8)(const float* v, std::size_t n, float scale, float offset,
                        std::uint8_t* out);
};

const Table& scalar();
const Table* avx2();  // nullptr when not compiled in or not supported by the CPU
const Table* neon();

/// Backend in use: best available, unless overridden by force() or the
/// GSYNTH_KERNELS environment variable (scalar|avx2|neon).
const Table& active();

/// Test hook; pass nullptr to restore automatic selection. Not
/// thread-safe against concurrent active() callers.
void force(const Table* table);

/// All backends usable on this machine, scalar first.
std::vector<const Table*> available();

}  // namespace gsynth::kernels
