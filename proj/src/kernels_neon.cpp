#include "gsynth/kernels.hpp"

// NEON variants, same bit-for-bit contract as the AVX2 backend.

#if defined(GSYNTH_HAVE_NEON)

#include <arm_neon.h>

#include <cmath>

namespace gsynth::kernels {

namespace neon_impl {

void conv1d(const float* x, std::size_t n, const float* w, std::size_t taps, float* y) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        float32x4_t acc = vdupq_n_f32(0.0f);
        for (std::size_t k = 0; k < taps; ++k) {
            const float32x4_t wk = vdupq_n_f32(w[k]);
            const float32x4_t xv = vld1q_f32(x + i + k);
            acc = vaddq_f32(acc, vmulq_f32(wk, xv));
        }
        vst1q_f32(y + i, acc);
    }
    for (; i < n; ++i) {
        float acc = 0.0f;
        for (std::size_t k = 0; k < taps; ++k) acc += w[k] * x[i + k];
        y[i] = acc;
    }
}

void sobel3(const float* padded, std::size_t w, std::size_t h, float* gx, float* gy) {
    const std::size_t stride = w + 2;
    const float32x4_t two = vdupq_n_f32(2.0f);
    for (std::size_t r = 0; r < h; ++r) {
        const float* top = padded + r * stride;
        const float* mid = top + stride;
        const float* bot = mid + stride;
        std::size_t c = 0;
        for (; c + 4 <= w; c += 4) {
            const float32x4_t t0 = vld1q_f32(top + c);
            const float32x4_t t1 = vld1q_f32(top + c + 1);
            const float32x4_t t2 = vld1q_f32(top + c + 2);
            const float32x4_t m0 = vld1q_f32(mid + c);
            const float32x4_t m2 = vld1q_f32(mid + c + 2);
            const float32x4_t b0 = vld1q_f32(bot + c);
            const float32x4_t b1 = vld1q_f32(bot + c + 1);
            const float32x4_t b2 = vld1q_f32(bot + c + 2);

            const float32x4_t tx = vsubq_f32(t2, t0);
            const float32x4_t mx = vsubq_f32(m2, m0);
            const float32x4_t bx = vsubq_f32(b2, b0);
            vst1q_f32(gx + r * w + c, vaddq_f32(vaddq_f32(tx, vmulq_f32(two, mx)), bx));

            const float32x4_t ly = vsubq_f32(b0, t0);
            const float32x4_t my = vsubq_f32(b1, t1);
            const float32x4_t ry = vsubq_f32(b2, t2);
            vst1q_f32(gy + r * w + c, vaddq_f32(vaddq_f32(ly, vmulq_f32(two, my)), ry));
        }
        for (; c < w; ++c) {
            const float tx = top[c + 2] - top[c];
            const float mx = mid[c + 2] - mid[c];
            const float bx = bot[c + 2] - bot[c];
            gx[r * w + c] = (tx + 2.0f * mx) + bx;
            const float ly = bot[c] - top[c];
            const float my = bot[c + 1] - top[c + 1];
            const float ry = bot[c + 2] - top[c + 2];
            gy[r * w + c] = (ly + 2.0f * my) + ry;
        }
    }
}

void magnitude(const float* gx, const float* gy, std::size_t n, float* out) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const float32x4_t a = vld1q_f32(gx + i);
        const float32x4_t b = vld1q_f32(gy + i);
        const float32x4_t s = vaddq_f32(vmulq_f32(a, a), vmulq_f32(b, b));
        vst1q_f32(out + i, vsqrtq_f32(s));
    }
    for (; i < n; ++i) out[i] = std::sqrt(gx[i] * gx[i] + gy[i] * gy[i]);
}

void quantize_u8(const float* v, std::size_t n, float scale, float offset,
                 std::uint8_t* out) {
    const float32x4_t vscale = vdupq_n_f32(scale);
    const float32x4_t voffset = vdupq_n_f32(offset);
    const float32x4_t lo = vdupq_n_f32(0.0f);
    const float32x4_t hi = vdupq_n_f32(255.0f);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        float32x4_t q = vaddq_f32(vmulq_f32(vld1q_f32(v + i), vscale), voffset);
        q = vrndnq_f32(q);  // round to nearest, ties to even
        q = vmaxq_f32(q, lo);
        q = vminq_f32(q, hi);
        const uint32x4_t qi = vcvtq_u32_f32(q);
        out[i + 0] = static_cast<std::uint8_t>(vgetq_lane_u32(qi, 0));
        out[i + 1] = static_cast<std::uint8_t>(vgetq_lane_u32(qi, 1));
        out[i + 2] = static_cast<std::uint8_t>(vgetq_lane_u32(qi, 2));
        out[i + 3] = static_cast<std::uint8_t>(vgetq_lane_u32(qi, 3));
    }
    for (; i < n; ++i) {
        float q = std::nearbyintf(v[i] * scale + offset);
        if (q < 0.0f) q = 0.0f;
        if (q > 255.0f) q = 255.0f;
        out[i] = static_cast<std::uint8_t>(q);
    }
}

}  // namespace neon_impl

const Table* neon() {
    static const Table table{"neon", neon_impl::conv1d, neon_impl::sobel3,
                             neon_impl::magnitude, neon_impl::quantize_u8};
    return &table;
}

}  // namespace gsynth::kernels

#else  // !GSYNTH_HAVE_NEON

namespace gsynth::kernels {
const Table* neon() { return nullptr; }
}  // namespace gsynth::kernels

#endif
