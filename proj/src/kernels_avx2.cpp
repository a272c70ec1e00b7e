#include "gsynth/kernels.hpp"

// AVX2 variants. Each lane runs the exact operation sequence of the
// scalar kernel (same tap order, same rounding), so outputs match the
// scalar backend bit-for-bit. No FMA: contraction would change results.

#if defined(GSYNTH_HAVE_AVX2)

#include <immintrin.h>

#include <cmath>

namespace gsynth::kernels {

namespace avx2_impl {

void conv1d(const float* x, std::size_t n, const float* w, std::size_t taps, float* y) {
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 acc = _mm256_setzero_ps();
        for (std::size_t k = 0; k < taps; ++k) {
            const __m256 wk = _mm256_set1_ps(w[k]);
            const __m256 xv = _mm256_loadu_ps(x + i + k);
            acc = _mm256_add_ps(acc, _mm256_mul_ps(wk, xv));
        }
        _mm256_storeu_ps(y + i, acc);
    }
    for (; i < n; ++i) {
        float acc = 0.0f;
        for (std::size_t k = 0; k < taps; ++k) acc += w[k] * x[i + k];
        y[i] = acc;
    }
}

void sobel3(const float* padded, std::size_t w, std::size_t h, float* gx, float* gy) {
    const std::size_t stride = w + 2;
    const __m256 two = _mm256_set1_ps(2.0f);
    for (std::size_t r = 0; r < h; ++r) {
        const float* top = padded + r * stride;
        const float* mid = top + stride;
        const float* bot = mid + stride;
        std::size_t c = 0;
        for (; c + 8 <= w; c += 8) {
            const __m256 t0 = _mm256_loadu_ps(top + c);
            const __m256 t1 = _mm256_loadu_ps(top + c + 1);
            const __m256 t2 = _mm256_loadu_ps(top + c + 2);
            const __m256 m0 = _mm256_loadu_ps(mid + c);
            const __m256 m2 = _mm256_loadu_ps(mid + c + 2);
            const __m256 b0 = _mm256_loadu_ps(bot + c);
            const __m256 b1 = _mm256_loadu_ps(bot + c + 1);
            const __m256 b2 = _mm256_loadu_ps(bot + c + 2);

            const __m256 tx = _mm256_sub_ps(t2, t0);
            const __m256 mx = _mm256_sub_ps(m2, m0);
            const __m256 bx = _mm256_sub_ps(b2, b0);
            const __m256 gxv =
                _mm256_add_ps(_mm256_add_ps(tx, _mm256_mul_ps(two, mx)), bx);
            _mm256_storeu_ps(gx + r * w + c, gxv);

            const __m256 ly = _mm256_sub_ps(b0, t0);
            const __m256 my = _mm256_sub_ps(b1, t1);
            const __m256 ry = _mm256_sub_ps(b2, t2);
            const __m256 gyv =
                _mm256_add_ps(_mm256_add_ps(ly, _mm256_mul_ps(two, my)), ry);
            _mm256_storeu_ps(gy + r * w + c, gyv);
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
    for (; i + 8 <= n; i += 8) {
        const __m256 a = _mm256_loadu_ps(gx + i);
        const __m256 b = _mm256_loadu_ps(gy + i);
        const __m256 s = _mm256_add_ps(_mm256_mul_ps(a, a), _mm256_mul_ps(b, b));
        _mm256_storeu_ps(out + i, _mm256_sqrt_ps(s));
    }
    for (; i < n; ++i) out[i] = std::sqrt(gx[i] * gx[i] + gy[i] * gy[i]);
}

void quantize_u8(const float* v, std::size_t n, float scale, float offset,
                 std::uint8_t* out) {
    const __m256 vscale = _mm256_set1_ps(scale);
    const __m256 voffset = _mm256_set1_ps(offset);
    const __m256 lo = _mm256_setzero_ps();
    const __m256 hi = _mm256_set1_ps(255.0f);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 q = _mm256_add_ps(_mm256_mul_ps(_mm256_loadu_ps(v + i), vscale), voffset);
        q = _mm256_round_ps(q, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
        q = _mm256_max_ps(q, lo);
        q = _mm256_min_ps(q, hi);
        const __m256i qi = _mm256_cvtps_epi32(q);
        alignas(32) std::int32_t lanes[8];
        _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), qi);
        for (int k = 0; k < 8; ++k) out[i + k] = static_cast<std::uint8_t>(lanes[k]);
    }
    for (; i < n; ++i) {
        float q = std::nearbyintf(v[i] * scale + offset);
        if (q < 0.0f) q = 0.0f;
        if (q > 255.0f) q = 255.0f;
        out[i] = static_cast<std::uint8_t>(q);
    }
}

}  // namespace avx2_impl

const Table* avx2() {
#if defined(__GNUC__) || defined(__clang__)
    static const bool supported = __builtin_cpu_supports("avx2");
#else
    static const bool supported = false;
#endif
    if (!supported) return nullptr;
    static const Table table{"avx2", avx2_impl::conv1d, avx2_impl::sobel3,
                             avx2_impl::magnitude, avx2_impl::quantize_u8};
    return &table;
}

}  // namespace gsynth::kernels

#else  // !GSYNTH_HAVE_AVX2

namespace gsynth::kernels {
const Table* avx2() { return nullptr; }
}  // namespace gsynth::kernels

#endif
