#include "gsynth/kernels.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace gsynth::kernels {

namespace scalar_impl {

void conv1d(const float* x, std::size_t n, const float* w, std::size_t taps, float* y) {
    for (std::size_t i = 0; i < n; ++i) {
        float acc = 0.0f;
        for (std::size_t k = 0; k < taps; ++k) acc += w[k] * x[i + k];
        y[i] = acc;
    }
}

void sobel3(const float* padded, std::size_t w, std::size_t h, float* gx, float* gy) {
    const std::size_t stride = w + 2;
    for (std::size_t r = 0; r < h; ++r) {
        const float* top = padded + r * stride;
        const float* mid = top + stride;
        const float* bot = mid + stride;
        for (std::size_t c = 0; c < w; ++c) {
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
    for (std::size_t i = 0; i < n; ++i)
        out[i] = std::sqrt(gx[i] * gx[i] + gy[i] * gy[i]);
}

void quantize_u8(const float* v, std::size_t n, float scale, float offset,
                 std::uint8_t* out) {
    for (std::size_t i = 0; i < n; ++i) {
        float q = std::nearbyintf(v[i] * scale + offset);
        if (q < 0.0f) q = 0.0f;
        if (q > 255.0f) q = 255.0f;
        out[i] = static_cast<std::uint8_t>(q);
    }
}

}  // namespace scalar_impl

const Table& scalar() {
    static const Table table{"scalar", scalar_impl::conv1d, scalar_impl::sobel3,
                             scalar_impl::magnitude, scalar_impl::quantize_u8};
    return table;
}

namespace {

const Table* pick_auto() {
    if (const Table* t = avx2()) return t;
    if (const Table* t = neon()) return t;
    return &scalar();
}

const Table* pick_from_env() {
    const char* env = std::getenv("GSYNTH_KERNELS");
    if (!env || !*env) return pick_auto();
    if (std::strcmp(env, "scalar") == 0) return &scalar();
    if (std::strcmp(env, "avx2") == 0) {
        if (const Table* t = avx2()) return t;
    } else if (std::strcmp(env, "neon") == 0) {
        if (const Table* t = neon()) return t;
    } else {
        std::fprintf(stderr, "warning: unknown GSYNTH_KERNELS value '%s'\n", env);
        return pick_auto();
    }
    std::fprintf(stderr, "warning: GSYNTH_KERNELS=%s not available on this machine\n",
                 env);
    return pick_auto();
}

const Table* g_forced = nullptr;

}  // namespace

const Table& active() {
    if (g_forced) return *g_forced;
    static const Table* selected = pick_from_env();
    return *selected;
}

void force(const Table* table) { g_forced = table; }

std::vector<const Table*> available() {
    std::vector<const Table*> out{&scalar()};
    if (const Table* t = avx2()) out.push_back(t);
    if (const Table* t = neon()) out.push_back(t);
    return out;
}

}  // namespace gsynth::kernels
