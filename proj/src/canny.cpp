#include "gsynth/canny.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

#include "gsynth/det_math.hpp"
#include "gsynth/kernels.hpp"

namespace gsynth {

namespace {

// reflect-101: ..., 2, 1, | 0, 1, ..., n-1, | n-2, n-3, ...
int reflect101(int i, int n) {
    if (n == 1) return 0;
    while (i < 0 || i >= n) {
        if (i < 0) i = -i;
        if (i >= n) i = 2 * n - 2 - i;
    }
    return i;
}

std::vector<float> blur_weights(double sigma, int radius) {
    std::vector<double> w(2 * radius + 1);
    double sum = 0.0;
    for (int k = -radius; k <= radius; ++k) {
        const double e = det::exp(-(static_cast<double>(k) * k) / (2.0 * sigma * sigma));
        w[k + radius] = e;
        sum += e;
    }
    std::vector<float> out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        out[i] = static_cast<float>(w[i] / sum);
    return out;
}

// one horizontal pass of the separable blur over a row-major buffer
void blur_rows(const std::vector<float>& in, int w, int h,
               const std::vector<float>& weights, std::vector<float>& out) {
    const int radius = static_cast<int>(weights.size() / 2);
    const auto& k = kernels::active();
    std::vector<float> padded(w + 2 * radius);
    for (int r = 0; r < h; ++r) {
        const float* row = in.data() + static_cast<std::size_t>(r) * w;
        for (int i = -radius; i < w + radius; ++i)
            padded[i + radius] = row[reflect101(i, w)];
        k.conv1d(padded.data(), w, weights.data(), weights.size(),
                 out.data() + static_cast<std::size_t>(r) * w);
    }
}

void transpose(const std::vector<float>& in, int w, int h, std::vector<float>& out) {
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            out[static_cast<std::size_t>(c) * h + r] =
                in[static_cast<std::size_t>(r) * w + c];
}

// direction bins: 0 = horizontal gradient (left/right neighbors),
// 1 = +45 degrees, 2 = vertical, 3 = -45 degrees
int quantize_direction(float gx, float gy) {
    const float ax = std::fabs(gx);
    const float ay = std::fabs(gy);
    constexpr float kTan22 = 0.41421356f;  // tan(22.5 deg)
    constexpr float kTan67 = 2.41421356f;  // tan(67.5 deg)
    if (ay <= ax * kTan22) return 0;
    if (ay >= ax * kTan67) return 2;
    return (gx > 0.0f) == (gy > 0.0f) ? 1 : 3;
}

}  // namespace

GrayImage gaussian_blur(const GrayImage& src, double sigma) {
    if (!(sigma > 0.0))
        throw std::invalid_argument("gaussian_blur: sigma must be positive");
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    const std::vector<float> weights = blur_weights(sigma, radius);

    const int w = src.width(), h = src.height();
    std::vector<float> tmp(src.size()), tposed(src.size()), out(src.size());
    blur_rows(src.values(), w, h, weights, tmp);
    transpose(tmp, w, h, tposed);
    blur_rows(tposed, h, w, weights, tmp);  // columns of the original
    transpose(tmp, h, w, out);
    return GrayImage(w, h, std::move(out));
}

EdgeMap canny(const BinaryImage& src, const CannyParams& params) {
    params.validate();
    const int w = src.width(), h = src.height();

    GrayImage gray(w, h);
    for (std::size_t i = 0; i < src.size(); ++i)
        gray.values()[i] = src.bits()[i] ? 255.0f : 0.0f;
    const GrayImage blurred = gaussian_blur(gray, params.blur_sigma);

    // Sobel over a reflect-101 padded copy
    const auto& k = kernels::active();
    std::vector<float> padded(static_cast<std::size_t>(w + 2) * (h + 2));
    for (int r = -1; r <= h; ++r)
        for (int c = -1; c <= w; ++c)
            padded[static_cast<std::size_t>(r + 1) * (w + 2) + (c + 1)] =
                blurred.at(reflect101(r, h), reflect101(c, w));
    std::vector<float> gx(src.size()), gy(src.size()), mag(src.size());
    k.sobel3(padded.data(), w, h, gx.data(), gy.data());
    k.magnitude(gx.data(), gy.data(), src.size(), mag.data());

    float max_mag = 0.0f;
    for (float m : mag)
        if (m > max_mag) max_mag = m;

    EdgeMap edges(w, h);
    if (max_mag == 0.0f) return edges;

    // non-maximum suppression; out-of-bounds neighbors count as 0. Ties
    // on a magnitude plateau break asymmetrically (strict against the
    // first neighbor) so a two-pixel plateau keeps exactly one pixel.
    std::vector<float> suppressed(src.size(), 0.0f);
    static constexpr int kNbr[4][2][2] = {
        {{0, -1}, {0, 1}},    // horizontal gradient
        {{-1, -1}, {1, 1}},   // +45
        {{-1, 0}, {1, 0}},    // vertical
        {{-1, 1}, {1, -1}},   // -45
    };
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            const std::size_t i = static_cast<std::size_t>(r) * w + c;
            const float m = mag[i];
            if (m <= 0.0f) continue;
            const int bin = quantize_direction(gx[i], gy[i]);
            float n0 = 0.0f, n1 = 0.0f;
            int rr = r + kNbr[bin][0][0], cc = c + kNbr[bin][0][1];
            if (rr >= 0 && rr < h && cc >= 0 && cc < w)
                n0 = mag[static_cast<std::size_t>(rr) * w + cc];
            rr = r + kNbr[bin][1][0];
            cc = c + kNbr[bin][1][1];
            if (rr >= 0 && rr < h && cc >= 0 && cc < w)
                n1 = mag[static_cast<std::size_t>(rr) * w + cc];
            if (m > n0 && m >= n1) suppressed[i] = m;
        }

    // double threshold + hysteresis, BFS from strong pixels, 8-connected
    const float high = static_cast<float>(params.high_threshold) * max_mag;
    const float low = static_cast<float>(params.low_threshold) * max_mag;
    std::vector<std::uint8_t> state(src.size(), 0);  // 1 = weak, 2 = strong
    std::vector<std::size_t> queue;
    for (std::size_t i = 0; i < suppressed.size(); ++i) {
        if (suppressed[i] >= high) {
            state[i] = 2;
            queue.push_back(i);
        } else if (suppressed[i] >= low) {
            state[i] = 1;
        }
    }
    std::size_t head = 0;
    while (head < queue.size()) {
        const std::size_t i = queue[head++];
        const int r = static_cast<int>(i) / w;
        const int c = static_cast<int>(i) % w;
        for (int dr = -1; dr <= 1; ++dr)
            for (int dc = -1; dc <= 1; ++dc) {
                if (dr == 0 && dc == 0) continue;
                const int rr = r + dr, cc = c + dc;
                if (rr < 0 || rr >= h || cc < 0 || cc >= w) continue;
                const std::size_t j = static_cast<std::size_t>(rr) * w + cc;
                if (state[j] == 1) {
                    state[j] = 2;
                    queue.push_back(j);
                }
            }
    }
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            if (state[static_cast<std::size_t>(r) * w + c] == 2) edges.at(r, c) = 1;
    return edges;
}

}  // namespace gsynth
