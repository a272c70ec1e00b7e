#include "gsynth/det_math.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <stdexcept>

// Polynomial coefficients and reduction schemes follow the well-known
// fdlibm kernels (e_log, e_exp, k_sin, k_cos). Accuracy is ~1 ulp over
// the domains used here; what matters for this project is that the
// operation sequence is fixed, so outputs are reproducible bit-for-bit.

namespace gsynth::det {

namespace {

inline std::uint64_t to_bits(double x) {
    std::uint64_t u;
    std::memcpy(&u, &x, sizeof u);
    return u;
}

inline double from_bits(std::uint64_t u) {
    double x;
    std::memcpy(&x, &u, sizeof x);
    return x;
}

constexpr double kLn2Hi = 6.93147180369123816490e-01;
constexpr double kLn2Lo = 1.90821492927058770002e-10;

}  // namespace

double log(double x) {
    static const double Lg1 = 6.666666666666735130e-01;
    static const double Lg2 = 3.999999999940941908e-01;
    static const double Lg3 = 2.857142874366239149e-01;
    static const double Lg4 = 2.222219843214978396e-01;
    static const double Lg5 = 1.818357216161805012e-01;
    static const double Lg6 = 1.531383769920937332e-01;
    static const double Lg7 = 1.479819860511658591e-01;

    std::uint64_t bits = to_bits(x);
    std::int32_t hx = static_cast<std::int32_t>(bits >> 32);
    std::uint32_t lx = static_cast<std::uint32_t>(bits);

    int k = 0;
    if (hx < 0x00100000) {  // subnormal or non-positive
        if (((hx & 0x7fffffff) | lx) == 0 || hx < 0)
            throw std::domain_error("det::log: argument must be positive");
        k -= 54;
        x *= 1.8014398509481984e16;  // 2^54
        bits = to_bits(x);
        hx = static_cast<std::int32_t>(bits >> 32);
    }
    if (hx >= 0x7ff00000) return x + x;  // inf propagates

    k += (hx >> 20) - 1023;
    hx &= 0x000fffff;
    const std::int32_t i = (hx + 0x95f64) & 0x100000;
    // normalize to x in [sqrt(2)/2, sqrt(2))
    bits = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(hx | (i ^ 0x3ff00000))) << 32) |
           static_cast<std::uint32_t>(bits);
    x = from_bits(bits);
    k += i >> 20;

    const double f = x - 1.0;
    const double dk = static_cast<double>(k);
    if ((0x000fffff & (2 + hx)) < 3) {  // |f| < 2^-20
        if (f == 0.0) {
            if (k == 0) return 0.0;
            return dk * kLn2Hi + dk * kLn2Lo;
        }
        const double R = f * f * (0.5 - 0.33333333333333333 * f);
        if (k == 0) return f - R;
        return dk * kLn2Hi - ((R - dk * kLn2Lo) - f);
    }

    const double s = f / (2.0 + f);
    const double z = s * s;
    const double w = z * z;
    const double t1 = w * (Lg2 + w * (Lg4 + w * Lg6));
    const double t2 = z * (Lg1 + w * (Lg3 + w * (Lg5 + w * Lg7)));
    const double R = t2 + t1;
    std::int32_t ii = hx - 0x6147a;
    ii |= 0x6b851 - hx;
    if (ii > 0) {
        const double hfsq = 0.5 * f * f;
        if (k == 0) return f - (hfsq - s * (hfsq + R));
        return dk * kLn2Hi - ((hfsq - (s * (hfsq + R) + dk * kLn2Lo)) - f);
    }
    if (k == 0) return f - (s * (f - R));
    return dk * kLn2Hi - ((s * (f - R) - dk * kLn2Lo) - f);
}

double exp(double x) {
    static const double P1 = 1.66666666666666019037e-01;
    static const double P2 = -2.77777777770155933842e-03;
    static const double P3 = 6.61375632143793436117e-05;
    static const double P4 = -1.65339022054652515390e-06;
    static const double P5 = 4.13813679705723846039e-08;
    static const double kInvLn2 = 1.44269504088896338700e+00;
    static const double kOverflow = 7.09782712893383973096e+02;
    static const double kUnderflow = -7.45133219101941108420e+02;

    const std::uint64_t bits = to_bits(x);
    const std::uint32_t hx = static_cast<std::uint32_t>(bits >> 32) & 0x7fffffff;
    const int sign = (bits >> 63) ? 1 : 0;

    if (hx >= 0x40862e42) {  // |x| >= 709.78...
        if (hx >= 0x7ff00000) {
            // NaN propagates, +inf -> inf, -inf -> 0
            if (((hx & 0xfffff) | static_cast<std::uint32_t>(bits)) != 0) return x + x;
            return sign ? 0.0 : x;
        }
        if (x > kOverflow) return 1.0e308 * 1.0e308;
        if (x < kUnderflow) return 0.0;
    }

    double hi = 0.0, lo = 0.0;
    int k = 0;
    if (hx > 0x3fd62e42) {  // |x| > 0.5 ln2
        if (hx < 0x3ff0a2b2) {  // |x| < 1.5 ln2
            hi = x - (sign ? -kLn2Hi : kLn2Hi);
            lo = sign ? -kLn2Lo : kLn2Lo;
            k = 1 - 2 * sign;
        } else {
            k = static_cast<int>(kInvLn2 * x + (sign ? -0.5 : 0.5));
            const double t = static_cast<double>(k);
            hi = x - t * kLn2Hi;
            lo = t * kLn2Lo;
        }
        x = hi - lo;
    } else if (hx < 0x3e300000) {  // |x| < 2^-28
        return 1.0 + x;
    }

    const double t = x * x;
    const double c = x - t * (P1 + t * (P2 + t * (P3 + t * (P4 + t * P5))));
    double y;
    if (k == 0) {
        y = 1.0 - ((x * c) / (c - 2.0) - x);
    } else {
        y = 1.0 - ((lo - (x * c) / (2.0 - c)) - hi);
    }
    // scale by 2^k; detour through 2^-1000 when the direct exponent
    // adjustment would leave the normal range
    if (k >= -1021) {
        std::uint64_t yb = to_bits(y);
        yb += static_cast<std::uint64_t>(static_cast<std::int64_t>(k)) << 52;
        return from_bits(yb);
    }
    std::uint64_t yb = to_bits(y);
    yb += static_cast<std::uint64_t>(static_cast<std::int64_t>(k + 1000)) << 52;
    return from_bits(yb) * 9.33263618503218878990e-302;  // 2^-1000
}

namespace {

// sin/cos kernels valid on [0, pi/4]
double sin_kernel(double x) {
    static const double S1 = -1.66666666666666324348e-01;
    static const double S2 = 8.33333333332248946124e-03;
    static const double S3 = -1.98412698298579493134e-04;
    static const double S4 = 2.75573137070700676789e-06;
    static const double S5 = -2.50507602534068634195e-08;
    static const double S6 = 1.58969099521155010221e-10;
    const double z = x * x;
    const double r = S2 + z * (S3 + z * (S4 + z * (S5 + z * S6)));
    const double v = z * x;
    return x + v * (S1 + z * r);
}

double cos_kernel(double x) {
    static const double C1 = 4.16666666666666019037e-02;
    static const double C2 = -1.38888888888741095749e-03;
    static const double C3 = 2.48015872894767294178e-05;
    static const double C4 = -2.75573143513906633035e-07;
    static const double C5 = 2.08757232129817482790e-09;
    static const double C6 = -1.13596475577881948265e-11;
    const double z = x * x;
    const double r = z * (C1 + z * (C2 + z * (C3 + z * (C4 + z * (C5 + z * C6)))));
    const double hz = 0.5 * z;
    const double w = 1.0 - hz;
    return w + (((1.0 - w) - hz) + z * r);
}

constexpr double kPiOver4 = 0.78539816339744830962;

}  // namespace

void sincos_2pi(double u, double& cos_out, double& sin_out) {
    if (!(u >= 0.0 && u < 1.0))
        throw std::domain_error("det::sincos_2pi: argument must lie in [0, 1)");

    // 8u is an exact scaling; octant = floor(8u) and the fractional part
    // come out exact, so the angle k*pi/4 + f*pi/4 needs one rounding only.
    const double t = 8.0 * u;
    const int octant = static_cast<int>(t);
    const double f = t - static_cast<double>(octant);

    double c, s;
    int quadrant;
    if ((octant & 1) == 0) {
        const double r = f * kPiOver4;
        quadrant = octant >> 1;
        c = cos_kernel(r);
        s = sin_kernel(r);
    } else {
        // angle = (octant+1)*pi/4 - (1-f)*pi/4, and octant+1 is even
        const double r = (1.0 - f) * kPiOver4;
        quadrant = (octant + 1) >> 1;
        // cos(m*pi/2 - r), sin(m*pi/2 - r): fold the sign of r into s
        c = cos_kernel(r);
        s = -sin_kernel(r);
    }
    switch (quadrant & 3) {
        case 0: cos_out = c;  sin_out = s;  break;
        case 1: cos_out = -s; sin_out = c;  break;
        case 2: cos_out = -c; sin_out = -s; break;
        default: cos_out = s; sin_out = -c; break;
    }
}

}  // namespace gsynth::det
