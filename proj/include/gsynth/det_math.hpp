#pragma once

namespace gsynth::det {

/// Natural log for positive normal doubles. Classical Sun fdlibm-style
/// evaluation: every operation is a pinned IEEE-754 double op, so the
/// result is bit-identical on any conforming platform. libm's log is
/// not guaranteed to be, which would break manifest-based regeneration.
double log(double x);

/// exp(x) for |x| below the overflow range, same portability contract.
double exp(double x);

/// cos(2*pi*u) and sin(2*pi*u) for u in [0, 1). The scaled argument
/// makes range reduction exact: the octant index floor(8u) and the
/// fractional part are both computed without rounding error, so no
/// large-argument reduction is ever needed.
void sincos_2pi(double u, double& cos_out, double& sin_out);

}  // namespace gsynth::det
