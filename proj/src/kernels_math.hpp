// Copyright 2026 The gimcodec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Polynomial sin/cos/atan2 shared by the scalar and AVX2 kernels. libm is
// not vectorizable, so both paths evaluate these fixed operation sequences
// instead; that keeps scalar and SIMD results bit-identical. Coefficients
// are the classic Cephes minimax sets (double precision, ~1 ulp).

#pragma once

#include <cmath>
#include <cstdint>

namespace gim::kernels::detail {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kInvTwoPi = 0.15915494309189533576888376337251;
inline constexpr double kPi = 3.141592653589793238462643383279;
inline constexpr double kPiHalf = 1.5707963267948966192313216916398;
inline constexpr double kPiQuarter = 0.78539816339744830961566084581988;
inline constexpr double kTan3PiOver8 = 2.41421356237309504880;
inline constexpr double kAtanMoreBits = 6.123233995736765886130e-17;

// atan rational approximation on |x| <= 0.66.
inline constexpr double kAtanP[5] = {
    -8.750608600031904122785e-1, -1.615753718733365076637e1,
    -7.500855792314704667340e1, -1.228866684490136173410e2,
    -6.485021904942025371773e1};
inline constexpr double kAtanQ[5] = {
    2.485846490142306297962e1, 1.650270098316988542046e2,
    4.328810604912902668951e2, 4.853903996359136964868e2,
    1.945506571482613964425e2};

inline constexpr double kSinC[6] = {
    1.58962301576546568060e-10, -2.50507477628578072866e-8,
    2.75573136213857245213e-6,  -1.98412698295895385996e-4,
    8.33333333332211858878e-3,  -1.66666666666666307295e-1};
inline constexpr double kCosC[6] = {
    -1.13585365213876817300e-11, 2.08757008419747316778e-9,
    -2.75573141792967388112e-7,  2.48015872888517179954e-5,
    -1.38888888888730564116e-3,  4.16666666666665929218e-2};

// Cody-Waite split of pi/2 for argument reduction.
inline constexpr double kPio2A = 1.57079632673412561417e0;
inline constexpr double kPio2B = 6.07710050650619224932e-11;
inline constexpr double kPio2C = 2.02226624879595063154e-21;
inline constexpr double kTwoOverPi = 0.63661977236758134308;

// Scalar reference forms. The AVX2 file mirrors these operation for
// operation; any edit here must be applied there as well.

inline double poly_atan(double x) {
  double t = std::fabs(x);
  bool big = t > kTan3PiOver8;
  bool mid = !big && t > 0.66;
  double xb = -1.0 / t;
  double xm = (t - 1.0) / (t + 1.0);
  double x2 = big ? xb : (mid ? xm : t);
  double base = big ? kPiHalf : (mid ? kPiQuarter : 0.0);
  double extra = big ? kAtanMoreBits : (mid ? 0.5 * kAtanMoreBits : 0.0);
  double z = x2 * x2;
  double num = ((((kAtanP[0] * z + kAtanP[1]) * z + kAtanP[2]) * z + kAtanP[3]) * z +
                kAtanP[4]);
  double den = (((((z + kAtanQ[0]) * z + kAtanQ[1]) * z + kAtanQ[2]) * z + kAtanQ[3]) *
                    z +
                kAtanQ[4]);
  double y = z * (num / den);
  y = x2 * y + x2;
  double r = y + extra;
  r = r + base;
  return x < 0 ? -r : r;
}

inline double poly_atan2(double y, double x) {
  double q = poly_atan(y / x);
  double adjust = x < 0 ? std::copysign(kPi, y) : 0.0;
  double r = q + adjust;
  if (y == 0 && x == 0) r = 0.0;
  return r;
}

inline void poly_sincos(double x, double* s_out, double* c_out) {
  double kd = std::rint(x * kTwoOverPi);
  double y = ((x - kd * kPio2A) - kd * kPio2B) - kd * kPio2C;
  double jd = kd - 4.0 * std::floor(kd * 0.25);  // quadrant in {0,1,2,3}
  double z = y * y;
  double sp = ((((kSinC[0] * z + kSinC[1]) * z + kSinC[2]) * z + kSinC[3]) * z +
               kSinC[4]) *
                  z +
              kSinC[5];
  double s = y + y * z * sp;
  double cp = ((((kCosC[0] * z + kCosC[1]) * z + kCosC[2]) * z + kCosC[3]) * z +
               kCosC[4]) *
                  z +
              kCosC[5];
  double c = 1.0 - 0.5 * z + z * z * cp;
  bool swap = jd == 1.0 || jd == 3.0;
  double sv = swap ? c : s;
  double cv = swap ? s : c;
  double ssign = (jd == 2.0 || jd == 3.0) ? -1.0 : 1.0;
  double csign = (jd == 1.0 || jd == 2.0) ? -1.0 : 1.0;
  *s_out = sv * ssign;
  *c_out = cv * csign;
}

inline double wrap01(double v) {
  double w = v - std::floor(v);
  return w == 1.0 ? 0.0 : w;
}

}  // namespace gim::kernels::detail
