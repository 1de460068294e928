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

// AVX2 kernel variants. Each mirrors the scalar reference operation for
// operation (no FMA, no reassociation) so outputs are bit-identical;
// test_kernels.cpp enforces this. Tails shorter than a vector run through
// the scalar path.

#include "gim/kernels.hpp"
#include "kernels_math.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

namespace gim::kernels {
namespace {

using namespace detail;

inline __m256d vset(double v) { return _mm256_set1_pd(v); }
// cond ? b : a
inline __m256d vblend(__m256d a, __m256d b, __m256d cond) {
  return _mm256_blendv_pd(a, b, cond);
}
inline __m256d vabs(__m256d v) { return _mm256_andnot_pd(vset(-0.0), v); }

inline __m256d atan_pd(__m256d x) {
  __m256d t = vabs(x);
  __m256d big = _mm256_cmp_pd(t, vset(kTan3PiOver8), _CMP_GT_OQ);
  __m256d mid = _mm256_andnot_pd(big, _mm256_cmp_pd(t, vset(0.66), _CMP_GT_OQ));
  __m256d xb = _mm256_div_pd(vset(-1.0), t);
  __m256d xm = _mm256_div_pd(_mm256_sub_pd(t, vset(1.0)), _mm256_add_pd(t, vset(1.0)));
  __m256d x2 = vblend(t, xm, mid);
  x2 = vblend(x2, xb, big);
  __m256d base = vblend(_mm256_setzero_pd(), vset(kPiQuarter), mid);
  base = vblend(base, vset(kPiHalf), big);
  __m256d extra = vblend(_mm256_setzero_pd(), vset(0.5 * kAtanMoreBits), mid);
  extra = vblend(extra, vset(kAtanMoreBits), big);
  __m256d z = _mm256_mul_pd(x2, x2);
  __m256d num = vset(kAtanP[0]);
  num = _mm256_add_pd(_mm256_mul_pd(num, z), vset(kAtanP[1]));
  num = _mm256_add_pd(_mm256_mul_pd(num, z), vset(kAtanP[2]));
  num = _mm256_add_pd(_mm256_mul_pd(num, z), vset(kAtanP[3]));
  num = _mm256_add_pd(_mm256_mul_pd(num, z), vset(kAtanP[4]));
  __m256d den = _mm256_add_pd(z, vset(kAtanQ[0]));
  den = _mm256_add_pd(_mm256_mul_pd(den, z), vset(kAtanQ[1]));
  den = _mm256_add_pd(_mm256_mul_pd(den, z), vset(kAtanQ[2]));
  den = _mm256_add_pd(_mm256_mul_pd(den, z), vset(kAtanQ[3]));
  den = _mm256_add_pd(_mm256_mul_pd(den, z), vset(kAtanQ[4]));
  __m256d y = _mm256_mul_pd(z, _mm256_div_pd(num, den));
  y = _mm256_add_pd(_mm256_mul_pd(x2, y), x2);
  __m256d r = _mm256_add_pd(y, extra);
  r = _mm256_add_pd(r, base);
  __m256d neg = _mm256_cmp_pd(x, _mm256_setzero_pd(), _CMP_LT_OQ);
  return vblend(r, _mm256_xor_pd(r, vset(-0.0)), neg);
}

inline __m256d atan2_pd(__m256d y, __m256d x) {
  __m256d q = atan_pd(_mm256_div_pd(y, x));
  __m256d cs = _mm256_or_pd(_mm256_and_pd(y, vset(-0.0)), vset(kPi));
  __m256d xneg = _mm256_cmp_pd(x, _mm256_setzero_pd(), _CMP_LT_OQ);
  __m256d adjust = _mm256_and_pd(xneg, cs);
  __m256d r = _mm256_add_pd(q, adjust);
  __m256d both = _mm256_and_pd(_mm256_cmp_pd(y, _mm256_setzero_pd(), _CMP_EQ_OQ),
                               _mm256_cmp_pd(x, _mm256_setzero_pd(), _CMP_EQ_OQ));
  return vblend(r, _mm256_setzero_pd(), both);
}

inline void sincos_pd(__m256d x, __m256d* s_out, __m256d* c_out) {
  __m256d kd = _mm256_round_pd(_mm256_mul_pd(x, vset(kTwoOverPi)),
                               _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d y = _mm256_sub_pd(x, _mm256_mul_pd(kd, vset(kPio2A)));
  y = _mm256_sub_pd(y, _mm256_mul_pd(kd, vset(kPio2B)));
  y = _mm256_sub_pd(y, _mm256_mul_pd(kd, vset(kPio2C)));
  __m256d jd = _mm256_sub_pd(
      kd, _mm256_mul_pd(vset(4.0), _mm256_floor_pd(_mm256_mul_pd(kd, vset(0.25)))));
  __m256d z = _mm256_mul_pd(y, y);
  __m256d sp = vset(kSinC[0]);
  sp = _mm256_add_pd(_mm256_mul_pd(sp, z), vset(kSinC[1]));
  sp = _mm256_add_pd(_mm256_mul_pd(sp, z), vset(kSinC[2]));
  sp = _mm256_add_pd(_mm256_mul_pd(sp, z), vset(kSinC[3]));
  sp = _mm256_add_pd(_mm256_mul_pd(sp, z), vset(kSinC[4]));
  sp = _mm256_add_pd(_mm256_mul_pd(sp, z), vset(kSinC[5]));
  __m256d s = _mm256_add_pd(y, _mm256_mul_pd(_mm256_mul_pd(y, z), sp));
  __m256d cp = vset(kCosC[0]);
  cp = _mm256_add_pd(_mm256_mul_pd(cp, z), vset(kCosC[1]));
  cp = _mm256_add_pd(_mm256_mul_pd(cp, z), vset(kCosC[2]));
  cp = _mm256_add_pd(_mm256_mul_pd(cp, z), vset(kCosC[3]));
  cp = _mm256_add_pd(_mm256_mul_pd(cp, z), vset(kCosC[4]));
  cp = _mm256_add_pd(_mm256_mul_pd(cp, z), vset(kCosC[5]));
  __m256d c = _mm256_add_pd(_mm256_sub_pd(vset(1.0), _mm256_mul_pd(vset(0.5), z)),
                            _mm256_mul_pd(_mm256_mul_pd(z, z), cp));
  __m256d eq1 = _mm256_cmp_pd(jd, vset(1.0), _CMP_EQ_OQ);
  __m256d eq2 = _mm256_cmp_pd(jd, vset(2.0), _CMP_EQ_OQ);
  __m256d eq3 = _mm256_cmp_pd(jd, vset(3.0), _CMP_EQ_OQ);
  __m256d swap = _mm256_or_pd(eq1, eq3);
  __m256d sv = vblend(s, c, swap);
  __m256d cv = vblend(c, s, swap);
  __m256d ssign = vblend(vset(1.0), vset(-1.0), _mm256_or_pd(eq2, eq3));
  __m256d csign = vblend(vset(1.0), vset(-1.0), _mm256_or_pd(eq1, eq2));
  *s_out = _mm256_mul_pd(sv, ssign);
  *c_out = _mm256_mul_pd(cv, csign);
}

inline __m256d wrap01_pd(__m256d v) {
  __m256d w = _mm256_sub_pd(v, _mm256_floor_pd(v));
  __m256d at_one = _mm256_cmp_pd(w, vset(1.0), _CMP_EQ_OQ);
  return vblend(w, _mm256_setzero_pd(), at_one);
}

void raster_row_avx2(const TriRowSetup& t, double px0, double py, int count,
                     uint8_t* covered, double* out_x, double* out_y,
                     double* out_z) {
  double row_term[3];
  for (int j = 0; j < 3; j++) row_term[j] = t.edge_dx[j] * (py - t.edge_oy[j]);
  __m256d zero_mask[3];
  for (int j = 0; j < 3; j++)
    zero_mask[j] = _mm256_castsi256_pd(_mm256_set1_epi64x(t.accept_zero[j] ? -1 : 0));

  int n4 = count & ~3;
  for (int k = 0; k < n4; k += 4) {
    __m256d px = _mm256_add_pd(
        vset(px0), _mm256_setr_pd(static_cast<double>(k), static_cast<double>(k + 1),
                                  static_cast<double>(k + 2), static_cast<double>(k + 3)));
    __m256d e[3], cov = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
    for (int j = 0; j < 3; j++) {
      e[j] = _mm256_sub_pd(
          vset(row_term[j]),
          _mm256_mul_pd(vset(t.edge_dy[j]), _mm256_sub_pd(px, vset(t.edge_ox[j]))));
      __m256d pos = _mm256_cmp_pd(_mm256_mul_pd(vset(t.edge_sign[j]), e[j]),
                                  _mm256_setzero_pd(), _CMP_GT_OQ);
      __m256d on_edge = _mm256_and_pd(
          _mm256_cmp_pd(e[j], _mm256_setzero_pd(), _CMP_EQ_OQ), zero_mask[j]);
      cov = _mm256_and_pd(cov, _mm256_or_pd(pos, on_edge));
    }
    int bits = _mm256_movemask_pd(cov);
    covered[k + 0] = bits & 1;
    covered[k + 1] = (bits >> 1) & 1;
    covered[k + 2] = (bits >> 2) & 1;
    covered[k + 3] = (bits >> 3) & 1;
    __m256d w0 = _mm256_mul_pd(_mm256_mul_pd(vset(t.edge_sign[1]), e[1]), vset(t.inv_area2));
    __m256d w1 = _mm256_mul_pd(_mm256_mul_pd(vset(t.edge_sign[2]), e[2]), vset(t.inv_area2));
    __m256d w2 = _mm256_mul_pd(_mm256_mul_pd(vset(t.edge_sign[0]), e[0]), vset(t.inv_area2));
    __m256d ox = _mm256_add_pd(
        _mm256_add_pd(_mm256_mul_pd(w0, vset(t.vx[0])), _mm256_mul_pd(w1, vset(t.vx[1]))),
        _mm256_mul_pd(w2, vset(t.vx[2])));
    __m256d oy = _mm256_add_pd(
        _mm256_add_pd(_mm256_mul_pd(w0, vset(t.vy[0])), _mm256_mul_pd(w1, vset(t.vy[1]))),
        _mm256_mul_pd(w2, vset(t.vy[2])));
    __m256d oz = _mm256_add_pd(
        _mm256_add_pd(_mm256_mul_pd(w0, vset(t.vz[0])), _mm256_mul_pd(w1, vset(t.vz[1]))),
        _mm256_mul_pd(w2, vset(t.vz[2])));
    _mm256_storeu_pd(out_x + k, ox);
    _mm256_storeu_pd(out_y + k, oy);
    _mm256_storeu_pd(out_z + k, oz);
  }
  if (n4 < count) {
    // px0 + n4 is exact (pixel centers are small half-integers), so the
    // scalar tail sees the same px values.
    scalar().raster_row(t, px0 + static_cast<double>(n4), py, count - n4,
                        covered + n4, out_x + n4, out_y + n4, out_z + n4);
  }
}

void cart_to_cyl_avx2(const CylSetup& p, int count, const double* x,
                      const double* y, const double* z, double* r, double* t,
                      double* h) {
  int n4 = count & ~3;
  for (int k = 0; k < n4; k += 4) {
    __m256d xv = _mm256_loadu_pd(x + k);
    __m256d yv = _mm256_loadu_pd(y + k);
    __m256d zv = _mm256_loadu_pd(z + k);
    __m256d r2 = _mm256_add_pd(_mm256_mul_pd(xv, xv), _mm256_mul_pd(zv, zv));
    _mm256_storeu_pd(r + k, _mm256_mul_pd(_mm256_sqrt_pd(r2), vset(p.inv_r_max)));
    __m256d th = atan2_pd(zv, xv);
    __m256d t01 = wrap01_pd(
        _mm256_mul_pd(_mm256_sub_pd(th, vset(p.theta_offset)), vset(kInvTwoPi)));
    __m256d axis = _mm256_cmp_pd(r2, _mm256_setzero_pd(), _CMP_EQ_OQ);
    _mm256_storeu_pd(t + k, vblend(t01, _mm256_setzero_pd(), axis));
    _mm256_storeu_pd(
        h + k, _mm256_mul_pd(_mm256_sub_pd(yv, vset(p.h_min)), vset(p.inv_h_range)));
  }
  if (n4 < count)
    scalar().cart_to_cyl(p, count - n4, x + n4, y + n4, z + n4, r + n4, t + n4, h + n4);
}

void cyl_to_cart_avx2(const CylSetup& p, int count, const double* r,
                      const double* t, const double* h, double* x, double* y,
                      double* z) {
  int n4 = count & ~3;
  for (int k = 0; k < n4; k += 4) {
    __m256d tv = _mm256_loadu_pd(t + k);
    __m256d th = _mm256_add_pd(_mm256_mul_pd(tv, vset(kTwoPi)), vset(p.theta_offset));
    __m256d s, c;
    sincos_pd(th, &s, &c);
    __m256d rad = _mm256_mul_pd(_mm256_loadu_pd(r + k), vset(p.r_max));
    _mm256_storeu_pd(x + k, _mm256_mul_pd(rad, c));
    _mm256_storeu_pd(z + k, _mm256_mul_pd(rad, s));
    _mm256_storeu_pd(y + k, _mm256_add_pd(_mm256_mul_pd(_mm256_loadu_pd(h + k),
                                                        vset(p.h_range)),
                                          vset(p.h_min)));
  }
  if (n4 < count)
    scalar().cyl_to_cart(p, count - n4, r + n4, t + n4, h + n4, x + n4, y + n4, z + n4);
}

void quantize_u16_avx2(size_t count, const double* v, uint16_t* out) {
  size_t n8 = count & ~size_t{7};
  for (size_t k = 0; k < n8; k += 8) {
    __m128i lo, hi;
    {
      __m256d t = _mm256_max_pd(_mm256_loadu_pd(v + k), _mm256_setzero_pd());
      t = _mm256_min_pd(t, vset(1.0));
      t = _mm256_round_pd(_mm256_mul_pd(t, vset(65535.0)),
                          _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
      lo = _mm256_cvtpd_epi32(t);
    }
    {
      __m256d t = _mm256_max_pd(_mm256_loadu_pd(v + k + 4), _mm256_setzero_pd());
      t = _mm256_min_pd(t, vset(1.0));
      t = _mm256_round_pd(_mm256_mul_pd(t, vset(65535.0)),
                          _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
      hi = _mm256_cvtpd_epi32(t);
    }
    _mm_storeu_si128(reinterpret_cast<__m128i*>(out + k), _mm_packus_epi32(lo, hi));
  }
  if (n8 < count) scalar().quantize_u16(count - n8, v + n8, out + n8);
}

void dequantize_u16_avx2(size_t count, const uint16_t* in, double* v) {
  size_t n8 = count & ~size_t{7};
  const __m256d scale = vset(1.0 / 65535.0);
  for (size_t k = 0; k < n8; k += 8) {
    __m128i q = _mm_loadu_si128(reinterpret_cast<const __m128i*>(in + k));
    __m256i i32 = _mm256_cvtepu16_epi32(q);
    __m128i lo = _mm256_castsi256_si128(i32);
    __m128i hi = _mm256_extracti128_si256(i32, 1);
    _mm256_storeu_pd(v + k, _mm256_mul_pd(_mm256_cvtepi32_pd(lo), scale));
    _mm256_storeu_pd(v + k + 4, _mm256_mul_pd(_mm256_cvtepi32_pd(hi), scale));
  }
  if (n8 < count) scalar().dequantize_u16(count - n8, in + n8, v + n8);
}

void point_tri_dist_avx2(const double pt[3], const TriSoA& m, int count,
                         double* dist_sq) {
  const __m256d px = vset(pt[0]), py = vset(pt[1]), pz = vset(pt[2]);
  const __m256d zero = _mm256_setzero_pd();
  int n4 = count & ~3;
  for (int k = 0; k < n4; k += 4) {
    __m256d ax = _mm256_loadu_pd(m.ax + k), ay = _mm256_loadu_pd(m.ay + k),
            az = _mm256_loadu_pd(m.az + k);
    __m256d bx = _mm256_loadu_pd(m.bx + k), by = _mm256_loadu_pd(m.by + k),
            bz = _mm256_loadu_pd(m.bz + k);
    __m256d cx = _mm256_loadu_pd(m.cx + k), cy = _mm256_loadu_pd(m.cy + k),
            cz = _mm256_loadu_pd(m.cz + k);
    __m256d abx = _mm256_sub_pd(bx, ax), aby = _mm256_sub_pd(by, ay),
            abz = _mm256_sub_pd(bz, az);
    __m256d acx = _mm256_sub_pd(cx, ax), acy = _mm256_sub_pd(cy, ay),
            acz = _mm256_sub_pd(cz, az);
    auto dot3 = [](__m256d x1, __m256d y1, __m256d z1, __m256d x2, __m256d y2,
                   __m256d z2) {
      return _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(x1, x2), _mm256_mul_pd(y1, y2)),
                           _mm256_mul_pd(z1, z2));
    };
    __m256d apx = _mm256_sub_pd(px, ax), apy = _mm256_sub_pd(py, ay),
            apz = _mm256_sub_pd(pz, az);
    __m256d d1 = dot3(abx, aby, abz, apx, apy, apz);
    __m256d d2 = dot3(acx, acy, acz, apx, apy, apz);
    __m256d bpx = _mm256_sub_pd(px, bx), bpy = _mm256_sub_pd(py, by),
            bpz = _mm256_sub_pd(pz, bz);
    __m256d d3 = dot3(abx, aby, abz, bpx, bpy, bpz);
    __m256d d4 = dot3(acx, acy, acz, bpx, bpy, bpz);
    __m256d cpx = _mm256_sub_pd(px, cx), cpy = _mm256_sub_pd(py, cy),
            cpz = _mm256_sub_pd(pz, cz);
    __m256d d5 = dot3(abx, aby, abz, cpx, cpy, cpz);
    __m256d d6 = dot3(acx, acy, acz, cpx, cpy, cpz);
    __m256d va = _mm256_sub_pd(_mm256_mul_pd(d3, d6), _mm256_mul_pd(d5, d4));
    __m256d vb = _mm256_sub_pd(_mm256_mul_pd(d5, d2), _mm256_mul_pd(d1, d6));
    __m256d vc = _mm256_sub_pd(_mm256_mul_pd(d1, d4), _mm256_mul_pd(d3, d2));

    __m256d denom = _mm256_add_pd(_mm256_add_pd(va, vb), vc);
    __m256d iv = _mm256_div_pd(vb, denom), iw = _mm256_div_pd(vc, denom);
    __m256d qx = _mm256_add_pd(_mm256_add_pd(ax, _mm256_mul_pd(abx, iv)),
                               _mm256_mul_pd(acx, iw));
    __m256d qy = _mm256_add_pd(_mm256_add_pd(ay, _mm256_mul_pd(aby, iv)),
                               _mm256_mul_pd(acy, iw));
    __m256d qz = _mm256_add_pd(_mm256_add_pd(az, _mm256_mul_pd(abz, iv)),
                               _mm256_mul_pd(acz, iw));

    __m256d d43 = _mm256_sub_pd(d4, d3), d56 = _mm256_sub_pd(d5, d6);
    __m256d tbc = _mm256_div_pd(d43, _mm256_add_pd(d43, d56));
    __m256d bc = _mm256_and_pd(
        _mm256_cmp_pd(va, zero, _CMP_LE_OQ),
        _mm256_and_pd(_mm256_cmp_pd(d43, zero, _CMP_GE_OQ),
                      _mm256_cmp_pd(d56, zero, _CMP_GE_OQ)));
    qx = vblend(qx, _mm256_add_pd(bx, _mm256_mul_pd(_mm256_sub_pd(cx, bx), tbc)), bc);
    qy = vblend(qy, _mm256_add_pd(by, _mm256_mul_pd(_mm256_sub_pd(cy, by), tbc)), bc);
    qz = vblend(qz, _mm256_add_pd(bz, _mm256_mul_pd(_mm256_sub_pd(cz, bz), tbc)), bc);

    __m256d tac = _mm256_div_pd(d2, _mm256_sub_pd(d2, d6));
    __m256d acr = _mm256_and_pd(
        _mm256_cmp_pd(vb, zero, _CMP_LE_OQ),
        _mm256_and_pd(_mm256_cmp_pd(d2, zero, _CMP_GE_OQ),
                      _mm256_cmp_pd(d6, zero, _CMP_LE_OQ)));
    qx = vblend(qx, _mm256_add_pd(ax, _mm256_mul_pd(acx, tac)), acr);
    qy = vblend(qy, _mm256_add_pd(ay, _mm256_mul_pd(acy, tac)), acr);
    qz = vblend(qz, _mm256_add_pd(az, _mm256_mul_pd(acz, tac)), acr);

    __m256d vcr = _mm256_and_pd(_mm256_cmp_pd(d6, zero, _CMP_GE_OQ),
                                _mm256_cmp_pd(d5, d6, _CMP_LE_OQ));
    qx = vblend(qx, cx, vcr);
    qy = vblend(qy, cy, vcr);
    qz = vblend(qz, cz, vcr);

    __m256d tab = _mm256_div_pd(d1, _mm256_sub_pd(d1, d3));
    __m256d abr = _mm256_and_pd(
        _mm256_cmp_pd(vc, zero, _CMP_LE_OQ),
        _mm256_and_pd(_mm256_cmp_pd(d1, zero, _CMP_GE_OQ),
                      _mm256_cmp_pd(d3, zero, _CMP_LE_OQ)));
    qx = vblend(qx, _mm256_add_pd(ax, _mm256_mul_pd(abx, tab)), abr);
    qy = vblend(qy, _mm256_add_pd(ay, _mm256_mul_pd(aby, tab)), abr);
    qz = vblend(qz, _mm256_add_pd(az, _mm256_mul_pd(abz, tab)), abr);

    __m256d vbr = _mm256_and_pd(_mm256_cmp_pd(d3, zero, _CMP_GE_OQ),
                                _mm256_cmp_pd(d4, d3, _CMP_LE_OQ));
    qx = vblend(qx, bx, vbr);
    qy = vblend(qy, by, vbr);
    qz = vblend(qz, bz, vbr);

    __m256d var = _mm256_and_pd(_mm256_cmp_pd(d1, zero, _CMP_LE_OQ),
                                _mm256_cmp_pd(d2, zero, _CMP_LE_OQ));
    qx = vblend(qx, ax, var);
    qy = vblend(qy, ay, var);
    qz = vblend(qz, az, var);

    __m256d dx = _mm256_sub_pd(px, qx), dy = _mm256_sub_pd(py, qy),
            dz = _mm256_sub_pd(pz, qz);
    _mm256_storeu_pd(dist_sq + k, dot3(dx, dy, dz, dx, dy, dz));
  }
  if (n4 < count) {
    TriSoA tail{m.ax + n4, m.ay + n4, m.az + n4, m.bx + n4, m.by + n4,
                m.bz + n4, m.cx + n4, m.cy + n4, m.cz + n4};
    scalar().point_tri_dist(pt, tail, count - n4, dist_sq + n4);
  }
}

size_t mask_popcount_avx2(const uint8_t* mask, size_t count) {
  size_t n = 0;
  size_t n32 = count & ~size_t{31};
  const __m256i zero = _mm256_setzero_si256();
  for (size_t k = 0; k < n32; k += 32) {
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(mask + k));
    __m256i is_zero = _mm256_cmpeq_epi8(v, zero);
    n += 32 - static_cast<size_t>(__builtin_popcount(
                  static_cast<unsigned>(_mm256_movemask_epi8(is_zero))));
  }
  for (size_t k = n32; k < count; k++) n += mask[k] != 0;
  return n;
}

}  // namespace

const Kernels* avx2() {
  if (!__builtin_cpu_supports("avx2")) return nullptr;
  static const Kernels k = {
      "avx2",
      raster_row_avx2,
      cart_to_cyl_avx2,
      cyl_to_cart_avx2,
      quantize_u16_avx2,
      dequantize_u16_avx2,
      point_tri_dist_avx2,
      mask_popcount_avx2,
  };
  return &k;
}

}  // namespace gim::kernels

#endif  // __AVX2__
