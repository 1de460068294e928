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

// Scalar reference kernels. These define the semantics; the AVX2 variants
// must reproduce them bit for bit. Selection logic is written in a
// branch-free style (compute all candidates, pick) so the SIMD blends
// evaluate the same expressions.

#include "gim/kernels.hpp"
#include "kernels_math.hpp"

namespace gim::kernels {
namespace {

using namespace detail;

void raster_row_scalar(const TriRowSetup& t, double px0, double py, int count,
                       uint8_t* covered, double* out_x, double* out_y,
                       double* out_z) {
  double row_term[3];
  for (int j = 0; j < 3; j++) row_term[j] = t.edge_dx[j] * (py - t.edge_oy[j]);
  for (int k = 0; k < count; k++) {
    double px = px0 + static_cast<double>(k);
    double e0 = row_term[0] - t.edge_dy[0] * (px - t.edge_ox[0]);
    double e1 = row_term[1] - t.edge_dy[1] * (px - t.edge_ox[1]);
    double e2 = row_term[2] - t.edge_dy[2] * (px - t.edge_ox[2]);
    bool in0 = (t.edge_sign[0] * e0 > 0.0) || (e0 == 0.0 && t.accept_zero[0]);
    bool in1 = (t.edge_sign[1] * e1 > 0.0) || (e1 == 0.0 && t.accept_zero[1]);
    bool in2 = (t.edge_sign[2] * e2 > 0.0) || (e2 == 0.0 && t.accept_zero[2]);
    covered[k] = in0 && in1 && in2;
    double w0 = (t.edge_sign[1] * e1) * t.inv_area2;
    double w1 = (t.edge_sign[2] * e2) * t.inv_area2;
    double w2 = (t.edge_sign[0] * e0) * t.inv_area2;
    out_x[k] = w0 * t.vx[0] + w1 * t.vx[1] + w2 * t.vx[2];
    out_y[k] = w0 * t.vy[0] + w1 * t.vy[1] + w2 * t.vy[2];
    out_z[k] = w0 * t.vz[0] + w1 * t.vz[1] + w2 * t.vz[2];
  }
}

void cart_to_cyl_scalar(const CylSetup& p, int count, const double* x,
                        const double* y, const double* z, double* r, double* t,
                        double* h) {
  for (int k = 0; k < count; k++) {
    double r2 = x[k] * x[k] + z[k] * z[k];
    r[k] = std::sqrt(r2) * p.inv_r_max;
    double th = poly_atan2(z[k], x[k]);
    double t01 = wrap01((th - p.theta_offset) * kInvTwoPi);
    t[k] = r2 == 0.0 ? 0.0 : t01;
    h[k] = (y[k] - p.h_min) * p.inv_h_range;
  }
}

void cyl_to_cart_scalar(const CylSetup& p, int count, const double* r,
                        const double* t, const double* h, double* x, double* y,
                        double* z) {
  for (int k = 0; k < count; k++) {
    double th = t[k] * kTwoPi + p.theta_offset;
    double s, c;
    poly_sincos(th, &s, &c);
    double rad = r[k] * p.r_max;
    x[k] = rad * c;
    z[k] = rad * s;
    y[k] = h[k] * p.h_range + p.h_min;
  }
}

void quantize_u16_scalar(size_t count, const double* v, uint16_t* out) {
  for (size_t k = 0; k < count; k++) {
    double t = v[k] > 0.0 ? v[k] : 0.0;
    t = t < 1.0 ? t : 1.0;
    out[k] = static_cast<uint16_t>(static_cast<int32_t>(std::rint(t * 65535.0)));
  }
}

void dequantize_u16_scalar(size_t count, const uint16_t* in, double* v) {
  for (size_t k = 0; k < count; k++)
    v[k] = static_cast<double>(static_cast<int32_t>(in[k])) * (1.0 / 65535.0);
}

void point_tri_dist_scalar(const double pt[3], const TriSoA& m, int count,
                           double* dist_sq) {
  const double px = pt[0], py = pt[1], pz = pt[2];
  for (int k = 0; k < count; k++) {
    double ax = m.ax[k], ay = m.ay[k], az = m.az[k];
    double abx = m.bx[k] - ax, aby = m.by[k] - ay, abz = m.bz[k] - az;
    double acx = m.cx[k] - ax, acy = m.cy[k] - ay, acz = m.cz[k] - az;
    double apx = px - ax, apy = py - ay, apz = pz - az;
    double d1 = abx * apx + aby * apy + abz * apz;
    double d2 = acx * apx + acy * apy + acz * apz;
    double bpx = px - m.bx[k], bpy = py - m.by[k], bpz = pz - m.bz[k];
    double d3 = abx * bpx + aby * bpy + abz * bpz;
    double d4 = acx * bpx + acy * bpy + acz * bpz;
    double cpx = px - m.cx[k], cpy = py - m.cy[k], cpz = pz - m.cz[k];
    double d5 = abx * cpx + aby * cpy + abz * cpz;
    double d6 = acx * cpx + acy * cpy + acz * cpz;
    double va = d3 * d6 - d5 * d4;
    double vb = d5 * d2 - d1 * d6;
    double vc = d1 * d4 - d3 * d2;

    // Candidates, applied lowest priority first; the last write wins, so
    // the chain below is the exact reverse of the Voronoi test order.
    double denom = va + vb + vc;
    double iv = vb / denom, iw = vc / denom;
    double qx = ax + abx * iv + acx * iw;
    double qy = ay + aby * iv + acy * iw;
    double qz = az + abz * iv + acz * iw;

    double tbc = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    bool bc = va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0;
    qx = bc ? m.bx[k] + (m.cx[k] - m.bx[k]) * tbc : qx;
    qy = bc ? m.by[k] + (m.cy[k] - m.by[k]) * tbc : qy;
    qz = bc ? m.bz[k] + (m.cz[k] - m.bz[k]) * tbc : qz;

    double tac = d2 / (d2 - d6);
    bool acr = vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0;
    qx = acr ? ax + acx * tac : qx;
    qy = acr ? ay + acy * tac : qy;
    qz = acr ? az + acz * tac : qz;

    bool vcr = d6 >= 0.0 && d5 <= d6;
    qx = vcr ? m.cx[k] : qx;
    qy = vcr ? m.cy[k] : qy;
    qz = vcr ? m.cz[k] : qz;

    double tab = d1 / (d1 - d3);
    bool abr = vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0;
    qx = abr ? ax + abx * tab : qx;
    qy = abr ? ay + aby * tab : qy;
    qz = abr ? az + abz * tab : qz;

    bool vbr = d3 >= 0.0 && d4 <= d3;
    qx = vbr ? m.bx[k] : qx;
    qy = vbr ? m.by[k] : qy;
    qz = vbr ? m.bz[k] : qz;

    bool var = d1 <= 0.0 && d2 <= 0.0;
    qx = var ? ax : qx;
    qy = var ? ay : qy;
    qz = var ? az : qz;

    double dx = px - qx, dy = py - qy, dz = pz - qz;
    dist_sq[k] = dx * dx + dy * dy + dz * dz;
  }
}

size_t mask_popcount_scalar(const uint8_t* mask, size_t count) {
  size_t n = 0;
  for (size_t k = 0; k < count; k++) n += mask[k] != 0;
  return n;
}

}  // namespace

const Kernels& scalar() {
  static const Kernels k = {
      "scalar",
      raster_row_scalar,
      cart_to_cyl_scalar,
      cyl_to_cart_scalar,
      quantize_u16_scalar,
      dequantize_u16_scalar,
      point_tri_dist_scalar,
      mask_popcount_scalar,
  };
  return k;
}

}  // namespace gim::kernels
