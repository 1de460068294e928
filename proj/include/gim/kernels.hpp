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

// Data-parallel inner loops of the codec: triangle row rasterization,
// cylindrical coordinate transforms, 16-bit channel quantization and
// point-to-triangle distances. Each kernel has a scalar reference
// implementation and an AVX2 variant selected at runtime. The two paths
// perform the same IEEE operations per element, so results are required
// to be bit-identical; the equivalence tests assert exactly that.

#pragma once

#include <cstddef>
#include <cstdint>

namespace gim::kernels {

// Per-triangle rasterization setup. Edge functions are evaluated in a
// canonical form (base point = lexicographically smaller endpoint) so two
// triangles sharing an edge compute the exact same value and half-open
// ownership never double-claims a pixel.
struct TriRowSetup {
  double edge_dx[3], edge_dy[3];    // canonical edge direction b - a
  double edge_ox[3], edge_oy[3];    // canonical base point a
  double edge_sign[3];              // +1 when the face traverses a -> b
  uint8_t accept_zero[3];           // ownership of E == 0 pixels
  double vx[3], vy[3], vz[3];       // per-vertex attribute (3D position)
  double inv_area2;                 // 1 / doubled area, CCW orientation
};

// Evaluates pixel centers (px0 + k, py) for k in [0, count). covered[k] is
// 0/1; out_x/y/z[k] hold the interpolated attribute for covered lanes and
// are unspecified elsewhere.
using RasterRowFn = void (*)(const TriRowSetup& tri, double px0, double py,
                             int count, uint8_t* covered, double* out_x,
                             double* out_y, double* out_z);

struct CylSetup {
  double inv_r_max = 1, r_max = 1;
  double h_min = -1, inv_h_range = 0.5, h_range = 2;
  double theta_offset = 0;  // radians
};

// (x,y,z) -> (r^, theta^, h^), all outputs in [0,1] ([0,1) for theta).
// Points on the axis (x = z = 0) take theta^ = 0.
using CartToCylFn = void (*)(const CylSetup&, int count, const double* x,
                             const double* y, const double* z, double* r,
                             double* t, double* h);
using CylToCartFn = void (*)(const CylSetup&, int count, const double* r,
                             const double* t, const double* h, double* x,
                             double* y, double* z);

// q = rint(clamp(v, 0, 1) * 65535); v = q * (1/65535).
using QuantizeU16Fn = void (*)(size_t count, const double* v01, uint16_t* out);
using DequantizeU16Fn = void (*)(size_t count, const uint16_t* in, double* v01);

// Triangles in SoA layout for batched point queries.
struct TriSoA {
  const double *ax, *ay, *az;
  const double *bx, *by, *bz;
  const double *cx, *cy, *cz;
};
// Exact squared point-to-triangle distances (Voronoi region selection,
// branchless so both paths evaluate the same expressions).
using PointTriDistFn = void (*)(const double point[3], const TriSoA& tris,
                                int count, double* dist_sq);

using MaskPopcountFn = size_t (*)(const uint8_t* mask, size_t count);

struct Kernels {
  const char* name;
  RasterRowFn raster_row;
  CartToCylFn cart_to_cyl;
  CylToCartFn cyl_to_cart;
  QuantizeU16Fn quantize_u16;
  DequantizeU16Fn dequantize_u16;
  PointTriDistFn point_tri_dist;
  MaskPopcountFn mask_popcount;
};

const Kernels& scalar();
// Null when this build or CPU lacks AVX2.
const Kernels* avx2();
// Runtime selection: AVX2 when available, unless GIM_KERNELS=scalar.
const Kernels& active();

}  // namespace gim::kernels
