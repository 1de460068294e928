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

// Pixel-center triangle rasterization shared by encode_gim and
// verify_injective. Edge functions are evaluated in canonical form so the
// half-open ownership rule never double-claims a pixel between triangles
// that share an edge with identical endpoint coordinates.

#pragma once

#include <cmath>
#include <vector>

#include "gim/kernels.hpp"
#include "gim/vec.hpp"

namespace gim::raster {

struct Scratch {
  std::vector<uint8_t> covered;
  std::vector<double> x, y, z;
  void ensure(int width) {
    if (static_cast<int>(covered.size()) < width) {
      covered.resize(width);
      x.resize(width);
      y.resize(width);
      z.resize(width);
    }
  }
};

// q: pixel-space vertices (uv * resolution). attr: values interpolated
// across the triangle. Returns false for zero UV area.
inline bool setup_triangle(const Vec2 q_in[3], const Vec3 attr_in[3],
                           kernels::TriRowSetup* out) {
  Vec2 q[3] = {q_in[0], q_in[1], q_in[2]};
  Vec3 attr[3] = {attr_in[0], attr_in[1], attr_in[2]};
  double area2 = cross(q[1] - q[0], q[2] - q[0]);
  if (area2 == 0) return false;
  if (area2 < 0) {
    std::swap(q[1], q[2]);
    std::swap(attr[1], attr[2]);
    area2 = -area2;
  }
  out->inv_area2 = 1.0 / area2;
  for (int j = 0; j < 3; j++) {
    const Vec2& from = q[j];
    const Vec2& to = q[(j + 1) % 3];
    bool forward = from.x < to.x || (from.x == to.x && from.y < to.y);
    const Vec2& a = forward ? from : to;
    const Vec2& b = forward ? to : from;
    out->edge_dx[j] = b.x - a.x;
    out->edge_dy[j] = b.y - a.y;
    out->edge_ox[j] = a.x;
    out->edge_oy[j] = a.y;
    out->edge_sign[j] = forward ? 1.0 : -1.0;
    double ddx = forward ? out->edge_dx[j] : -out->edge_dx[j];
    double ddy = forward ? out->edge_dy[j] : -out->edge_dy[j];
    out->accept_zero[j] = ddy > 0 || (ddy == 0 && ddx < 0);
  }
  for (int v = 0; v < 3; v++) {
    out->vx[v] = attr[v].x;
    out->vy[v] = attr[v].y;
    out->vz[v] = attr[v].z;
  }
  return true;
}

// Calls fn(ix, iy, Vec3 attr) for every covered pixel center inside the
// given raster size.
template <class Fn>
void rasterize(const Vec2 q[3], const Vec3 attr[3], int res_x, int res_y,
               Scratch& scratch, Fn&& fn) {
  kernels::TriRowSetup setup;
  if (!setup_triangle(q, attr, &setup)) return;
  Box2 bbox;
  for (int i = 0; i < 3; i++) bbox.expand(q[i]);
  int ix0 = std::max(0, static_cast<int>(std::ceil(bbox.lo.x - 0.5)));
  int ix1 = std::min(res_x - 1, static_cast<int>(std::floor(bbox.hi.x - 0.5)));
  int iy0 = std::max(0, static_cast<int>(std::ceil(bbox.lo.y - 0.5)));
  int iy1 = std::min(res_y - 1, static_cast<int>(std::floor(bbox.hi.y - 0.5)));
  if (ix1 < ix0 || iy1 < iy0) return;
  int count = ix1 - ix0 + 1;
  scratch.ensure(count);
  const auto& k = kernels::active();
  for (int iy = iy0; iy <= iy1; iy++) {
    k.raster_row(setup, ix0 + 0.5, iy + 0.5, count, scratch.covered.data(),
                 scratch.x.data(), scratch.y.data(), scratch.z.data());
    for (int i = 0; i < count; i++) {
      if (scratch.covered[i])
        fn(ix0 + i, iy, Vec3{scratch.x[i], scratch.y[i], scratch.z[i]});
    }
  }
}

}  // namespace gim::raster
