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

#include "oracles.hpp"

#include <cmath>
#include <deque>
#include <map>

namespace oracles {

using gim::Mesh;
using gim::Vec2;
using gim::Vec3;

double point_triangle_dist_sq(const Vec3& p, const Vec3& a, const Vec3& b,
                              const Vec3& c) {
  Vec3 ab = b - a, ac = c - a, ap = p - a;
  double d1 = dot(ab, ap), d2 = dot(ac, ap);
  if (d1 <= 0 && d2 <= 0) return length_sq(p - a);
  Vec3 bp = p - b;
  double d3 = dot(ab, bp), d4 = dot(ac, bp);
  if (d3 >= 0 && d4 <= d3) return length_sq(p - b);
  double vc = d1 * d4 - d3 * d2;
  if (vc <= 0 && d1 >= 0 && d3 <= 0) {
    double t = d1 / (d1 - d3);
    return length_sq(p - (a + ab * t));
  }
  Vec3 cp = p - c;
  double d5 = dot(ab, cp), d6 = dot(ac, cp);
  if (d6 >= 0 && d5 <= d6) return length_sq(p - c);
  double vb = d5 * d2 - d1 * d6;
  if (vb <= 0 && d2 >= 0 && d6 <= 0) {
    double t = d2 / (d2 - d6);
    return length_sq(p - (a + ac * t));
  }
  double va = d3 * d6 - d5 * d4;
  if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0) {
    double t = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    return length_sq(p - (b + (c - b) * t));
  }
  double denom = 1.0 / (va + vb + vc);
  double v = vb * denom, w = vc * denom;
  return length_sq(p - (a + ab * v + ac * w));
}

double mesh_distance_sq(const Vec3& p, const Mesh& mesh) {
  double best = 1e300;
  for (const auto& f : mesh.faces) {
    const Vec3& a = mesh.positions[f.pos[0]];
    const Vec3& b = mesh.positions[f.pos[1]];
    const Vec3& c = mesh.positions[f.pos[2]];
    if (gim::triangle_area(a, b, c) <= 0) continue;
    best = std::min(best, point_triangle_dist_sq(p, a, b, c));
  }
  return best;
}

namespace {

// Same half-open ownership semantics as the production rasterizer,
// evaluated the slow way.
bool pixel_in_triangle(const Vec2& p, const Vec2 q[3]) {
  double area2 = cross(q[1] - q[0], q[2] - q[0]);
  if (area2 == 0) return false;
  int i0 = 0, i1 = 1, i2 = 2;
  if (area2 < 0) std::swap(i1, i2);
  const Vec2 v[3] = {q[i0], q[i1], q[i2]};
  for (int e = 0; e < 3; e++) {
    const Vec2& from = v[e];
    const Vec2& to = v[(e + 1) % 3];
    bool forward = from.x < to.x || (from.x == to.x && from.y < to.y);
    const Vec2& ca = forward ? from : to;
    const Vec2& cb = forward ? to : from;
    double dx = cb.x - ca.x, dy = cb.y - ca.y;
    double value = dx * (p.y - ca.y) - dy * (p.x - ca.x);
    double sign = forward ? 1.0 : -1.0;
    double ddx = forward ? dx : -dx;
    double ddy = forward ? dy : -dy;
    bool accept_zero = ddy > 0 || (ddy == 0 && ddx < 0);
    if (!((sign * value > 0) || (value == 0 && accept_zero))) return false;
  }
  return true;
}

}  // namespace

std::vector<uint8_t> coverage_mask(const Mesh& mesh, const gim::ChartSet& charts,
                                   int resolution) {
  std::vector<uint8_t> mask(static_cast<size_t>(resolution) * resolution, 0);
  for (const auto& chart : charts.charts) {
    for (int f : chart.face_ids) {
      const gim::Face& face = mesh.faces[f];
      Vec2 q[3];
      for (int c = 0; c < 3; c++)
        q[c] = chart.transform.apply(mesh.uvs[face.uv[c]]) * resolution;
      for (int iy = 0; iy < resolution; iy++) {
        for (int ix = 0; ix < resolution; ix++) {
          Vec2 p{ix + 0.5, iy + 0.5};
          if (pixel_in_triangle(p, q))
            mask[static_cast<size_t>(iy) * resolution + ix] = 1;
        }
      }
    }
  }
  return mask;
}

std::vector<std::vector<int>> components_bfs(const Mesh& mesh) {
  auto weld = gim::weld_positions(mesh);
  std::map<int64_t, std::vector<int>> vert_faces;
  for (size_t f = 0; f < mesh.faces.size(); f++)
    for (int c = 0; c < 3; c++)
      vert_faces[weld[mesh.faces[f].pos[c]]].push_back(static_cast<int>(f));

  std::vector<int> label(mesh.faces.size(), -1);
  std::vector<std::vector<int>> out;
  for (size_t f = 0; f < mesh.faces.size(); f++) {
    if (label[f] >= 0) continue;
    int id = static_cast<int>(out.size());
    out.emplace_back();
    std::deque<int> queue{static_cast<int>(f)};
    label[f] = id;
    while (!queue.empty()) {
      int cur = queue.front();
      queue.pop_front();
      out[id].push_back(cur);
      for (int c = 0; c < 3; c++) {
        for (int nb : vert_faces[weld[mesh.faces[cur].pos[c]]]) {
          if (label[nb] < 0) {
            label[nb] = id;
            queue.push_back(nb);
          }
        }
      }
    }
    std::sort(out[id].begin(), out[id].end());
  }
  return out;
}

bool packed_boxes_disjoint(const gim::AtlasLayout& layout) {
  struct Box {
    double x0, y0, x1, y1;
  };
  std::vector<Box> boxes;
  for (const auto& chart : layout.set.charts) {
    gim::Box2 b;
    const auto& bb = chart.uv_bbox;
    b.expand(chart.transform.apply({bb.lo.x, bb.lo.y}));
    b.expand(chart.transform.apply({bb.hi.x, bb.lo.y}));
    b.expand(chart.transform.apply({bb.lo.x, bb.hi.y}));
    b.expand(chart.transform.apply({bb.hi.x, bb.hi.y}));
    if (b.lo.x < 0 || b.lo.y < 0 || b.hi.x > 1 || b.hi.y > 1) return false;
    boxes.push_back({b.lo.x, b.lo.y, b.hi.x, b.hi.y});
  }
  double gutter = static_cast<double>(layout.gutter_px) / layout.resolution;
  double slack = 1e-12;
  for (size_t i = 0; i < boxes.size(); i++) {
    for (size_t j = i + 1; j < boxes.size(); j++) {
      bool sep_x = boxes[i].x1 + gutter <= boxes[j].x0 + slack ||
                   boxes[j].x1 + gutter <= boxes[i].x0 + slack;
      bool sep_y = boxes[i].y1 + gutter <= boxes[j].y0 + slack ||
                   boxes[j].y1 + gutter <= boxes[i].y0 + slack;
      if (!sep_x && !sep_y) return false;
    }
  }
  return true;
}

}  // namespace oracles
