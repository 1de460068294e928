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

#include "fixtures.hpp"

#include <cmath>

namespace fixtures {

using gim::Face;
using gim::Mesh;
using gim::UvProvenance;
using gim::Vec2;
using gim::Vec3;

namespace {

constexpr double kPi = 3.141592653589793238462643383279;

int add_uv(Mesh& m, const Vec2& uv) {
  m.uvs.push_back(uv);
  return static_cast<int>(m.uvs.size() - 1);
}

void add_face(Mesh& m, int p0, int p1, int p2, int t0, int t1, int t2) {
  Face f;
  f.pos = {p0, p1, p2};
  f.uv = {t0, t1, t2};
  f.provenance = f.has_uv() ? UvProvenance::manual : UvProvenance::absent;
  m.faces.push_back(f);
}

void add_quad(Mesh& m, const int p[4], const int t[4]) {
  add_face(m, p[0], p[1], p[2], t[0], t[1], t[2]);
  add_face(m, p[0], p[2], p[3], t[0], t[2], t[3]);
}

// Box with one independent UV island per side.
Mesh box_islands(const Vec3& lo, const Vec3& hi) {
  Mesh m;
  auto corner = [&](int x, int y, int z) {
    return Vec3{x ? hi.x : lo.x, y ? hi.y : lo.y, z ? hi.z : lo.z};
  };
  for (int z = 0; z < 2; z++)
    for (int y = 0; y < 2; y++)
      for (int x = 0; x < 2; x++) m.positions.push_back(corner(x, y, z));
  auto pidx = [](int x, int y, int z) { return z * 4 + y * 2 + x; };

  // Quads in CCW-from-outside order.
  const int quads[6][4] = {
      {pidx(1, 0, 0), pidx(1, 1, 0), pidx(1, 1, 1), pidx(1, 0, 1)},  // +X
      {pidx(0, 0, 1), pidx(0, 1, 1), pidx(0, 1, 0), pidx(0, 0, 0)},  // -X
      {pidx(0, 1, 0), pidx(0, 1, 1), pidx(1, 1, 1), pidx(1, 1, 0)},  // +Y
      {pidx(0, 0, 1), pidx(0, 0, 0), pidx(1, 0, 0), pidx(1, 0, 1)},  // -Y
      {pidx(0, 0, 1), pidx(1, 0, 1), pidx(1, 1, 1), pidx(0, 1, 1)},  // +Z
      {pidx(0, 0, 0), pidx(0, 1, 0), pidx(1, 1, 0), pidx(1, 0, 0)},  // -Z
  };
  for (int side = 0; side < 6; side++) {
    int col = side % 3, row = side / 3;
    Vec2 origin{0.04 + col * 0.33, 0.08 + row * 0.46};
    double size = 0.26;
    int t[4] = {add_uv(m, origin),
                add_uv(m, origin + Vec2{size, 0}),
                add_uv(m, origin + Vec2{size, size}),
                add_uv(m, origin + Vec2{0, size})};
    add_quad(m, quads[side], t);
  }
  return m;
}

}  // namespace

Mesh single_triangle() {
  Mesh m;
  m.positions = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  m.uvs = {{0, 0}, {1, 0}, {0, 1}};
  add_face(m, 0, 1, 2, 0, 1, 2);
  return m;
}

Mesh cube(double lo, double hi) { return box_islands({lo, lo, lo}, {hi, hi, hi}); }

std::string cube_obj_text() { return gim::save_mesh_obj(cube(0, 1)); }

CylinderFixture cylinder_cut(int segments, int rows) {
  CylinderFixture out;
  Mesh& m = out.mesh;
  const double radius = 0.8, y0 = -0.8, y1 = 0.8;
  auto ring_pos = [&](int col, int row) {
    double a = (2.0 * kPi * col) / segments;
    double y = y0 + (y1 - y0) * row / rows;
    return Vec3{radius * std::cos(a), y, radius * std::sin(a)};
  };
  // Columns 0..segments; the last column repeats column 0's positions
  // bit for bit but carries u = 1 side UVs: the classic cut.
  std::vector<std::vector<int>> pos_idx(segments + 1), uv_idx(segments + 1);
  for (int col = 0; col <= segments; col++) {
    for (int row = 0; row <= rows; row++) {
      Vec3 p = ring_pos(col == segments ? 0 : col, row);
      m.positions.push_back(p);
      pos_idx[col].push_back(static_cast<int>(m.positions.size() - 1));
      Vec2 uv{0.05 + 0.9 * col / segments, 0.05 + 0.9 * row / rows};
      uv_idx[col].push_back(add_uv(m, uv));
    }
  }
  for (int col = 0; col < segments; col++) {
    for (int row = 0; row < rows; row++) {
      int p[4] = {pos_idx[col][row], pos_idx[col + 1][row], pos_idx[col + 1][row + 1],
                  pos_idx[col][row + 1]};
      int t[4] = {uv_idx[col][row], uv_idx[col + 1][row], uv_idx[col + 1][row + 1],
                  uv_idx[col][row + 1]};
      add_quad(m, p, t);
    }
  }
  for (int row = 0; row < rows; row++)
    out.cut_edges.push_back(edge_key(m, pos_idx[0][row], pos_idx[0][row + 1]));
  return out;
}

Mesh sphere8(int lon_steps, int lat_steps) {
  Mesh m;
  for (int hem = 0; hem < 2; hem++) {
    for (int q = 0; q < 4; q++) {
      Vec2 origin{0.02 + q * 0.245, 0.03 + hem * 0.5};
      const double iw = 0.22, ih = 0.44;
      std::vector<std::vector<int>> grid_pos(lon_steps + 1), grid_uv(lon_steps + 1);
      for (int i = 0; i <= lon_steps; i++) {
        for (int j = 0; j < lat_steps; j++) {
          double u = static_cast<double>(i) / lon_steps;
          double w = static_cast<double>(j) / lat_steps;
          double lon = (q + u) * (kPi / 2);
          double sinlat = hem == 0 ? w : -w;
          double coslat = std::sqrt(1.0 - sinlat * sinlat);
          m.positions.push_back(
              {coslat * std::cos(lon), sinlat, coslat * std::sin(lon)});
          grid_pos[i].push_back(static_cast<int>(m.positions.size() - 1));
          grid_uv[i].push_back(add_uv(m, origin + Vec2{u * iw, w * ih}));
        }
      }
      for (int i = 0; i < lon_steps; i++) {
        for (int j = 0; j + 1 < lat_steps; j++) {
          int p[4] = {grid_pos[i][j], grid_pos[i + 1][j], grid_pos[i + 1][j + 1],
                      grid_pos[i][j + 1]};
          int t[4] = {grid_uv[i][j], grid_uv[i + 1][j], grid_uv[i + 1][j + 1],
                      grid_uv[i][j + 1]};
          if (hem == 0) {
            add_quad(m, p, t);
          } else {
            int pr[4] = {p[1], p[0], p[3], p[2]};  // keep outward winding
            int tr[4] = {t[1], t[0], t[3], t[2]};
            add_quad(m, pr, tr);
          }
        }
      }
      // Pole fan; one pole vertex and one pole UV per octant keeps the
      // island a single injective chart.
      m.positions.push_back({0.0, hem == 0 ? 1.0 : -1.0, 0.0});
      int pole_pos = static_cast<int>(m.positions.size() - 1);
      int pole_uv = add_uv(m, origin + Vec2{iw / 2, ih});
      int last = lat_steps - 1;
      for (int i = 0; i < lon_steps; i++) {
        if (hem == 0)
          add_face(m, grid_pos[i][last], grid_pos[i + 1][last], pole_pos,
                   grid_uv[i][last], grid_uv[i + 1][last], pole_uv);
        else
          add_face(m, grid_pos[i + 1][last], grid_pos[i][last], pole_pos,
                   grid_uv[i + 1][last], grid_uv[i][last], pole_uv);
      }
    }
  }
  return m;
}

StripFixture mirrored_strip() {
  StripFixture out;
  Mesh& m = out.mesh;
  // x = 0, 1, 2 columns; UVs ping-pong: u(0)=0.2, u(1)=0.5, u(2)=0.2.
  for (double y : {0.0, 1.0})
    for (double x : {0.0, 1.0, 2.0}) m.positions.push_back({x, y, 0});
  auto P = [](int col, int row) { return row * 3 + col; };
  double us[3] = {0.2, 0.5, 0.2};
  std::vector<std::vector<int>> uv(3);
  for (int col = 0; col < 3; col++)
    for (double v : {0.2, 0.5}) uv[col].push_back(add_uv(m, {us[col], v}));
  for (int col = 0; col < 2; col++) {
    int p[4] = {P(col, 0), P(col + 1, 0), P(col + 1, 1), P(col, 1)};
    int t[4] = {uv[col][0], uv[col + 1][0], uv[col + 1][1], uv[col][1]};
    add_quad(m, p, t);
  }
  out.fold_edge = edge_key(m, P(1, 0), P(1, 1));
  return out;
}

FoldedFanFixture folded_fan() {
  FoldedFanFixture out;
  Mesh& m = out.mesh;
  // A B C D E F G, dome-lifted; the fold line runs through E-B-D.
  const Vec2 flat[7] = {{0, 0},    {2, 0},  {1, 1.5}, {3, 1.5},
                        {1, -1.5}, {4, 0},  {3, -1.5}};
  auto lift = [](const Vec2& p) {
    double d = 1.0 - ((p.x - 2) * (p.x - 2) + p.y * p.y) / 16.0;
    return Vec3{p.x, p.y, 0.5 * std::sqrt(std::max(0.0, d))};
  };
  for (const auto& p : flat) m.positions.push_back(lift(p));

  auto to_uv = [](const Vec2& p) {
    return Vec2{(p.x + 0.5) / 5.0, (p.y + 2.0) / 4.0};
  };
  // Reflection across the line through B with direction (1, 1.5).
  Vec2 b = flat[1];
  Vec2 dir{1, 1.5};
  double len2 = dot(dir, dir);
  auto reflect = [&](const Vec2& p) {
    Vec2 rel = p - b;
    double t = dot(rel, dir) / len2;
    Vec2 proj = dir * t;
    return b + proj * 2.0 - rel;
  };
  int uvA = add_uv(m, to_uv(flat[0])), uvB = add_uv(m, to_uv(flat[1]));
  int uvC = add_uv(m, to_uv(flat[2])), uvD = add_uv(m, to_uv(flat[3]));
  int uvE = add_uv(m, to_uv(flat[4]));
  int uvF = add_uv(m, to_uv(reflect(flat[5])));
  int uvG = add_uv(m, to_uv(reflect(flat[6])));

  enum { A, B, C, D, E, F, G };
  add_face(m, A, B, C, uvA, uvB, uvC);
  add_face(m, B, D, C, uvB, uvD, uvC);
  add_face(m, A, B, E, uvA, uvB, uvE);  // left half
  add_face(m, B, F, D, uvB, uvF, uvD);
  add_face(m, E, G, B, uvE, uvG, uvB);
  add_face(m, B, G, F, uvB, uvG, uvF);  // folded half
  out.crease_edges = {edge_key(m, B, D), edge_key(m, B, E)};
  return out;
}

Mesh torus(int major_steps, int minor_steps, double R, double r) {
  Mesh m;
  auto point = [&](int i, int j) {
    double theta = (2.0 * kPi * i) / major_steps;
    double phi = (2.0 * kPi * j) / minor_steps;
    double ring = R + r * std::cos(phi);
    return Vec3{ring * std::cos(theta), r * std::sin(phi), ring * std::sin(theta)};
  };
  std::vector<std::vector<int>> pos(major_steps + 1), uv(major_steps + 1);
  for (int i = 0; i <= major_steps; i++) {
    for (int j = 0; j <= minor_steps; j++) {
      m.positions.push_back(point(i == major_steps ? 0 : i, j == minor_steps ? 0 : j));
      pos[i].push_back(static_cast<int>(m.positions.size() - 1));
      uv[i].push_back(add_uv(m, {0.05 + 0.9 * i / major_steps,
                                 0.05 + 0.9 * j / minor_steps}));
    }
  }
  for (int i = 0; i < major_steps; i++) {
    for (int j = 0; j < minor_steps; j++) {
      int p[4] = {pos[i][j], pos[i + 1][j], pos[i + 1][j + 1], pos[i][j + 1]};
      int t[4] = {uv[i][j], uv[i + 1][j], uv[i + 1][j + 1], uv[i][j + 1]};
      add_quad(m, p, t);
    }
  }
  return m;
}

namespace {

// Appends a box unwrapped as a single cross-shaped island.
void add_cross_box(Mesh& m, const Vec3& center, const Vec3& half, const Vec2& origin,
                   double s) {
  int base = static_cast<int>(m.positions.size());
  for (int z = 0; z < 2; z++)
    for (int y = 0; y < 2; y++)
      for (int x = 0; x < 2; x++)
        m.positions.push_back({center.x + (x ? half.x : -half.x),
                               center.y + (y ? half.y : -half.y),
                               center.z + (z ? half.z : -half.z)});
  auto pidx = [&](int x, int y, int z) { return base + z * 4 + y * 2 + x; };

  struct CrossFace {
    int corners[4][3];            // (x,y,z) bits, CCW from outside
    double (*uv)(const int c[3], int axis);
  };
  // Unfold around the +Z face; shared fold edges land on equal UVs.
  auto front = [](const int c[3], int axis) {
    return axis == 0 ? 1.0 + c[0] : 1.0 + c[1];
  };
  auto right = [](const int c[3], int axis) {
    return axis == 0 ? 2.0 + (1 - c[2]) : 1.0 + c[1];
  };
  auto left = [](const int c[3], int axis) {
    return axis == 0 ? 0.0 + c[2] : 1.0 + c[1];
  };
  auto back = [](const int c[3], int axis) {
    return axis == 0 ? 3.0 + (1 - c[0]) : 1.0 + c[1];
  };
  auto top = [](const int c[3], int axis) {
    return axis == 0 ? 1.0 + c[0] : 2.0 + (1 - c[2]);
  };
  auto bottom = [](const int c[3], int axis) {
    return axis == 0 ? 1.0 + c[0] : 0.0 + c[2];
  };
  const CrossFace faces[6] = {
      {{{0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}}, +front},
      {{{1, 0, 1}, {1, 0, 0}, {1, 1, 0}, {1, 1, 1}}, +right},
      {{{0, 0, 0}, {0, 0, 1}, {0, 1, 1}, {0, 1, 0}}, +left},
      {{{1, 0, 0}, {0, 0, 0}, {0, 1, 0}, {1, 1, 0}}, +back},
      {{{0, 1, 1}, {1, 1, 1}, {1, 1, 0}, {0, 1, 0}}, +top},
      {{{0, 0, 0}, {1, 0, 0}, {1, 0, 1}, {0, 0, 1}}, +bottom},
  };
  for (const auto& face : faces) {
    int p[4], t[4];
    for (int c = 0; c < 4; c++) {
      const int* bits = face.corners[c];
      p[c] = pidx(bits[0], bits[1], bits[2]);
      t[c] = add_uv(m, origin + Vec2{face.uv(bits, 0) * s, face.uv(bits, 1) * s});
    }
    add_quad(m, p, t);
  }
}

}  // namespace

Mesh articulated_figure() {
  Mesh m;
  const double s = 0.07;  // cross cell size; cross footprint 4s x 3s
  struct Part {
    Vec3 center, half;
  };
  const Part parts[6] = {
      {{0, 0, 0}, {0.35, 0.5, 0.2}},        // torso
      {{0, 0.85, 0}, {0.2, 0.2, 0.18}},     // head
      {{-0.55, 0.1, 0}, {0.12, 0.45, 0.12}},
      {{0.55, 0.1, 0}, {0.12, 0.45, 0.12}},
      {{-0.18, -1.05, 0}, {0.14, 0.5, 0.14}},
      {{0.18, -1.05, 0}, {0.14, 0.5, 0.14}},
  };
  for (int i = 0; i < 6; i++) {
    Vec2 origin{0.03 + (i % 3) * 0.33, 0.05 + (i / 3) * 0.48};
    add_cross_box(m, parts[i].center, parts[i].half, origin, s);
  }
  return m;
}

Mesh plane_grid(int n) {
  Mesh m;
  std::vector<std::vector<int>> pos(n + 1), uv(n + 1);
  for (int i = 0; i <= n; i++) {
    for (int j = 0; j <= n; j++) {
      double x = static_cast<double>(i) / n, z = static_cast<double>(j) / n;
      m.positions.push_back({x, 0, z});
      pos[i].push_back(static_cast<int>(m.positions.size() - 1));
      uv[i].push_back(add_uv(m, {0.05 + 0.9 * x, 0.05 + 0.9 * z}));
    }
  }
  for (int i = 0; i < n; i++) {
    for (int j = 0; j < n; j++) {
      int p[4] = {pos[i][j], pos[i + 1][j], pos[i + 1][j + 1], pos[i][j + 1]};
      int t[4] = {uv[i][j], uv[i + 1][j], uv[i + 1][j + 1], uv[i][j + 1]};
      add_quad(m, p, t);
    }
  }
  return m;
}

Mesh cube_missing(int sides_without_uv) {
  Mesh m = cube();
  for (int side = 0; side < sides_without_uv && side < 6; side++) {
    for (int k = 0; k < 2; k++) {
      Face& f = m.faces[side * 2 + k];
      f.uv = {-1, -1, -1};
      f.provenance = UvProvenance::absent;
    }
  }
  return m;
}

Mesh box_missing_cap() {
  Mesh m = box_islands({0, 0, 0}, {1, 1, 4});
  // Strip both z-normal caps (sides 4 and 5 in the island builder): the
  // two 1x1 ends of the 1x1x4 box, ~11% of the area.
  for (int side : {4, 5}) {
    for (int k = 0; k < 2; k++) {
      Face& f = m.faces[side * 2 + k];
      f.uv = {-1, -1, -1};
      f.provenance = UvProvenance::absent;
    }
  }
  return m;
}

gim::Texture checker_texture(int w, int h) {
  gim::Texture t;
  t.width = w;
  t.height = h;
  t.rgb.resize(static_cast<size_t>(w) * h * 3);
  for (int y = 0; y < h; y++) {
    for (int x = 0; x < w; x++) {
      uint8_t v = ((x + y) & 1) ? 255 : 0;
      size_t i = (static_cast<size_t>(y) * w + x) * 3;
      t.rgb[i] = t.rgb[i + 1] = t.rgb[i + 2] = v;
    }
  }
  return t;
}

gim::Texture solid_texture(int w, int h, uint8_t r, uint8_t g, uint8_t b) {
  gim::Texture t;
  t.width = w;
  t.height = h;
  t.rgb.resize(static_cast<size_t>(w) * h * 3);
  for (size_t i = 0; i < t.rgb.size(); i += 3) {
    t.rgb[i] = r;
    t.rgb[i + 1] = g;
    t.rgb[i + 2] = b;
  }
  return t;
}

gim::EdgeKey edge_key(const gim::Mesh& mesh, int pos_a, int pos_b) {
  auto weld = gim::weld_positions(mesh);
  int64_t a = weld[pos_a], b = weld[pos_b];
  return a < b ? gim::EdgeKey{a, b} : gim::EdgeKey{b, a};
}

std::vector<CorpusEntry> corpus() {
  std::vector<CorpusEntry> out;
  out.push_back({"cube", cube(), true});
  out.push_back({"cylinder_cut", cylinder_cut().mesh, true});
  out.push_back({"sphere8", sphere8(), true});
  out.push_back({"mirrored_strip", mirrored_strip().mesh, true});
  out.push_back({"articulated_figure", articulated_figure(), true});
  out.push_back({"torus", torus(), true});
  out.push_back({"plane_grid", plane_grid(), true});
  out.push_back({"folded_fan", folded_fan().mesh, true});
  out.push_back({"cube_missing17", cube_missing(1), true});   // ~17% missing
  out.push_back({"cube_missing33", cube_missing(2), false});  // ~33% missing
  out.push_back({"box_missing11", box_missing_cap(), true});  // ~11% missing
  return out;
}

}  // namespace fixtures
