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

#include "gim/atlas.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "raster.hpp"

namespace gim {

namespace {

constexpr double kUvAgreeTol = 1e-7;
constexpr double kMinChartUvArea = 1e-12;

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(size_t n) : parent(n) {
    for (size_t i = 0; i < n; i++) parent[i] = static_cast<int>(i);
  }
  int find(int a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

struct Int3Hash {
  size_t operator()(const std::array<int64_t, 3>& k) const {
    uint64_t h = 1469598103934665603ull;
    for (int64_t v : k) {
      h ^= static_cast<uint64_t>(v);
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

// An edge incidence: the face and the corner where the edge starts.
struct EdgeUse {
  int face;
  int corner;
};

// Edge map over a face subset, keyed by welded endpoint ids (sorted).
std::map<EdgeKey, std::vector<EdgeUse>> build_edge_map(
    const Mesh& mesh, const std::vector<int64_t>& weld,
    const std::vector<int>& faces) {
  std::map<EdgeKey, std::vector<EdgeUse>> edges;
  for (int f : faces) {
    const Face& face = mesh.faces[f];
    for (int c = 0; c < 3; c++) {
      int64_t a = weld[face.pos[c]];
      int64_t b = weld[face.pos[(c + 1) % 3]];
      if (a == b) continue;
      EdgeKey key = a < b ? EdgeKey{a, b} : EdgeKey{b, a};
      edges[key].push_back({f, c});
    }
  }
  return edges;
}

// UVs of an edge use ordered to match the sorted edge key.
struct EdgeUvs {
  Vec2 at_first, at_second;
  Vec2 opposite;
  bool valid = false;
};

EdgeUvs edge_uvs(const Mesh& mesh, const std::vector<int64_t>& weld,
                 const EdgeKey& key, const EdgeUse& use) {
  const Face& face = mesh.faces[use.face];
  EdgeUvs out;
  if (!face.has_uv()) return out;
  int c0 = use.corner, c1 = (use.corner + 1) % 3, c2 = (use.corner + 2) % 3;
  Vec2 uv0 = mesh.uvs[face.uv[c0]];
  Vec2 uv1 = mesh.uvs[face.uv[c1]];
  out.opposite = mesh.uvs[face.uv[c2]];
  if (weld[face.pos[c0]] == key.first) {
    out.at_first = uv0;
    out.at_second = uv1;
  } else {
    out.at_first = uv1;
    out.at_second = uv0;
  }
  out.valid = true;
  return out;
}

bool uv_differs(const Vec2& a, const Vec2& b) {
  return std::fabs(a.x - b.x) > kUvAgreeTol || std::fabs(a.y - b.y) > kUvAgreeTol;
}

int sign_of(double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

double face_area_3d(const Mesh& mesh, int f) {
  const Face& face = mesh.faces[f];
  return triangle_area(mesh.positions[face.pos[0]], mesh.positions[face.pos[1]],
                       mesh.positions[face.pos[2]]);
}

double face_area_uv(const Mesh& mesh, int f) {
  const Face& face = mesh.faces[f];
  return std::fabs(triangle_area_uv(mesh.uvs[face.uv[0]], mesh.uvs[face.uv[1]],
                                    mesh.uvs[face.uv[2]]));
}

}  // namespace

std::vector<int64_t> weld_positions(const Mesh& mesh, double tolerance) {
  std::unordered_map<std::array<int64_t, 3>, int64_t, Int3Hash> cells;
  cells.reserve(mesh.positions.size());
  std::vector<int64_t> ids(mesh.positions.size());
  double inv = 1.0 / tolerance;
  for (size_t i = 0; i < mesh.positions.size(); i++) {
    const Vec3& p = mesh.positions[i];
    std::array<int64_t, 3> key = {llround(p.x * inv), llround(p.y * inv),
                                  llround(p.z * inv)};
    auto [it, inserted] = cells.try_emplace(key, static_cast<int64_t>(i));
    ids[i] = it->second;
  }
  return ids;
}

std::vector<std::vector<int>> connected_components(const Mesh& mesh) {
  auto weld = weld_positions(mesh);
  UnionFind uf(mesh.faces.size());
  std::unordered_map<int64_t, int> first_face;
  first_face.reserve(mesh.positions.size());
  for (size_t f = 0; f < mesh.faces.size(); f++) {
    for (int c = 0; c < 3; c++) {
      int64_t w = weld[mesh.faces[f].pos[c]];
      auto [it, inserted] = first_face.try_emplace(w, static_cast<int>(f));
      if (!inserted) uf.unite(it->second, static_cast<int>(f));
    }
  }
  std::map<int, std::vector<int>> by_root;
  for (size_t f = 0; f < mesh.faces.size(); f++)
    by_root[uf.find(static_cast<int>(f))].push_back(static_cast<int>(f));
  std::vector<std::vector<int>> out;
  out.reserve(by_root.size());
  for (auto& [root, faces] : by_root) out.push_back(std::move(faces));
  return out;
}

std::set<EdgeKey> detect_seams(const Mesh& mesh, const std::vector<int>& component) {
  auto weld = weld_positions(mesh);
  auto edges = build_edge_map(mesh, weld, component);
  std::set<EdgeKey> seams;
  for (const auto& [key, uses] : edges) {
    if (uses.size() < 2) continue;
    for (size_t i = 0; i + 1 < uses.size() && !seams.count(key); i++) {
      EdgeUvs ui = edge_uvs(mesh, weld, key, uses[i]);
      if (!ui.valid) continue;
      for (size_t j = i + 1; j < uses.size(); j++) {
        EdgeUvs uj = edge_uvs(mesh, weld, key, uses[j]);
        if (!uj.valid) continue;
        if (uv_differs(ui.at_first, uj.at_first) ||
            uv_differs(ui.at_second, uj.at_second)) {
          seams.insert(key);
          break;
        }
      }
    }
  }
  return seams;
}

std::set<EdgeKey> detect_creases(const Mesh& mesh, const std::vector<int>& component) {
  auto weld = weld_positions(mesh);
  auto edges = build_edge_map(mesh, weld, component);
  std::set<EdgeKey> creases;
  for (const auto& [key, uses] : edges) {
    if (uses.size() < 2) continue;
    for (size_t i = 0; i + 1 < uses.size() && !creases.count(key); i++) {
      EdgeUvs ui = edge_uvs(mesh, weld, key, uses[i]);
      if (!ui.valid) continue;
      for (size_t j = i + 1; j < uses.size(); j++) {
        EdgeUvs uj = edge_uvs(mesh, weld, key, uses[j]);
        if (!uj.valid) continue;
        if (uv_differs(ui.at_first, uj.at_first) ||
            uv_differs(ui.at_second, uj.at_second))
          continue;  // a seam, not a fold
        // Fold: both opposite corners land on the same side of the shared
        // UV edge, i.e. the UV mapping doubles back across it.
        Vec2 dir = ui.at_second - ui.at_first;
        int side_i = sign_of(cross(dir, ui.opposite - ui.at_first));
        int side_j = sign_of(cross(dir, uj.opposite - ui.at_first));
        if (side_i != 0 && side_i == side_j) {
          creases.insert(key);
          break;
        }
      }
    }
  }
  return creases;
}

ChartSet split_charts(const Mesh& mesh) {
  ChartSet out;
  auto weld = weld_positions(mesh);

  std::vector<int> with_uv;
  double total_area = 0, manual_area = 0;
  for (size_t f = 0; f < mesh.faces.size(); f++) {
    total_area += face_area_3d(mesh, static_cast<int>(f));
    if (mesh.faces[f].has_uv())
      with_uv.push_back(static_cast<int>(f));
    else
      out.uncovered_faces.push_back(static_cast<int>(f));
  }

  auto components = connected_components(mesh);
  UnionFind uf(mesh.faces.size());
  for (const auto& comp : components) {
    auto seams = detect_seams(mesh, comp);
    auto creases = detect_creases(mesh, comp);
    auto edges = build_edge_map(mesh, weld, comp);
    for (const auto& [key, uses] : edges) {
      if (seams.count(key) || creases.count(key)) continue;
      const EdgeUse* prev = nullptr;
      for (const auto& use : uses) {
        if (!mesh.faces[use.face].has_uv()) continue;
        if (prev) uf.unite(prev->face, use.face);
        prev = &use;
      }
    }
  }

  std::map<int, Chart> by_root;
  for (int f : with_uv) by_root[uf.find(f)].face_ids.push_back(f);

  for (auto& [root, chart] : by_root) {
    for (int f : chart.face_ids) {
      const Face& face = mesh.faces[f];
      chart.surface_area_3d += face_area_3d(mesh, f);
      chart.uv_area += face_area_uv(mesh, f);
      for (int c = 0; c < 3; c++) chart.uv_bbox.expand(mesh.uvs[face.uv[c]]);
    }
    chart.provenance = mesh.faces[chart.face_ids.front()].provenance;
    if (chart.uv_area < kMinChartUvArea) {
      // Cannot be rasterized; demote to uncovered.
      out.demoted_zero_uv_charts++;
      for (int f : chart.face_ids) out.uncovered_faces.push_back(f);
      continue;
    }
    if (chart.provenance == UvProvenance::manual)
      manual_area += chart.surface_area_3d;
    chart.id = static_cast<int>(out.charts.size());
    out.charts.push_back(std::move(chart));
  }
  std::sort(out.uncovered_faces.begin(), out.uncovered_faces.end());
  out.manual_coverage = total_area > 0 ? manual_area / total_area : 0;
  return out;
}

ChartSet unwrap_missing(Mesh& mesh, const ChartSet& charts, const UnwrapHook* hook) {
  if (charts.uncovered_faces.empty()) return charts;
  ChartSet out = charts;

  std::optional<std::vector<Vec2>> hook_uvs;
  if (hook && *hook) hook_uvs = (*hook)(mesh, charts.uncovered_faces);
  bool use_hook = hook_uvs && hook_uvs->size() == charts.uncovered_faces.size() * 3;

  double max_leg = 0;
  if (!use_hook) {
    for (int f : charts.uncovered_faces)
      max_leg = std::max(max_leg, std::sqrt(2.0 * face_area_3d(mesh, f)));
  }
  double norm = max_leg > 0 ? 1.0 / max_leg : 1.0;

  int next_id = 0;
  for (const auto& c : out.charts) next_id = std::max(next_id, c.id + 1);

  for (size_t i = 0; i < charts.uncovered_faces.size(); i++) {
    int f = charts.uncovered_faces[i];
    Face& face = mesh.faces[f];
    int base = static_cast<int>(mesh.uvs.size());
    if (use_hook) {
      for (int c = 0; c < 3; c++) mesh.uvs.push_back((*hook_uvs)[i * 3 + c]);
    } else {
      // Right triangle with uv_area proportional to the face's 3D area.
      double leg = std::sqrt(2.0 * face_area_3d(mesh, f)) * norm;
      mesh.uvs.push_back({0, 0});
      mesh.uvs.push_back({leg, 0});
      mesh.uvs.push_back({0, leg});
    }
    face.uv = {base, base + 1, base + 2};
    face.provenance = UvProvenance::generated;

    Chart chart;
    chart.id = next_id++;
    chart.face_ids = {f};
    chart.surface_area_3d = face_area_3d(mesh, f);
    chart.uv_area = face_area_uv(mesh, f);
    for (int c = 0; c < 3; c++) chart.uv_bbox.expand(mesh.uvs[face.uv[c]]);
    chart.provenance = UvProvenance::generated;
    out.charts.push_back(std::move(chart));
  }
  out.uncovered_faces.clear();
  return out;
}

CoverageReport coverage_filter(const ChartSet& charts, double threshold) {
  CoverageReport r;
  r.manual_coverage = charts.manual_coverage;
  r.threshold = threshold;
  r.accepted = charts.manual_coverage >= threshold;
  return r;
}

InjectivityResult verify_injective(const Mesh& mesh, const ChartSet& charts,
                                   int resolution) {
  InjectivityResult result;
  std::vector<int32_t> claimed(static_cast<size_t>(resolution) * resolution, -1);
  std::vector<int32_t> chart_of(mesh.faces.size(), -1);
  for (const auto& chart : charts.charts)
    for (int f : chart.face_ids) chart_of[f] = chart.id;

  auto adjacent = [&](int fa, int fb) {
    const Face& a = mesh.faces[fa];
    const Face& b = mesh.faces[fb];
    for (int i = 0; i < 3; i++)
      for (int j = 0; j < 3; j++)
        if (a.uv[i] == b.uv[j]) return true;
    return false;
  };

  raster::Scratch scratch;
  for (const auto& chart : charts.charts) {
    for (int f : chart.face_ids) {
      const Face& face = mesh.faces[f];
      Vec2 q[3];
      Vec3 attr[3] = {};
      for (int c = 0; c < 3; c++)
        q[c] = chart.transform.apply(mesh.uvs[face.uv[c]]) * resolution;
      raster::rasterize(q, attr, resolution, resolution, scratch,
                        [&](int ix, int iy, const Vec3&) {
                          int32_t& slot = claimed[static_cast<size_t>(iy) * resolution + ix];
                          if (slot < 0) {
                            slot = f;
                            return;
                          }
                          if (chart_of[slot] == chart.id && adjacent(slot, f)) return;
                          result.injective = false;
                          if (result.conflicts.size() < 64)
                            result.conflicts.push_back({ix, iy, slot, f});
                        });
    }
  }
  return result;
}

void equal_area_rescale(ChartSet& charts) {
  double total = 0;
  for (const auto& c : charts.charts) {
    if (c.surface_area_3d <= 0 || c.uv_area <= 0)
      throw MeshError("equal_area_rescale: chart with non-positive area");
    total += c.surface_area_3d;
  }
  if (total <= 0) return;
  for (auto& c : charts.charts) {
    double target_uv = c.surface_area_3d / total;
    c.transform.scale = std::sqrt(target_uv / c.uv_area);
    c.transform.rot90 = 0;
    c.transform.translate = {0, 0};
  }
}

namespace {

struct PackBox {
  int chart_index;
  double w, h;  // scaled UV units, after optional rotation
  bool rotated;
};

struct Placement {
  int px = 0, py = 0;
  int wpx = 0, hpx = 0;
};

bool shelf_pack(const std::vector<PackBox>& boxes, double g, int res, int gutter,
                std::vector<Placement>* placements) {
  int x = gutter, y = gutter, shelf_h = 0;
  int limit = res - gutter;
  for (size_t i = 0; i < boxes.size(); i++) {
    int wpx = std::max(1, static_cast<int>(std::ceil(boxes[i].w * g * res)));
    int hpx = std::max(1, static_cast<int>(std::ceil(boxes[i].h * g * res)));
    if (wpx > limit - gutter) return false;
    if (x + wpx > limit) {
      y += shelf_h + gutter;
      x = gutter;
      shelf_h = 0;
    }
    if (y + hpx > limit) return false;
    if (placements) (*placements)[i] = {x, y, wpx, hpx};
    x += wpx + gutter;
    shelf_h = std::max(shelf_h, hpx);
  }
  return true;
}

}  // namespace

AtlasLayout pack_atlas(ChartSet charts, int resolution, int gutter_px) {
  AtlasLayout layout;
  layout.resolution = resolution;
  layout.gutter_px = gutter_px;

  std::vector<PackBox> boxes;
  boxes.reserve(charts.charts.size());
  double scaled_area = 0;
  for (size_t i = 0; i < charts.charts.size(); i++) {
    const Chart& c = charts.charts[i];
    double w = c.uv_bbox.width() * c.transform.scale;
    double h = c.uv_bbox.height() * c.transform.scale;
    PackBox box{static_cast<int>(i), w, h, false};
    if (h > w) {
      std::swap(box.w, box.h);
      box.rotated = true;
    }
    scaled_area += c.atlas_uv_area();
    boxes.push_back(box);
  }
  // Tallest first; ties broken by width then chart order.
  std::sort(boxes.begin(), boxes.end(), [&](const PackBox& a, const PackBox& b) {
    if (a.h != b.h) return a.h > b.h;
    if (a.w != b.w) return a.w > b.w;
    return a.chart_index < b.chart_index;
  });

  if (!boxes.empty()) {
    double usable = static_cast<double>(resolution - 2 * gutter_px) / resolution;
    double g_hi = 1e300;
    for (const auto& b : boxes) g_hi = std::min(g_hi, usable / std::max(b.w, b.h));
    // Nominal scale targets a 50% fill; a pack below a quarter of that is
    // an overflow (global shrink beyond 4x).
    double g_nom = std::min(g_hi, std::sqrt(0.5 / std::max(scaled_area, 1e-300)));

    double best = -1;
    if (shelf_pack(boxes, g_hi, resolution, gutter_px, nullptr)) {
      best = g_hi;
    } else {
      double lo = 0, hi = g_hi;
      for (int iter = 0; iter < 60; iter++) {
        double mid = 0.5 * (lo + hi);
        if (shelf_pack(boxes, mid, resolution, gutter_px, nullptr)) {
          best = mid;
          lo = mid;
        } else {
          hi = mid;
        }
      }
    }
    if (best <= 0 || best < 0.25 * g_nom) throw MeshError("atlas overflow");

    std::vector<Placement> placements(boxes.size());
    if (!shelf_pack(boxes, best, resolution, gutter_px, &placements))
      throw MeshError("atlas overflow");

    layout.pack_scale = best;
    for (size_t i = 0; i < boxes.size(); i++) {
      Chart& c = charts.charts[boxes[i].chart_index];
      double s = c.transform.scale * best;
      Vec2 origin{static_cast<double>(placements[i].px) / resolution,
                  static_cast<double>(placements[i].py) / resolution};
      c.transform.scale = s;
      if (boxes[i].rotated) {
        c.transform.rot90 = 1;
        c.transform.translate = {origin.x + c.uv_bbox.hi.y * s,
                                 origin.y - c.uv_bbox.lo.x * s};
      } else {
        c.transform.rot90 = 0;
        c.transform.translate = {origin.x - c.uv_bbox.lo.x * s,
                                 origin.y - c.uv_bbox.lo.y * s};
      }
    }
  }
  layout.set = std::move(charts);
  return layout;
}

InjectivityResult verify_and_certify(const Mesh& mesh, AtlasLayout& layout) {
  InjectivityResult r = verify_injective(mesh, layout.set, layout.resolution);
  layout.verified_resolution = r.injective ? layout.resolution : 0;
  return r;
}

std::vector<uint16_t> uv_access_heatmap(const Mesh& mesh, const ChartSet& charts,
                                        int resolution) {
  std::vector<uint16_t> heat(static_cast<size_t>(resolution) * resolution, 0);
  raster::Scratch scratch;
  for (const auto& chart : charts.charts) {
    for (int f : chart.face_ids) {
      const Face& face = mesh.faces[f];
      Vec2 q[3];
      Vec3 attr[3] = {};
      for (int c = 0; c < 3; c++)
        q[c] = chart.transform.apply(mesh.uvs[face.uv[c]]) * resolution;
      raster::rasterize(q, attr, resolution, resolution, scratch,
                        [&](int ix, int iy, const Vec3&) {
                          auto& v = heat[static_cast<size_t>(iy) * resolution + ix];
                          if (v < 65535) v++;
                        });
    }
  }
  return heat;
}

}  // namespace gim
