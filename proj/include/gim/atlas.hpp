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

// UV atlas analysis: decompose a mesh's UV mapping into locally invertible
// charts, verify injectivity at raster resolution, rescale charts toward an
// equal-area sampling and repack them into the unit square.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "gim/mesh.hpp"

namespace gim {

// Affine chart placement: atlas_uv = rot90(uv * scale) + translate.
struct Transform2 {
  double scale = 1;
  int rot90 = 0;  // quarter turns, counterclockwise
  Vec2 translate{0, 0};

  Vec2 apply(const Vec2& uv) const {
    Vec2 p{uv.x * scale, uv.y * scale};
    switch (rot90 & 3) {
      case 1: p = {-p.y, p.x}; break;
      case 2: p = {-p.x, -p.y}; break;
      case 3: p = {p.y, -p.x}; break;
      default: break;
    }
    return p + translate;
  }
  Vec2 invert(const Vec2& atlas) const {
    Vec2 p = atlas - translate;
    switch (rot90 & 3) {
      case 1: p = {p.y, -p.x}; break;
      case 2: p = {-p.x, -p.y}; break;
      case 3: p = {-p.y, p.x}; break;
      default: break;
    }
    return p / scale;
  }
};

struct Chart {
  int id = 0;
  std::vector<int> face_ids;
  Box2 uv_bbox;               // in source UV space
  double surface_area_3d = 0;
  double uv_area = 0;         // in source UV space
  Transform2 transform;
  UvProvenance provenance = UvProvenance::manual;
  // Chart area after the transform's scale is applied.
  double atlas_uv_area() const { return uv_area * transform.scale * transform.scale; }
};

struct ChartSet {
  std::vector<Chart> charts;
  std::vector<int> uncovered_faces;
  double manual_coverage = 0;
  int demoted_zero_uv_charts = 0;
  size_t total_faces() const {
    size_t n = uncovered_faces.size();
    for (const auto& c : charts) n += c.face_ids.size();
    return n;
  }
};

struct AtlasLayout {
  ChartSet set;
  int resolution = 0;
  int gutter_px = 2;
  double pack_scale = 1;       // global fill factor applied to every chart
  int verified_resolution = 0; // set after verify_injective passes
};

// Edges are unordered pairs of welded 3D vertex ids.
using EdgeKey = std::pair<int64_t, int64_t>;

// Maps positions equal within 1e-9 to a shared id; used only for
// adjacency, never to mutate vertex data.
std::vector<int64_t> weld_positions(const Mesh& mesh, double tolerance = 1e-9);

std::vector<std::vector<int>> connected_components(const Mesh& mesh);

std::set<EdgeKey> detect_seams(const Mesh& mesh, const std::vector<int>& component);
std::set<EdgeKey> detect_creases(const Mesh& mesh, const std::vector<int>& component);

ChartSet split_charts(const Mesh& mesh);

// Produces per-corner UVs for the given faces; returns 2 UVs per corner in
// face order, or nullopt to fall back to the built-in unwrapper.
using UnwrapHook =
    std::function<std::optional<std::vector<Vec2>>(const Mesh&, const std::vector<int>&)>;

// Gives every uncovered face generated UVs: by default each face becomes
// its own right-triangle chart with uv_area proportional to its 3D area.
// Mutates the mesh (appends UVs) and returns the extended chart set.
ChartSet unwrap_missing(Mesh& mesh, const ChartSet& charts,
                        const UnwrapHook* hook = nullptr);

struct CoverageReport {
  bool accepted = false;
  double manual_coverage = 0;
  double threshold = 0.8;
};
CoverageReport coverage_filter(const ChartSet& charts, double threshold = 0.8);

struct InjectivityConflict {
  int px = 0, py = 0;
  int face_a = 0, face_b = 0;
};
struct InjectivityResult {
  bool injective = true;
  std::vector<InjectivityConflict> conflicts;  // capped at 64 entries
};
// Rasterizes every chart at pixel centers; a pixel claimed by faces of two
// charts, or by two non-adjacent faces of one chart, is a conflict.
InjectivityResult verify_injective(const Mesh& mesh, const ChartSet& charts,
                                   int resolution);

void equal_area_rescale(ChartSet& charts);

// Deterministic shelf packing of chart boxes into [0,1]^2 with at least
// gutter_px separation at the target resolution. Throws MeshError
// ("atlas overflow") when charts cannot fit even after a 4x global shrink.
AtlasLayout pack_atlas(ChartSet charts, int resolution, int gutter_px = 2);

// Runs verify_injective on the packed layout and stamps the certificate
// encode_gim requires.
InjectivityResult verify_and_certify(const Mesh& mesh, AtlasLayout& layout);

// Debug visualization: how many chart triangles claim each pixel center.
// Values above 1 mark exactly the regions where the UV mapping is not
// injective (folds, overlapped islands).
std::vector<uint16_t> uv_access_heatmap(const Mesh& mesh, const ChartSet& charts,
                                        int resolution);

}  // namespace gim
