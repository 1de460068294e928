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

// Synthetic fixture corpus. Each constructor doubles as the oracle for the
// structure it builds (seam edges, chart counts, island layouts).

#pragma once

#include <string>
#include <vector>

#include "gim/atlas.hpp"
#include "gim/mesh.hpp"

namespace fixtures {

// Single right triangle whose positions equal the UVs lifted to z = 0.
gim::Mesh single_triangle();

// Axis-aligned cube spanning [lo, hi]^3 with 6 independent UV islands:
// 8 positions, 24 UVs, 12 faces.
gim::Mesh cube(double lo = -1, double hi = 1);

// OBJ text of the cube fixture (8 v / 24 vt / 12 f records).
std::string cube_obj_text();

// Open tube around Y with one vertical UV cut; the returned edges are the
// seam (welded vertex id pairs) the cut creates.
struct CylinderFixture {
  gim::Mesh mesh;
  std::vector<gim::EdgeKey> cut_edges;
};
CylinderFixture cylinder_cut(int segments = 48, int rows = 12);

// Unit sphere as 8 octant charts under a per-octant area-preserving
// (Lambert) parameterization.
gim::Mesh sphere8(int lon_steps = 12, int lat_steps = 12);

// Strip of 4 triangles whose UVs mirror at the midline; the fold edge is
// returned. Splits into 2 charts of 2 faces.
struct StripFixture {
  gim::Mesh mesh;
  gim::EdgeKey fold_edge;
};
StripFixture mirrored_strip();

// 7-vertex dome whose right half UVs are reflected across a line of three
// shared vertices, so the UV mapping doubles back there: exactly the two
// returned edges are creases.
struct FoldedFanFixture {
  gim::Mesh mesh;
  std::vector<gim::EdgeKey> crease_edges;
};
FoldedFanFixture folded_fan();

// Torus with two seam loops; unwraps to a single rectangular chart.
gim::Mesh torus(int major_steps = 48, int minor_steps = 24, double R = 0.65,
                double r = 0.3);

// Six disjoint boxes (torso, head, arms, legs), each unwrapped as one
// cross-shaped island: 6 components, 6 charts.
gim::Mesh articulated_figure();

// Flat grid, one consistent chart.
gim::Mesh plane_grid(int n = 8);

// Cube with the UVs of `sides_without_uv` full sides (2 faces each)
// removed; missing area fraction = sides/6.
gim::Mesh cube_missing(int sides_without_uv);

// 1x1x4 box with one square cap's UVs removed (~11% of area).
gim::Mesh box_missing_cap();

// Checkerboard texture (cell = 1 texel).
gim::Texture checker_texture(int w, int h);
// Constant-color texture.
gim::Texture solid_texture(int w, int h, uint8_t r, uint8_t g, uint8_t b);

// Welded-id edge key for two positions of a mesh (test convenience).
gim::EdgeKey edge_key(const gim::Mesh& mesh, int pos_a, int pos_b);

// The acceptance corpus: >= 10 meshes exercising every fixture family.
struct CorpusEntry {
  std::string name;
  gim::Mesh mesh;
  bool passes_coverage;  // manual coverage >= 0.8
};
std::vector<CorpusEntry> corpus();

}  // namespace fixtures
