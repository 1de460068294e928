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

#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gim/vec.hpp"

namespace gim {

enum class UvProvenance : uint8_t { manual, generated, absent };

// Albedo raster attached to a mesh. 8-bit RGB, row 0 at v = 0.
struct Texture {
  int width = 0, height = 0;
  std::vector<uint8_t> rgb;  // width*height*3
  bool empty() const { return rgb.empty(); }
};

struct Face {
  std::array<int, 3> pos{};  // position indices
  std::array<int, 3> uv{};   // uv indices, -1 when absent
  UvProvenance provenance = UvProvenance::absent;
  bool has_uv() const { return uv[0] >= 0 && uv[1] >= 0 && uv[2] >= 0; }
};

// Indexed triangle mesh with per-corner UVs. Corners with distinct UVs at
// the same 3D location are kept distinct; they are the seam evidence the
// atlas analysis relies on.
struct Mesh {
  std::vector<Vec3> positions;
  std::vector<Vec2> uvs;
  std::vector<Face> faces;
  std::optional<Texture> texture;

  Box3 bounds() const {
    Box3 b;
    for (const auto& p : positions) b.expand(p);
    return b;
  }
  double surface_area() const {
    double a = 0;
    for (const auto& f : faces)
      a += triangle_area(positions[f.pos[0]], positions[f.pos[1]], positions[f.pos[2]]);
    return a;
  }
};

struct NormalizationParams {
  Vec3 center{0, 0, 0};
  double scale = 1;  // model units per normalized unit
  Vec3 to_normalized(const Vec3& p) const { return (p - center) / scale; }
  Vec3 to_model(const Vec3& p) const { return p * scale + center; }
};

struct LoadReport {
  size_t vertex_count = 0;
  size_t uv_count = 0;
  size_t face_count = 0;
  size_t faces_without_uv = 0;
  size_t degenerate_faces_removed = 0;
  size_t skipped_primitives = 0;  // points/lines
  size_t uvs_wrapped = 0;
  bool texture_missing = false;
  bool multi_texture = false;  // kept largest-coverage texture only
  std::string material_lib;    // OBJ mtllib reference, unresolved
  std::vector<std::string> warnings;
};

enum class MeshFormat { OBJ, GLTF };

struct ParseError {
  std::string message;
  size_t byte_offset = 0;
};

class MeshError : public std::exception {
 public:
  explicit MeshError(std::string msg) : msg_(std::move(msg)) {}
  const char* what() const noexcept override { return msg_.c_str(); }

 private:
  std::string msg_;
};

// Loaders preserve per-corner UVs exactly as authored. Degenerate faces are
// dropped and counted; UVs outside [0,1] are wrapped per component.
std::pair<Mesh, LoadReport> load_mesh(std::istream& source, MeshFormat format);
std::pair<Mesh, LoadReport> load_mesh_file(const std::string& path);

std::pair<Mesh, NormalizationParams> normalize_mesh(Mesh mesh);

void save_mesh_obj(const Mesh& mesh, std::ostream& out,
                   const std::string& mtl_name = "");
std::string save_mesh_obj(const Mesh& mesh);

// Internal entry points, exposed for the format-specific tests.
std::pair<Mesh, LoadReport> load_obj(std::istream& in);
std::pair<Mesh, LoadReport> load_gltf(std::istream& in);
// base_dir resolves relative buffer/image URIs.
std::pair<Mesh, LoadReport> load_gltf_data(const std::vector<uint8_t>& bytes,
                                           const std::string& base_dir);

// Shared load-time cleanup: drop zero-area faces, wrap out-of-range UVs.
void cleanup_mesh(Mesh& mesh, LoadReport& report);

}  // namespace gim
