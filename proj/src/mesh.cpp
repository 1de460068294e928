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

#include "gim/mesh.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gim/image_io.hpp"

namespace gim {

namespace {

// Resolves the first map_Kd of an OBJ material library into the mesh's
// albedo texture; failures downgrade to a warning.
void resolve_obj_material(const std::string& dir, Mesh& mesh, LoadReport& report) {
  std::ifstream mtl(dir + report.material_lib);
  if (!mtl) {
    report.texture_missing = true;
    report.warnings.push_back("material library not found: " + report.material_lib);
    return;
  }
  std::string word;
  while (mtl >> word) {
    if (word == "map_Kd") {
      std::string file;
      std::getline(mtl, file);
      size_t start = file.find_first_not_of(" \t");
      size_t end = file.find_last_not_of(" \t\r");
      if (start == std::string::npos) break;
      file = file.substr(start, end - start + 1);
      try {
        mesh.texture = load_texture_file(dir + file);
      } catch (const std::exception& e) {
        report.texture_missing = true;
        report.warnings.push_back(std::string("texture unavailable: ") + e.what());
      }
      return;
    }
    mtl.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
  }
}

}  // namespace

void cleanup_mesh(Mesh& mesh, LoadReport& report) {
  Box3 b = mesh.bounds();
  double diag_sq = b.valid() ? length_sq(b.extent()) : 0;
  // Zero-area faces cannot be rasterized or triangulated; drop them.
  double area_eps = 1e-12 * diag_sq;
  std::vector<Face> kept;
  kept.reserve(mesh.faces.size());
  for (const auto& f : mesh.faces) {
    bool degenerate = f.pos[0] == f.pos[1] || f.pos[1] == f.pos[2] || f.pos[0] == f.pos[2];
    if (!degenerate) {
      double area = triangle_area(mesh.positions[f.pos[0]], mesh.positions[f.pos[1]],
                                  mesh.positions[f.pos[2]]);
      degenerate = area <= area_eps;
    }
    if (degenerate) {
      report.degenerate_faces_removed++;
    } else {
      kept.push_back(f);
    }
  }
  mesh.faces = std::move(kept);

  // Tiling UVs wrap into [0,1); coordinates already inside [0,1] stay put.
  for (auto& uv : mesh.uvs) {
    bool out = uv.x < 0 || uv.x > 1 || uv.y < 0 || uv.y > 1;
    if (out) {
      uv.x -= std::floor(uv.x);
      uv.y -= std::floor(uv.y);
      report.uvs_wrapped++;
    }
  }

  report.vertex_count = mesh.positions.size();
  report.uv_count = mesh.uvs.size();
  report.face_count = mesh.faces.size();
  report.faces_without_uv = 0;
  for (const auto& f : mesh.faces)
    if (f.provenance == UvProvenance::absent) report.faces_without_uv++;
}

std::pair<Mesh, LoadReport> load_mesh(std::istream& source, MeshFormat format) {
  switch (format) {
    case MeshFormat::OBJ:
      return load_obj(source);
    case MeshFormat::GLTF:
      return load_gltf(source);
  }
  throw MeshError("unknown mesh format");
}

std::pair<Mesh, LoadReport> load_mesh_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MeshError("cannot open " + path);
  auto dot = path.find_last_of('.');
  std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  for (auto& c : ext) c = static_cast<char>(std::tolower(c));
  if (ext == "gltf" || ext == "glb") {
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                               std::istreambuf_iterator<char>());
    auto slash = path.find_last_of("/\\");
    std::string dir = slash == std::string::npos ? "" : path.substr(0, slash);
    return load_gltf_data(bytes, dir);
  }
  auto result = load_mesh(in, MeshFormat::OBJ);
  if (!result.first.texture && !result.second.material_lib.empty()) {
    auto slash = path.find_last_of("/\\");
    std::string dir = slash == std::string::npos ? "" : path.substr(0, slash + 1);
    resolve_obj_material(dir, result.first, result.second);
  }
  return result;
}

std::pair<Mesh, NormalizationParams> normalize_mesh(Mesh mesh) {
  if (mesh.faces.empty()) throw MeshError("no geometry");
  Box3 b;
  for (const auto& f : mesh.faces)
    for (int c = 0; c < 3; c++) b.expand(mesh.positions[f.pos[c]]);
  Vec3 ext = b.extent();
  double longest = std::max({ext.x, ext.y, ext.z});
  if (longest <= 0) throw MeshError("no geometry");
  NormalizationParams params;
  params.center = b.center();
  params.scale = longest * 0.5;
  for (auto& p : mesh.positions) p = params.to_normalized(p);
  return {std::move(mesh), params};
}

void save_mesh_obj(const Mesh& mesh, std::ostream& out, const std::string& mtl_name) {
  char buf[128];
  if (!mtl_name.empty()) {
    out << "mtllib " << mtl_name << ".mtl\nusemtl " << mtl_name << "\n";
  }
  for (const auto& p : mesh.positions) {
    std::snprintf(buf, sizeof(buf), "v %.9g %.9g %.9g\n", p.x, p.y, p.z);
    out << buf;
  }
  for (const auto& uv : mesh.uvs) {
    std::snprintf(buf, sizeof(buf), "vt %.9g %.9g\n", uv.x, uv.y);
    out << buf;
  }
  for (const auto& f : mesh.faces) {
    if (f.has_uv()) {
      std::snprintf(buf, sizeof(buf), "f %d/%d %d/%d %d/%d\n", f.pos[0] + 1,
                    f.uv[0] + 1, f.pos[1] + 1, f.uv[1] + 1, f.pos[2] + 1, f.uv[2] + 1);
    } else {
      std::snprintf(buf, sizeof(buf), "f %d %d %d\n", f.pos[0] + 1, f.pos[1] + 1,
                    f.pos[2] + 1);
    }
    out << buf;
  }
}

std::string save_mesh_obj(const Mesh& mesh) {
  std::ostringstream out;
  save_mesh_obj(mesh, out);
  return out.str();
}

}  // namespace gim
