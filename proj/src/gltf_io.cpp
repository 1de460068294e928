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

// glTF 2.0 reader: GLB and JSON containers, POSITION/TEXCOORD_0
// attributes, node transforms, and the first material's base-color
// texture as albedo. Multi-material meshes keep a single texture: the one
// covering the largest surface area (flagged in the report) unless all
// primitives already reference the same image.

#include <array>
#include <cstring>
#include <fstream>
#include <unordered_map>

#include <json.hpp>

#include "gim/image_io.hpp"
#include "gim/mesh.hpp"

namespace gim {

namespace {

using json = nlohmann::json;

using Mat4 = std::array<double, 16>;  // column-major

Mat4 identity() {
  return {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1};
}

Mat4 multiply(const Mat4& a, const Mat4& b) {
  Mat4 out{};
  for (int c = 0; c < 4; c++)
    for (int r = 0; r < 4; r++)
      for (int k = 0; k < 4; k++) out[c * 4 + r] += a[k * 4 + r] * b[c * 4 + k];
  return out;
}

Vec3 transform_point(const Mat4& m, const Vec3& p) {
  return {m[0] * p.x + m[4] * p.y + m[8] * p.z + m[12],
          m[1] * p.x + m[5] * p.y + m[9] * p.z + m[13],
          m[2] * p.x + m[6] * p.y + m[10] * p.z + m[14]};
}

Mat4 node_matrix(const json& node) {
  if (node.contains("matrix")) {
    Mat4 m;
    for (int i = 0; i < 16; i++) m[i] = node["matrix"][i].get<double>();
    return m;
  }
  Vec3 t{0, 0, 0}, s{1, 1, 1};
  double q[4] = {0, 0, 0, 1};  // x y z w
  if (node.contains("translation")) {
    t = {node["translation"][0], node["translation"][1], node["translation"][2]};
  }
  if (node.contains("scale")) {
    s = {node["scale"][0], node["scale"][1], node["scale"][2]};
  }
  if (node.contains("rotation")) {
    for (int i = 0; i < 4; i++) q[i] = node["rotation"][i].get<double>();
  }
  double x = q[0], y = q[1], z = q[2], w = q[3];
  Mat4 m = identity();
  m[0] = (1 - 2 * (y * y + z * z)) * s.x;
  m[1] = (2 * (x * y + z * w)) * s.x;
  m[2] = (2 * (x * z - y * w)) * s.x;
  m[4] = (2 * (x * y - z * w)) * s.y;
  m[5] = (1 - 2 * (x * x + z * z)) * s.y;
  m[6] = (2 * (y * z + x * w)) * s.y;
  m[8] = (2 * (x * z + y * w)) * s.z;
  m[9] = (2 * (y * z - x * w)) * s.z;
  m[10] = (1 - 2 * (x * x + y * y)) * s.z;
  m[12] = t.x;
  m[13] = t.y;
  m[14] = t.z;
  return m;
}

std::vector<uint8_t> decode_base64(std::string_view text) {
  auto value = [](char c) -> int {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= 'a' && c <= 'z') return c - 'a' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '/') return 63;
    return -1;
  };
  std::vector<uint8_t> out;
  out.reserve(text.size() * 3 / 4);
  int acc = 0, bits = 0;
  for (char c : text) {
    int v = value(c);
    if (v < 0) continue;  // padding / whitespace
    acc = (acc << 6) | v;
    bits += 6;
    if (bits >= 8) {
      bits -= 8;
      out.push_back(static_cast<uint8_t>((acc >> bits) & 0xFF));
    }
  }
  return out;
}

struct GltfData {
  json doc;
  std::vector<std::vector<uint8_t>> buffers;
  std::string base_dir;
  LoadReport* report;

  std::vector<uint8_t> load_uri(const std::string& uri) const {
    constexpr std::string_view kData = "data:";
    if (uri.rfind(kData, 0) == 0) {
      auto comma = uri.find(',');
      if (comma == std::string::npos) throw MeshError("glTF: malformed data URI");
      return decode_base64(std::string_view(uri).substr(comma + 1));
    }
    std::string path = base_dir.empty() ? uri : base_dir + "/" + uri;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MeshError("glTF: cannot open buffer " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }

  struct View {
    const uint8_t* data;
    size_t stride;
    size_t count;
    int component;  // glTF componentType
    int dims;       // components per element
    bool normalized;
  };

  View accessor(int index) const {
    const json& acc = doc.at("accessors").at(index);
    if (acc.contains("sparse")) throw MeshError("glTF: sparse accessors unsupported");
    static const std::unordered_map<std::string, int> kDims = {
        {"SCALAR", 1}, {"VEC2", 2}, {"VEC3", 3}, {"VEC4", 4}};
    View v{};
    v.count = acc.at("count").get<size_t>();
    v.component = acc.at("componentType").get<int>();
    v.dims = kDims.at(acc.at("type").get<std::string>());
    v.normalized = acc.value("normalized", false);
    int comp_size = v.component == 5126 || v.component == 5125 ? 4
                    : v.component == 5122 || v.component == 5123 ? 2
                                                                 : 1;
    size_t offset = acc.value("byteOffset", size_t{0});
    const json& bv = doc.at("bufferViews").at(acc.at("bufferView").get<int>());
    size_t view_offset = bv.value("byteOffset", size_t{0});
    int buffer = bv.at("buffer").get<int>();
    v.stride = bv.value("byteStride", size_t{0});
    if (v.stride == 0) v.stride = static_cast<size_t>(comp_size) * v.dims;
    const auto& bytes = buffers.at(buffer);
    size_t need = view_offset + offset + (v.count ? (v.count - 1) * v.stride +
                                                        comp_size * v.dims
                                                  : 0);
    if (need > bytes.size()) throw MeshError("glTF: accessor out of buffer bounds");
    v.data = bytes.data() + view_offset + offset;
    return v;
  }

  double read_component(const View& v, size_t elem, int c) const {
    const uint8_t* p = v.data + elem * v.stride;
    switch (v.component) {
      case 5126: {  // float
        float f;
        std::memcpy(&f, p + c * 4, 4);
        return f;
      }
      case 5125: {  // uint32
        uint32_t u;
        std::memcpy(&u, p + c * 4, 4);
        return u;
      }
      case 5123: {  // uint16
        uint16_t u;
        std::memcpy(&u, p + c * 2, 2);
        return v.normalized ? u / 65535.0 : u;
      }
      case 5121:  // uint8
        return v.normalized ? p[c] / 255.0 : p[c];
      case 5122: {  // int16
        int16_t s;
        std::memcpy(&s, p + c * 2, 2);
        return s;
      }
      case 5120:  // int8
        return static_cast<int8_t>(p[c]);
      default:
        throw MeshError("glTF: unsupported component type");
    }
  }
};

// Base-color image index for a primitive's material, or -1.
int base_color_image(const json& doc, const json& prim) {
  if (!prim.contains("material")) return -1;
  const json& mat = doc.at("materials").at(prim["material"].get<int>());
  if (!mat.contains("pbrMetallicRoughness")) return -1;
  const json& pbr = mat["pbrMetallicRoughness"];
  if (!pbr.contains("baseColorTexture")) return -1;
  int tex = pbr["baseColorTexture"].value("index", -1);
  if (tex < 0 || !doc.contains("textures")) return -1;
  const json& texture = doc.at("textures").at(tex);
  return texture.value("source", -1);
}

}  // namespace

std::pair<Mesh, LoadReport> load_gltf_data(const std::vector<uint8_t>& raw,
                                           const std::string& base_dir) {
  Mesh mesh;
  LoadReport report;
  GltfData g;
  g.base_dir = base_dir;
  g.report = &report;

  const std::vector<uint8_t>* glb_bin = nullptr;
  std::vector<uint8_t> glb_bin_storage;
  if (raw.size() >= 12 && std::memcmp(raw.data(), "glTF", 4) == 0) {
    uint32_t total;
    std::memcpy(&total, raw.data() + 8, 4);
    size_t off = 12;
    std::string json_text;
    while (off + 8 <= raw.size() && off < total) {
      uint32_t len, type;
      std::memcpy(&len, raw.data() + off, 4);
      std::memcpy(&type, raw.data() + off + 4, 4);
      off += 8;
      if (off + len > raw.size()) throw MeshError("glTF: truncated GLB chunk");
      if (type == 0x4E4F534A)  // "JSON"
        json_text.assign(reinterpret_cast<const char*>(raw.data() + off), len);
      else if (type == 0x004E4942)  // "BIN"
        glb_bin_storage.assign(raw.data() + off, raw.data() + off + len);
      off += len;
    }
    if (json_text.empty()) throw MeshError("glTF: GLB without JSON chunk");
    glb_bin = &glb_bin_storage;
    try {
      g.doc = json::parse(json_text);
    } catch (const json::exception& e) {
      throw MeshError(std::string("glTF: JSON parse error: ") + e.what());
    }
  } else {
    try {
      g.doc = json::parse(raw.begin(), raw.end());
    } catch (const json::exception& e) {
      throw MeshError(std::string("glTF: JSON parse error at byte ") +
                      std::to_string(e.id) + ": " + e.what());
    }
  }

  if (g.doc.contains("buffers")) {
    for (const auto& buf : g.doc["buffers"]) {
      if (buf.contains("uri")) {
        g.buffers.push_back(g.load_uri(buf["uri"].get<std::string>()));
      } else if (glb_bin) {
        g.buffers.push_back(*glb_bin);
      } else {
        throw MeshError("glTF: buffer without uri outside GLB");
      }
    }
  }

  struct Instance {
    int mesh_index;
    Mat4 matrix;
  };
  std::vector<Instance> instances;
  if (g.doc.contains("scenes")) {
    int scene_index = g.doc.value("scene", 0);
    const json& scene = g.doc["scenes"].at(scene_index);
    std::vector<std::pair<int, Mat4>> stack;
    if (scene.contains("nodes"))
      for (int n : scene["nodes"]) stack.push_back({n, identity()});
    while (!stack.empty()) {
      auto [ni, parent] = stack.back();
      stack.pop_back();
      const json& node = g.doc["nodes"].at(ni);
      Mat4 m = multiply(parent, node_matrix(node));
      if (node.contains("mesh")) instances.push_back({node["mesh"].get<int>(), m});
      if (node.contains("children"))
        for (int c : node["children"]) stack.push_back({c, m});
    }
  } else if (g.doc.contains("meshes")) {
    for (size_t i = 0; i < g.doc["meshes"].size(); i++)
      instances.push_back({static_cast<int>(i), identity()});
  }

  // image index -> accumulated 3D area of the primitives that use it
  std::unordered_map<int, double> image_area;
  // face ranges per image, in case the largest-coverage texture wins
  std::vector<int> face_image;

  for (const auto& inst : instances) {
    const json& gltf_mesh = g.doc.at("meshes").at(inst.mesh_index);
    for (const auto& prim : gltf_mesh.at("primitives")) {
      int mode = prim.value("mode", 4);
      if (mode != 4) {
        report.skipped_primitives++;
        continue;
      }
      const json& attrs = prim.at("attributes");
      if (!attrs.contains("POSITION")) continue;
      auto pos = g.accessor(attrs["POSITION"].get<int>());
      bool has_uv = attrs.contains("TEXCOORD_0");
      int pos_base = static_cast<int>(mesh.positions.size());
      int uv_base = static_cast<int>(mesh.uvs.size());
      for (size_t i = 0; i < pos.count; i++) {
        Vec3 p{g.read_component(pos, i, 0), g.read_component(pos, i, 1),
               g.read_component(pos, i, 2)};
        mesh.positions.push_back(transform_point(inst.matrix, p));
      }
      if (has_uv) {
        auto uv = g.accessor(attrs["TEXCOORD_0"].get<int>());
        if (uv.count != pos.count) throw MeshError("glTF: TEXCOORD_0 count mismatch");
        for (size_t i = 0; i < uv.count; i++) {
          // glTF v runs top-down; flip into the v-up convention.
          mesh.uvs.push_back(
              {g.read_component(uv, i, 0), 1.0 - g.read_component(uv, i, 1)});
        }
      }

      std::vector<uint32_t> indices;
      if (prim.contains("indices")) {
        auto idx = g.accessor(prim["indices"].get<int>());
        indices.reserve(idx.count);
        for (size_t i = 0; i < idx.count; i++)
          indices.push_back(static_cast<uint32_t>(g.read_component(idx, i, 0)));
      } else {
        indices.resize(pos.count);
        for (size_t i = 0; i < pos.count; i++) indices[i] = static_cast<uint32_t>(i);
      }
      if (indices.size() % 3 != 0) throw MeshError("glTF: triangle index count not divisible by 3");

      int image = base_color_image(g.doc, prim);
      double prim_area = 0;
      for (size_t i = 0; i + 2 < indices.size(); i += 3) {
        Face f;
        for (int c = 0; c < 3; c++) {
          uint32_t vi = indices[i + c];
          if (vi >= pos.count) throw MeshError("glTF: index out of range");
          f.pos[c] = pos_base + static_cast<int>(vi);
          f.uv[c] = has_uv ? uv_base + static_cast<int>(vi) : -1;
        }
        f.provenance = has_uv ? UvProvenance::manual : UvProvenance::absent;
        prim_area += triangle_area(mesh.positions[f.pos[0]], mesh.positions[f.pos[1]],
                                   mesh.positions[f.pos[2]]);
        mesh.faces.push_back(f);
        face_image.push_back(image);
      }
      if (image >= 0) image_area[image] += prim_area;
    }
  }

  // Pick the albedo image: unanimous, or largest covered area (flagged).
  int chosen = -1;
  if (!image_area.empty()) {
    double best = -1;
    for (auto [img, area] : image_area) {
      if (area > best || (area == best && img < chosen)) {
        best = area;
        chosen = img;
      }
    }
    if (image_area.size() > 1) {
      report.multi_texture = true;
      report.warnings.push_back("multiple base-color textures; kept largest coverage");
    }
  }
  if (chosen >= 0) {
    try {
      const json& img = g.doc.at("images").at(chosen);
      std::vector<uint8_t> data;
      if (img.contains("bufferView")) {
        const json& bv = g.doc.at("bufferViews").at(img["bufferView"].get<int>());
        size_t off = bv.value("byteOffset", size_t{0});
        size_t len = bv.at("byteLength").get<size_t>();
        const auto& bytes = g.buffers.at(bv.at("buffer").get<int>());
        if (off + len > bytes.size()) throw MeshError("glTF: image out of bounds");
        data.assign(bytes.begin() + off, bytes.begin() + off + len);
      } else if (img.contains("uri")) {
        data = g.load_uri(img["uri"].get<std::string>());
      }
      if (!data.empty()) mesh.texture = decode_texture(data.data(), data.size());
    } catch (const std::exception& e) {
      report.texture_missing = true;
      report.warnings.push_back(std::string("texture unavailable: ") + e.what());
    }
  } else if (!image_area.empty()) {
    report.texture_missing = true;
  }

  cleanup_mesh(mesh, report);
  return {std::move(mesh), std::move(report)};
}

std::pair<Mesh, LoadReport> load_gltf(std::istream& in) {
  std::vector<uint8_t> raw((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());
  return load_gltf_data(raw, "");
}

}  // namespace gim
