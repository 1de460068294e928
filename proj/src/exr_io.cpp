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

// Minimal OpenEXR 2.0 subset: uncompressed float scanlines, channels
// A/B/G/R. Enough to exchange our own geometry images without pulling in
// the OpenEXR library.

#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "gim/image_io.hpp"
#include "gim/mesh.hpp"

namespace gim {

namespace {

constexpr int32_t kMagic = 20000630;

void put_i32(std::string& out, int32_t v) { out.append(reinterpret_cast<char*>(&v), 4); }
void put_u64(std::string& out, uint64_t v) { out.append(reinterpret_cast<char*>(&v), 8); }
void put_f32(std::string& out, float v) { out.append(reinterpret_cast<char*>(&v), 4); }

void put_attr(std::string& out, const char* name, const char* type,
              const std::string& value) {
  out.append(name, std::strlen(name) + 1);
  out.append(type, std::strlen(type) + 1);
  put_i32(out, static_cast<int32_t>(value.size()));
  out += value;
}

struct Reader {
  const uint8_t* p;
  const uint8_t* end;
  void need(size_t n) const {
    if (p + n > end) throw MeshError("EXR: truncated file");
  }
  int32_t i32() {
    need(4);
    int32_t v;
    std::memcpy(&v, p, 4);
    p += 4;
    return v;
  }
  uint64_t u64() {
    need(8);
    uint64_t v;
    std::memcpy(&v, p, 8);
    p += 8;
    return v;
  }
  std::string cstr() {
    const uint8_t* s = p;
    while (p < end && *p) p++;
    need(1);
    std::string out(reinterpret_cast<const char*>(s), static_cast<size_t>(p - s));
    p++;
    return out;
  }
  void skip(size_t n) {
    need(n);
    p += n;
  }
};

}  // namespace

void write_exr_rgba_f32(const std::string& path, int res,
                        const std::vector<float>& rgba) {
  std::string out;
  put_i32(out, kMagic);
  put_i32(out, 2);  // version, scanline file

  std::string chlist;
  for (const char* name : {"A", "B", "G", "R"}) {  // alphabetical, required
    chlist.append(name, std::strlen(name) + 1);
    put_i32(chlist, 2);  // FLOAT
    chlist.push_back(0); // pLinear
    chlist.append(3, '\0');
    put_i32(chlist, 1);  // xSampling
    put_i32(chlist, 1);  // ySampling
  }
  chlist.push_back(0);
  put_attr(out, "channels", "chlist", chlist);
  put_attr(out, "compression", "compression", std::string(1, '\0'));
  std::string box;
  put_i32(box, 0);
  put_i32(box, 0);
  put_i32(box, res - 1);
  put_i32(box, res - 1);
  put_attr(out, "dataWindow", "box2i", box);
  put_attr(out, "displayWindow", "box2i", box);
  put_attr(out, "lineOrder", "lineOrder", std::string(1, '\0'));
  std::string f1;
  put_f32(f1, 1.0f);
  put_attr(out, "pixelAspectRatio", "float", f1);
  std::string v2;
  put_f32(v2, 0.0f);
  put_f32(v2, 0.0f);
  put_attr(out, "screenWindowCenter", "v2f", v2);
  put_attr(out, "screenWindowWidth", "float", f1);
  out.push_back(0);  // end of header

  size_t data_bytes = static_cast<size_t>(res) * 4 * 4;  // 4 channels of float
  size_t chunk_bytes = 8 + data_bytes;                   // y + size + data
  uint64_t first_chunk = out.size() + static_cast<size_t>(res) * 8;
  for (int y = 0; y < res; y++) put_u64(out, first_chunk + chunk_bytes * y);

  std::vector<float> line(static_cast<size_t>(res) * 4);
  for (int y = 0; y < res; y++) {
    put_i32(out, y);
    put_i32(out, static_cast<int32_t>(data_bytes));
    // File scanlines run top-down; raster row 0 is at v = 0.
    const float* src = rgba.data() + static_cast<size_t>(res - 1 - y) * res * 4;
    for (int x = 0; x < res; x++) {
      line[x] = src[x * 4 + 3];                                  // A
      line[res + x] = src[x * 4 + 2];                            // B
      line[2 * static_cast<size_t>(res) + x] = src[x * 4 + 1];   // G
      line[3 * static_cast<size_t>(res) + x] = src[x * 4 + 0];   // R
    }
    out.append(reinterpret_cast<char*>(line.data()), data_bytes);
  }

  std::ofstream f(path, std::ios::binary);
  if (!f) throw MeshError("cannot write " + path);
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
}

std::vector<float> read_exr_rgba_f32(const std::string& path, int* res_out) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw MeshError("cannot read " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                             std::istreambuf_iterator<char>());
  Reader r{bytes.data(), bytes.data() + bytes.size()};
  if (r.i32() != kMagic) throw MeshError(path + ": not an EXR file");
  int32_t version = r.i32();
  if ((version & 0xFF) != 2 || (version & ~0xFFu & ~0u) != 0)
    if ((version & 0x200) != 0)  // tiled
      throw MeshError(path + ": unsupported EXR layout");

  int x_min = 0, y_min = 0, x_max = -1, y_max = -1;
  int num_channels = 0;
  bool uncompressed = false;
  while (true) {
    std::string name = r.cstr();
    if (name.empty()) break;
    std::string type = r.cstr();
    int32_t size = r.i32();
    const uint8_t* value = r.p;
    r.skip(static_cast<size_t>(size));
    if (name == "dataWindow" && type == "box2i" && size == 16) {
      std::memcpy(&x_min, value, 4);
      std::memcpy(&y_min, value + 4, 4);
      std::memcpy(&x_max, value + 8, 4);
      std::memcpy(&y_max, value + 12, 4);
    } else if (name == "compression" && size >= 1) {
      uncompressed = value[0] == 0;
    } else if (name == "channels" && type == "chlist") {
      Reader cr{value, value + size};
      while (cr.p < cr.end && *cr.p) {
        std::string cname = cr.cstr();
        int32_t ptype = cr.i32();
        cr.skip(4 + 8);
        if (ptype != 2) throw MeshError(path + ": only FLOAT channels supported");
        num_channels++;
        (void)cname;
      }
    }
  }
  if (!uncompressed) throw MeshError(path + ": only uncompressed EXR supported");
  if (num_channels != 4) throw MeshError(path + ": expected 4 channels");
  int width = x_max - x_min + 1, height = y_max - y_min + 1;
  if (width <= 0 || width != height) throw MeshError(path + ": expected square image");
  int res = width;
  *res_out = res;

  r.skip(static_cast<size_t>(res) * 8);  // offset table; chunks follow in order
  std::vector<float> rgba(static_cast<size_t>(res) * res * 4);
  size_t data_bytes = static_cast<size_t>(res) * 4 * 4;
  for (int i = 0; i < res; i++) {
    int32_t y = r.i32() - y_min;
    int32_t size = r.i32();
    if (size != static_cast<int32_t>(data_bytes) || y < 0 || y >= res)
      throw MeshError(path + ": bad scanline chunk");
    r.need(data_bytes);
    const float* line = reinterpret_cast<const float*>(r.p);
    float* dst = rgba.data() + static_cast<size_t>(res - 1 - y) * res * 4;
    for (int x = 0; x < res; x++) {
      dst[x * 4 + 3] = line[x];                                  // A
      dst[x * 4 + 2] = line[res + x];                            // B
      dst[x * 4 + 1] = line[2 * static_cast<size_t>(res) + x];   // G
      dst[x * 4 + 0] = line[3 * static_cast<size_t>(res) + x];   // R
    }
    r.skip(data_bytes);
  }
  return rgba;
}

}  // namespace gim
