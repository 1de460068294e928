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

// Wavefront OBJ reader. Handles v/vt/f records, negative indices, and
// polygon fan triangulation. Normal indices (f a/b/c) are parsed and
// discarded.

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <string>

#include "gim/mesh.hpp"

namespace gim {

namespace {

struct Cursor {
  const char* p;
  const char* end;
  const char* begin;
  size_t offset() const { return static_cast<size_t>(p - begin); }
  bool done() const { return p >= end; }
};

void skip_blanks(Cursor& c) {
  while (!c.done() && (*c.p == ' ' || *c.p == '\t' || *c.p == '\r')) c.p++;
}

void skip_line(Cursor& c) {
  while (!c.done() && *c.p != '\n') c.p++;
  if (!c.done()) c.p++;
}

[[noreturn]] void fail(const Cursor& c, const std::string& what) {
  throw MeshError("OBJ parse error at byte " + std::to_string(c.offset()) + ": " + what);
}

double parse_double(Cursor& c) {
  skip_blanks(c);
  char* endp = nullptr;
  double v = std::strtod(c.p, &endp);
  if (endp == c.p) fail(c, "expected number");
  c.p = endp;
  return v;
}

// OBJ index: 1-based, negative counts from the end of the current list.
int resolve_index(long raw, size_t count, const Cursor& c) {
  long idx = raw > 0 ? raw - 1 : static_cast<long>(count) + raw;
  if (idx < 0 || idx >= static_cast<long>(count)) fail(c, "index out of range");
  return static_cast<int>(idx);
}

}  // namespace

std::pair<Mesh, LoadReport> load_obj(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  Mesh mesh;
  LoadReport report;
  Cursor c{text.data(), text.data() + text.size(), text.data()};

  while (!c.done()) {
    skip_blanks(c);
    if (c.done()) break;
    if (*c.p == '\n') { c.p++; continue; }
    if (*c.p == '#') { skip_line(c); continue; }

    const char* key = c.p;
    while (!c.done() && !std::isspace(static_cast<unsigned char>(*c.p))) c.p++;
    std::string_view kw(key, static_cast<size_t>(c.p - key));

    if (kw == "v") {
      double x = parse_double(c), y = parse_double(c), z = parse_double(c);
      mesh.positions.push_back({x, y, z});
      skip_line(c);
    } else if (kw == "vt") {
      double u = parse_double(c), v = parse_double(c);
      mesh.uvs.push_back({u, v});
      skip_line(c);
    } else if (kw == "f") {
      // Corners: pos[/uv[/n]]; polygons fan-triangulate.
      std::vector<std::pair<int, int>> corners;  // (pos, uv or -1)
      while (true) {
        skip_blanks(c);
        if (c.done() || *c.p == '\n' || *c.p == '#') break;
        char* endp = nullptr;
        long pi = std::strtol(c.p, &endp, 10);
        if (endp == c.p) fail(c, "expected face index");
        c.p = endp;
        int pos = resolve_index(pi, mesh.positions.size(), c);
        int uv = -1;
        if (!c.done() && *c.p == '/') {
          c.p++;
          if (!c.done() && *c.p != '/') {
            long ti = std::strtol(c.p, &endp, 10);
            if (endp == c.p) fail(c, "expected uv index");
            c.p = endp;
            uv = resolve_index(ti, mesh.uvs.size(), c);
          }
          if (!c.done() && *c.p == '/') {  // normal index, ignored
            c.p++;
            std::strtol(c.p, &endp, 10);
            c.p = endp;
          }
        }
        corners.emplace_back(pos, uv);
      }
      if (corners.size() < 3) fail(c, "face with fewer than 3 corners");
      for (size_t i = 2; i < corners.size(); i++) {
        Face f;
        f.pos = {corners[0].first, corners[i - 1].first, corners[i].first};
        f.uv = {corners[0].second, corners[i - 1].second, corners[i].second};
        f.provenance = f.has_uv() ? UvProvenance::manual : UvProvenance::absent;
        if (!f.has_uv()) f.uv = {-1, -1, -1};
        mesh.faces.push_back(f);
      }
      skip_line(c);
    } else if (kw == "p" || kw == "l") {
      report.skipped_primitives++;
      skip_line(c);
    } else if (kw == "mtllib") {
      skip_blanks(c);
      const char* start = c.p;
      while (!c.done() && *c.p != '\n' && *c.p != '\r') c.p++;
      if (report.material_lib.empty())
        report.material_lib.assign(start, static_cast<size_t>(c.p - start));
      skip_line(c);
    } else {
      // usemtl/o/g/s/vn and anything else: not mesh data we keep.
      skip_line(c);
    }
  }

  cleanup_mesh(mesh, report);
  return {std::move(mesh), std::move(report)};
}

}  // namespace gim
