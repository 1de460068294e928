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

#include "gim/geometry_image.hpp"

#include <algorithm>
#include <cmath>

#include "gim/kernels.hpp"
#include "raster.hpp"

namespace gim {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

kernels::CylSetup make_setup(const CylindricalParams& p, double theta_offset) {
  kernels::CylSetup s;
  s.r_max = p.r_max;
  s.inv_r_max = 1.0 / p.r_max;
  s.h_min = p.h_min;
  s.h_range = p.h_max - p.h_min;
  s.inv_h_range = 1.0 / s.h_range;
  s.theta_offset = theta_offset;
  return s;
}

}  // namespace

size_t GeometryImage::valid_pixels() const {
  return kernels::active().mask_popcount(mask.data(), mask.size());
}

Vec3 to_cylindrical(const Vec3& p, const CylindricalParams& params,
                    double theta_offset) {
  auto setup = make_setup(params, theta_offset);
  double r, t, h;
  kernels::active().cart_to_cyl(setup, 1, &p.x, &p.y, &p.z, &r, &t, &h);
  return {r, t, h};
}

Vec3 from_cylindrical(const Vec3& rth, const CylindricalParams& params,
                      double theta_offset) {
  auto setup = make_setup(params, theta_offset);
  double x, y, z;
  kernels::active().cyl_to_cart(setup, 1, &rth.x, &rth.y, &rth.z, &x, &y, &z);
  return {x, y, z};
}

CylindricalParams compute_cylindrical_params(const Mesh& mesh) {
  CylindricalParams p;
  double r_max = 0, y_min = 1e300, y_max = -1e300;
  for (const auto& f : mesh.faces) {
    for (int c = 0; c < 3; c++) {
      const Vec3& v = mesh.positions[f.pos[c]];
      r_max = std::max(r_max, std::sqrt(v.x * v.x + v.z * v.z));
      y_min = std::min(y_min, v.y);
      y_max = std::max(y_max, v.y);
    }
  }
  p.r_max = r_max > 0 ? r_max : 1;
  p.h_min = y_min <= y_max ? y_min : -1;
  p.h_max = y_max > y_min ? y_max : p.h_min + 1;
  return p;
}

ThetaOffsetInfo chart_theta_offset(const Mesh& mesh, const Chart& chart) {
  ThetaOffsetInfo info;
  std::vector<double> azimuths;
  double sum_sin = 0, sum_cos = 0;
  for (int f : chart.face_ids) {
    for (int c = 0; c < 3; c++) {
      const Vec3& p = mesh.positions[mesh.faces[f].pos[c]];
      double r2 = p.x * p.x + p.z * p.z;
      if (r2 < 1e-24) continue;
      double a = std::atan2(p.z, p.x);
      azimuths.push_back(a);
      sum_sin += std::sin(a);
      sum_cos += std::cos(a);
    }
    // A face whose xz projection contains the axis (interior or edge
    // crossing, but not a mere vertex touch) sweeps the whole azimuth
    // range by itself.
    Vec2 q[3];
    for (int c = 0; c < 3; c++) {
      const Vec3& p = mesh.positions[mesh.faces[f].pos[c]];
      q[c] = {p.x, p.z};
    }
    double s[3];
    for (int e = 0; e < 3; e++)
      s[e] = cross(q[(e + 1) % 3] - q[e], Vec2{0, 0} - q[e]);
    int zeros = (s[0] == 0) + (s[1] == 0) + (s[2] == 0);
    bool nonneg = s[0] >= 0 && s[1] >= 0 && s[2] >= 0;
    bool nonpos = s[0] <= 0 && s[1] <= 0 && s[2] <= 0;
    if ((nonneg || nonpos) && zeros <= 1) info.full_turn = true;
  }
  if (azimuths.empty()) return info;
  double mean = std::atan2(sum_sin, sum_cos);
  // Offset centers the chart's azimuth range at theta^ = 0.5, away from
  // the 0/1 wrap.
  info.offset = mean - 3.141592653589793238462643383279;
  std::sort(azimuths.begin(), azimuths.end());
  double largest_gap = kTwoPi - (azimuths.back() - azimuths.front());
  for (size_t i = 1; i < azimuths.size(); i++)
    largest_gap = std::max(largest_gap, azimuths[i] - azimuths[i - 1]);
  if (largest_gap <= 1e-6) info.full_turn = true;
  return info;
}

GeometryImage encode_gim(const Mesh& mesh, const AtlasLayout& layout,
                         int resolution, GimEncoding encoding,
                         const NormalizationParams& norm) {
  if (layout.set.charts.empty()) throw MeshError("encode_gim: empty layout");
  if (layout.verified_resolution != resolution)
    throw MeshError("encode_gim: layout lacks an injectivity certificate at this resolution");

  GeometryImage gim;
  gim.resolution = resolution;
  gim.positions.assign(gim.pixel_count() * 3, 0.0);
  gim.mask.assign(gim.pixel_count(), 0);
  gim.chart_ids.assign(gim.pixel_count(), -1);
  gim.norm = norm;
  gim.cyl = compute_cylindrical_params(mesh);
  gim.captions = {};

  // Resolve the effective encoding: a chart whose azimuths span the full
  // turn cannot keep its theta range off the wrap, so the whole object
  // falls back to cartesian.
  std::vector<double> offsets(layout.set.charts.size(), 0.0);
  GimEncoding effective = encoding;
  if (encoding == GimEncoding::cylindrical) {
    for (size_t i = 0; i < layout.set.charts.size(); i++) {
      auto info = chart_theta_offset(mesh, layout.set.charts[i]);
      offsets[i] = info.offset;
      if (info.full_turn) {
        effective = GimEncoding::cartesian;
        gim.cylindrical_fallback = true;
      }
    }
  }
  gim.encoding = effective;

  raster::Scratch scratch;
  std::vector<std::vector<uint32_t>> chart_pixels(layout.set.charts.size());
  for (size_t ci = 0; ci < layout.set.charts.size(); ci++) {
    const Chart& chart = layout.set.charts[ci];
    auto& pixels = chart_pixels[ci];
    for (int f : chart.face_ids) {
      const Face& face = mesh.faces[f];
      Vec2 q[3];
      Vec3 attr[3];
      for (int c = 0; c < 3; c++) {
        q[c] = chart.transform.apply(mesh.uvs[face.uv[c]]) * resolution;
        attr[c] = mesh.positions[face.pos[c]];
      }
      raster::rasterize(q, attr, resolution, resolution, scratch,
                        [&](int ix, int iy, const Vec3& p) {
                          size_t idx = static_cast<size_t>(iy) * resolution + ix;
                          if (!gim.mask[idx]) pixels.push_back(static_cast<uint32_t>(idx));
                          gim.mask[idx] = 1;
                          gim.chart_ids[idx] = chart.id;
                          gim.positions[idx * 3 + 0] = p.x;
                          gim.positions[idx * 3 + 1] = p.y;
                          gim.positions[idx * 3 + 2] = p.z;
                        });
    }

    ChartRecord rec;
    rec.id = chart.id;
    rec.transform = chart.transform;
    rec.theta_offset = offsets[ci];
    rec.provenance = chart.provenance;
    Box2 atlas_box;
    atlas_box.expand(chart.transform.apply({chart.uv_bbox.lo.x, chart.uv_bbox.lo.y}));
    atlas_box.expand(chart.transform.apply({chart.uv_bbox.hi.x, chart.uv_bbox.lo.y}));
    atlas_box.expand(chart.transform.apply({chart.uv_bbox.lo.x, chart.uv_bbox.hi.y}));
    atlas_box.expand(chart.transform.apply({chart.uv_bbox.hi.x, chart.uv_bbox.hi.y}));
    rec.box_x = std::max(0, static_cast<int>(std::floor(atlas_box.lo.x * resolution)));
    rec.box_y = std::max(0, static_cast<int>(std::floor(atlas_box.lo.y * resolution)));
    int x1 = std::min(resolution, static_cast<int>(std::ceil(atlas_box.hi.x * resolution)));
    int y1 = std::min(resolution, static_cast<int>(std::ceil(atlas_box.hi.y * resolution)));
    rec.box_w = std::max(0, x1 - rec.box_x);
    rec.box_h = std::max(0, y1 - rec.box_y);
    gim.chart_table.push_back(rec);
  }

  // Second pass: transform the raw interpolated positions per encoding.
  std::vector<double> sx, sy, sz, r, t, h;
  for (size_t ci = 0; ci < layout.set.charts.size(); ci++) {
    const auto& pixels = chart_pixels[ci];
    if (pixels.empty()) continue;
    if (effective == GimEncoding::cartesian) {
      for (uint32_t idx : pixels) {
        for (int c = 0; c < 3; c++) {
          double v = (gim.positions[idx * 3 + c] + 1.0) * 0.5;
          gim.positions[idx * 3 + c] = std::min(1.0, std::max(0.0, v));
        }
      }
    } else {
      size_t n = pixels.size();
      sx.resize(n); sy.resize(n); sz.resize(n);
      r.resize(n); t.resize(n); h.resize(n);
      for (size_t i = 0; i < n; i++) {
        sx[i] = gim.positions[pixels[i] * 3 + 0];
        sy[i] = gim.positions[pixels[i] * 3 + 1];
        sz[i] = gim.positions[pixels[i] * 3 + 2];
      }
      auto setup = make_setup(gim.cyl, offsets[ci]);
      kernels::active().cart_to_cyl(setup, static_cast<int>(n), sx.data(), sy.data(),
                                    sz.data(), r.data(), t.data(), h.data());
      for (size_t i = 0; i < n; i++) {
        gim.positions[pixels[i] * 3 + 0] = std::min(1.0, r[i]);
        gim.positions[pixels[i] * 3 + 1] = t[i];
        gim.positions[pixels[i] * 3 + 2] = std::min(1.0, std::max(0.0, h[i]));
      }
    }
  }
  return gim;
}

AlbedoImage resample_albedo(const Mesh& mesh, const AtlasLayout& layout,
                            int resolution, double missing_fill) {
  AlbedoImage out;
  out.resolution = resolution;
  out.color.assign(static_cast<size_t>(resolution) * resolution * 3, 0.0);
  out.texture_missing = !mesh.texture || mesh.texture->empty();

  const Texture* tex = out.texture_missing ? nullptr : &*mesh.texture;
  raster::Scratch scratch;
  for (const auto& chart : layout.set.charts) {
    for (int f : chart.face_ids) {
      const Face& face = mesh.faces[f];
      Vec2 q[3];
      Vec3 attr[3] = {};
      for (int c = 0; c < 3; c++)
        q[c] = chart.transform.apply(mesh.uvs[face.uv[c]]) * resolution;
      raster::rasterize(q, attr, resolution, resolution, scratch,
                        [&](int ix, int iy, const Vec3&) {
        size_t idx = (static_cast<size_t>(iy) * resolution + ix) * 3;
        if (!tex) {
          out.color[idx] = out.color[idx + 1] = out.color[idx + 2] = missing_fill;
          return;
        }
        Vec2 atlas_uv{(ix + 0.5) / resolution, (iy + 0.5) / resolution};
        Vec2 uv = chart.transform.invert(atlas_uv);
        // Bilinear with texel centers at (i+0.5)/W, clamped at the border.
        double fx = uv.x * tex->width - 0.5;
        double fy = uv.y * tex->height - 0.5;
        int x0 = static_cast<int>(std::floor(fx));
        int y0 = static_cast<int>(std::floor(fy));
        double ax = fx - x0, ay = fy - y0;
        auto texel = [&](int x, int y, int ch) {
          x = std::clamp(x, 0, tex->width - 1);
          y = std::clamp(y, 0, tex->height - 1);
          return tex->rgb[(static_cast<size_t>(y) * tex->width + x) * 3 + ch] / 255.0;
        };
        for (int ch = 0; ch < 3; ch++) {
          double v0 = texel(x0, y0, ch) * (1 - ax) + texel(x0 + 1, y0, ch) * ax;
          double v1 = texel(x0, y0 + 1, ch) * (1 - ax) + texel(x0 + 1, y0 + 1, ch) * ax;
          out.color[idx + ch] = v0 * (1 - ay) + v1 * ay;
        }
      });
    }
  }
  return out;
}

Mesh extract_mesh(const GeometryImage& gim) {
  const int res = gim.resolution;
  const size_t n = gim.pixel_count();

  // Decode masked pixels back to normalized positions, grouped per chart
  // so the cylindrical kernel runs with the right theta offset.
  std::vector<Vec3> decoded(n);
  if (gim.encoding == GimEncoding::cartesian) {
    for (size_t i = 0; i < n; i++) {
      if (!gim.mask[i]) continue;
      decoded[i] = {gim.positions[i * 3 + 0] * 2.0 - 1.0,
                    gim.positions[i * 3 + 1] * 2.0 - 1.0,
                    gim.positions[i * 3 + 2] * 2.0 - 1.0};
    }
  } else {
    std::vector<std::vector<uint32_t>> per_chart(gim.chart_table.size());
    std::vector<int> chart_index(gim.chart_table.size() ?
        gim.chart_table.back().id + 1 : 0, -1);
    for (size_t ci = 0; ci < gim.chart_table.size(); ci++) {
      int id = gim.chart_table[ci].id;
      if (id >= static_cast<int>(chart_index.size())) chart_index.resize(id + 1, -1);
      chart_index[id] = static_cast<int>(ci);
    }
    for (size_t i = 0; i < n; i++) {
      if (!gim.mask[i]) continue;
      int id = gim.chart_ids[i];
      if (id < 0 || id >= static_cast<int>(chart_index.size()) || chart_index[id] < 0)
        throw MeshError("extract_mesh: pixel with unknown chart id");
      per_chart[chart_index[id]].push_back(static_cast<uint32_t>(i));
    }
    std::vector<double> r, t, h, x, y, z;
    for (size_t ci = 0; ci < gim.chart_table.size(); ci++) {
      const auto& pixels = per_chart[ci];
      if (pixels.empty()) continue;
      size_t m = pixels.size();
      r.resize(m); t.resize(m); h.resize(m);
      x.resize(m); y.resize(m); z.resize(m);
      for (size_t i = 0; i < m; i++) {
        r[i] = gim.positions[pixels[i] * 3 + 0];
        t[i] = gim.positions[pixels[i] * 3 + 1];
        h[i] = gim.positions[pixels[i] * 3 + 2];
      }
      auto setup = make_setup(gim.cyl, gim.chart_table[ci].theta_offset);
      kernels::active().cyl_to_cart(setup, static_cast<int>(m), r.data(), t.data(),
                                    h.data(), x.data(), y.data(), z.data());
      for (size_t i = 0; i < m; i++) decoded[pixels[i]] = {x[i], y[i], z[i]};
    }
  }

  Mesh out;
  std::vector<int32_t> vid(n, -1);
  for (int iy = 0; iy < res; iy++) {
    for (int ix = 0; ix < res; ix++) {
      size_t idx = static_cast<size_t>(iy) * res + ix;
      if (!gim.mask[idx]) continue;
      vid[idx] = static_cast<int32_t>(out.positions.size());
      out.positions.push_back(gim.norm.to_model(decoded[idx]));
      out.uvs.push_back({(ix + 0.5) / res, (iy + 0.5) / res});
    }
  }

  auto emit = [&](size_t a, size_t b, size_t c) {
    Face f;
    f.pos = {vid[a], vid[b], vid[c]};
    f.uv = {vid[a], vid[b], vid[c]};
    f.provenance = UvProvenance::manual;
    out.faces.push_back(f);
  };

  for (int iy = 0; iy + 1 < res; iy++) {
    for (int ix = 0; ix + 1 < res; ix++) {
      size_t a = static_cast<size_t>(iy) * res + ix;       // (x,   y)
      size_t b = a + 1;                                    // (x+1, y)
      size_t c = a + res;                                  // (x,   y+1)
      size_t d = c + 1;                                    // (x+1, y+1)
      int va = gim.mask[a] ? 1 : 0, vb = gim.mask[b] ? 1 : 0;
      int vc = gim.mask[c] ? 1 : 0, vd = gim.mask[d] ? 1 : 0;
      int valid = va + vb + vc + vd;
      if (valid < 3) continue;
      // Blocks mixing chart ids stay unconnected.
      int32_t id = -1;
      bool mixed = false;
      for (size_t p : {a, b, c, d}) {
        if (!gim.mask[p]) continue;
        if (id < 0) id = gim.chart_ids[p];
        else if (gim.chart_ids[p] != id) mixed = true;
      }
      if (mixed) continue;
      if (valid == 4) {
        double main_diag = length_sq(decoded[d] - decoded[a]);  // a-d
        double anti_diag = length_sq(decoded[c] - decoded[b]);  // b-c
        if (main_diag <= anti_diag) {
          emit(a, b, d);
          emit(a, d, c);
        } else {
          emit(a, b, c);
          emit(b, d, c);
        }
      } else {
        if (!va) emit(b, d, c);
        else if (!vb) emit(a, d, c);
        else if (!vc) emit(a, b, d);
        else emit(a, b, c);
      }
    }
  }
  return out;
}

std::pair<GeometryImage, AlbedoImage> rotate_atlas(const GeometryImage& gim,
                                                   const AlbedoImage& albedo,
                                                   int k) {
  k &= 3;
  GeometryImage g = gim;
  AlbedoImage al = albedo;
  const int res = gim.resolution;
  for (int step = 0; step < k; step++) {
    GeometryImage src = std::move(g);
    AlbedoImage sal = std::move(al);
    g = src;
    al = sal;
    // One quarter turn counterclockwise in UV space: (u,v) -> (1-v, u).
    for (int iy = 0; iy < res; iy++) {
      for (int ix = 0; ix < res; ix++) {
        size_t from = static_cast<size_t>(iy) * res + ix;
        size_t to = static_cast<size_t>(ix) * res + (res - 1 - iy);
        g.mask[to] = src.mask[from];
        g.chart_ids[to] = src.chart_ids[from];
        for (int c = 0; c < 3; c++) {
          g.positions[to * 3 + c] = src.positions[from * 3 + c];
          al.color[to * 3 + c] = sal.color[from * 3 + c];
        }
      }
    }
    for (auto& rec : g.chart_table) {
      // Compose the image rotation with the chart transform.
      Vec2 t = rec.transform.translate;
      rec.transform.rot90 = (rec.transform.rot90 + 1) & 3;
      rec.transform.translate = {1.0 - t.y, t.x};
      int bx = rec.box_x, by = rec.box_y, bw = rec.box_w, bh = rec.box_h;
      rec.box_x = res - (by + bh);
      rec.box_y = bx;
      rec.box_w = bh;
      rec.box_h = bw;
    }
  }
  return {std::move(g), std::move(al)};
}

std::vector<std::string> validate_gim(const GeometryImage& gim) {
  std::vector<std::string> bad;
  auto note = [&](const std::string& s) {
    if (bad.size() < 16) bad.push_back(s);
  };
  size_t n = gim.pixel_count();
  if (gim.positions.size() != n * 3 || gim.mask.size() != n ||
      gim.chart_ids.size() != n) {
    note("raster size mismatch");
    return bad;
  }
  std::vector<char> known_id;
  for (const auto& rec : gim.chart_table) {
    if (rec.id >= static_cast<int>(known_id.size())) known_id.resize(rec.id + 1, 0);
    if (rec.id >= 0) known_id[rec.id] = 1;
  }
  for (size_t i = 0; i < n; i++) {
    if (gim.mask[i]) {
      for (int c = 0; c < 3; c++) {
        double v = gim.positions[i * 3 + c];
        if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
          note("mask/channel inconsistency: non-finite or out-of-range value under mask at pixel " +
               std::to_string(i));
          break;
        }
      }
      int32_t id = gim.chart_ids[i];
      if (id < 0 || id >= static_cast<int32_t>(known_id.size()) || !known_id[id])
        note("masked pixel without a valid chart id at pixel " + std::to_string(i));
    } else {
      if (gim.positions[i * 3] != 0.0 || gim.positions[i * 3 + 1] != 0.0 ||
          gim.positions[i * 3 + 2] != 0.0)
        note("mask/channel inconsistency: data outside mask at pixel " +
             std::to_string(i));
      if (gim.chart_ids[i] != -1)
        note("chart id outside mask at pixel " + std::to_string(i));
    }
  }
  if (gim.cyl.r_max <= 0) note("cylindrical r_max must be positive");
  if (gim.cyl.h_max <= gim.cyl.h_min) note("cylindrical h range is empty");
  return bad;
}

}  // namespace gim
