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

// File formats. Raster rows are stored top-down in files while the
// in-memory convention keeps row 0 at v = 0, so writers and readers flip.
// Our own PNGs go through the full libpng API with no color transforms so
// quantized channels round-trip bit-exactly.

#include "gim/image_io.hpp"

#include <jpeglib.h>
#include <png.h>

#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>

#include <json.hpp>

#include "gim/kernels.hpp"

namespace gim {

namespace {

using json = nlohmann::json;

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

[[noreturn]] void fail(const std::string& msg) { throw MeshError(msg); }

void write_png(const std::string& path, int width, int height, int bit_depth,
               int color_type, const std::vector<png_bytep>& rows) {
  FilePtr fp(std::fopen(path.c_str(), "wb"));
  if (!fp) fail("cannot write " + path);
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr,
                                            nullptr);
  png_infop info = png_create_info_struct(png);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    fail("libpng write failure: " + path);
  }
  png_init_io(png, fp.get());
  png_set_IHDR(png, info, width, height, bit_depth, color_type,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  if (bit_depth == 16) png_set_swap(png);  // buffers are little-endian
  png_write_image(png, const_cast<png_bytep*>(rows.data()));
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

struct PngData {
  int width = 0, height = 0, bit_depth = 0, channels = 0;
  std::vector<uint8_t> bytes;  // row-major, little-endian samples
};

PngData read_png(const std::string& path, int want_channels, int want_depth) {
  FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp) fail("cannot read " + path);
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr,
                                           nullptr);
  png_infop info = png_create_info_struct(png);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    fail("libpng read failure: " + path);
  }
  png_init_io(png, fp.get());
  png_read_info(png, info);
  PngData out;
  out.width = png_get_image_width(png, info);
  out.height = png_get_image_height(png, info);
  out.bit_depth = png_get_bit_depth(png, info);
  int color = png_get_color_type(png, info);
  if (out.bit_depth != want_depth) fail(path + ": unexpected bit depth");
  int want_color = want_channels == 4 ? PNG_COLOR_TYPE_RGBA : PNG_COLOR_TYPE_RGB;
  if (color != want_color) fail(path + ": unexpected color type");
  if (want_depth == 16) png_set_swap(png);
  out.channels = want_channels;
  size_t stride =
      static_cast<size_t>(out.width) * want_channels * (want_depth / 8);
  out.bytes.resize(stride * out.height);
  std::vector<png_bytep> rows(out.height);
  for (int r = 0; r < out.height; r++) rows[r] = out.bytes.data() + stride * r;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return out;
}

bool has_suffix(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

const char* provenance_name(UvProvenance p) {
  switch (p) {
    case UvProvenance::manual: return "manual";
    case UvProvenance::generated: return "generated";
    default: return "absent";
  }
}

UvProvenance provenance_from(const std::string& s) {
  if (s == "manual") return UvProvenance::manual;
  if (s == "generated") return UvProvenance::generated;
  return UvProvenance::absent;
}

struct JpegErr {
  jpeg_error_mgr mgr;
  std::jmp_buf jump;
};

void jpeg_err_exit(j_common_ptr cinfo) {
  std::longjmp(reinterpret_cast<JpegErr*>(cinfo->err)->jump, 1);
}

Texture decode_jpeg(const uint8_t* data, size_t size) {
  jpeg_decompress_struct cinfo{};
  JpegErr err{};
  cinfo.err = jpeg_std_error(&err.mgr);
  err.mgr.error_exit = jpeg_err_exit;
  if (setjmp(err.jump)) {
    jpeg_destroy_decompress(&cinfo);
    fail("texture: JPEG decode failed");
  }
  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, data, static_cast<unsigned long>(size));
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);
  Texture tex;
  tex.width = static_cast<int>(cinfo.output_width);
  tex.height = static_cast<int>(cinfo.output_height);
  size_t stride = static_cast<size_t>(tex.width) * 3;
  tex.rgb.resize(stride * tex.height);
  while (cinfo.output_scanline < cinfo.output_height) {
    // Flip into the v-up convention while reading.
    JSAMPROW row =
        tex.rgb.data() + stride * (tex.height - 1 - cinfo.output_scanline);
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return tex;
}

}  // namespace

void write_gim_image(const GeometryImage& gim, const std::string& image_path) {
  const int res = gim.resolution;
  const size_t n = gim.pixel_count();
  if (has_suffix(image_path, ".exr")) {
    std::vector<float> rgba(n * 4);
    for (size_t i = 0; i < n; i++) {
      for (int c = 0; c < 3; c++)
        rgba[i * 4 + c] = static_cast<float>(gim.positions[i * 3 + c]);
      rgba[i * 4 + 3] = gim.mask[i] ? 1.0f : 0.0f;
    }
    write_exr_rgba_f32(image_path, res, rgba);
    return;
  }

  std::vector<uint16_t> q(n * 3);
  kernels::active().quantize_u16(n * 3, gim.positions.data(), q.data());
  std::vector<uint16_t> pixels(n * 4);
  for (size_t i = 0; i < n; i++) {
    pixels[i * 4 + 0] = q[i * 3 + 0];
    pixels[i * 4 + 1] = q[i * 3 + 1];
    pixels[i * 4 + 2] = q[i * 3 + 2];
    pixels[i * 4 + 3] = gim.mask[i] ? 65535 : 0;
  }
  std::vector<png_bytep> rows(res);
  for (int r = 0; r < res; r++) {
    rows[r] = reinterpret_cast<png_bytep>(pixels.data() +
                                          static_cast<size_t>(res - 1 - r) * res * 4);
  }
  write_png(image_path, res, res, 16, PNG_COLOR_TYPE_RGBA, rows);
}

void write_gim_meta(const GeometryImage& gim, const std::string& meta_path) {
  json j;
  j["format"] = "gimcodec-meta";
  j["version"] = 1;
  j["resolution"] = gim.resolution;
  j["encoding"] = gim.encoding == GimEncoding::cylindrical ? "cylindrical" : "cartesian";
  j["cylindrical_fallback"] = gim.cylindrical_fallback;
  j["value_range"] = "unit";
  j["normalization"] = {{"center", {gim.norm.center.x, gim.norm.center.y, gim.norm.center.z}},
                        {"scale", gim.norm.scale}};
  j["cylindrical"] = {{"r_max", gim.cyl.r_max},
                      {"h_min", gim.cyl.h_min},
                      {"h_max", gim.cyl.h_max}};
  json charts = json::array();
  for (const auto& rec : gim.chart_table) {
    charts.push_back({{"id", rec.id},
                      {"scale", rec.transform.scale},
                      {"rot90", rec.transform.rot90},
                      {"translate", {rec.transform.translate.x, rec.transform.translate.y}},
                      {"theta_offset", rec.theta_offset},
                      {"provenance", provenance_name(rec.provenance)},
                      {"box_px", {rec.box_x, rec.box_y, rec.box_w, rec.box_h}}});
  }
  j["charts"] = std::move(charts);
  j["captions"] = gim.captions;
  j["valid_pixels"] = gim.valid_pixels();

  std::ofstream out(meta_path, std::ios::binary);
  if (!out) fail("cannot write " + meta_path);
  out << j.dump(2) << "\n";
}

GeometryImage read_gim(const std::string& image_path, const std::string& meta_path) {
  std::ifstream in(meta_path, std::ios::binary);
  if (!in) fail("cannot read " + meta_path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(meta_path + ": " + e.what());
  }
  if (j.value("format", "") != "gimcodec-meta") fail(meta_path + ": not a gim sidecar");

  GeometryImage gim;
  gim.resolution = j.at("resolution").get<int>();
  gim.encoding = j.at("encoding").get<std::string>() == "cylindrical"
                     ? GimEncoding::cylindrical
                     : GimEncoding::cartesian;
  gim.cylindrical_fallback = j.value("cylindrical_fallback", false);
  auto& norm = j.at("normalization");
  gim.norm.center = {norm.at("center")[0], norm.at("center")[1], norm.at("center")[2]};
  gim.norm.scale = norm.at("scale");
  auto& cyl = j.at("cylindrical");
  gim.cyl.r_max = cyl.at("r_max");
  gim.cyl.h_min = cyl.at("h_min");
  gim.cyl.h_max = cyl.at("h_max");
  for (const auto& c : j.at("charts")) {
    ChartRecord rec;
    rec.id = c.at("id");
    rec.transform.scale = c.at("scale");
    rec.transform.rot90 = c.at("rot90");
    rec.transform.translate = {c.at("translate")[0], c.at("translate")[1]};
    rec.theta_offset = c.at("theta_offset");
    rec.provenance = provenance_from(c.at("provenance"));
    rec.box_x = c.at("box_px")[0];
    rec.box_y = c.at("box_px")[1];
    rec.box_w = c.at("box_px")[2];
    rec.box_h = c.at("box_px")[3];
    gim.chart_table.push_back(rec);
  }
  if (j.contains("captions")) gim.captions = j["captions"].get<std::vector<std::string>>();

  const int res = gim.resolution;
  const size_t n = gim.pixel_count();
  gim.positions.assign(n * 3, 0.0);
  gim.mask.assign(n, 0);
  gim.chart_ids.assign(n, -1);

  if (has_suffix(image_path, ".exr")) {
    int exr_res = 0;
    auto rgba = read_exr_rgba_f32(image_path, &exr_res);
    if (exr_res != res) fail(image_path + ": resolution mismatch with sidecar");
    // Channel data is read verbatim; the validator decides whether data
    // outside the mask is a violation.
    for (size_t i = 0; i < n; i++) {
      gim.mask[i] = rgba[i * 4 + 3] > 0.5f ? 1 : 0;
      for (int c = 0; c < 3; c++) gim.positions[i * 3 + c] = rgba[i * 4 + c];
    }
  } else {
    PngData png = read_png(image_path, 4, 16);
    if (png.width != res || png.height != res)
      fail(image_path + ": resolution mismatch with sidecar");
    const uint16_t* samples = reinterpret_cast<const uint16_t*>(png.bytes.data());
    std::vector<uint16_t> q(n * 3);
    for (int r = 0; r < res; r++) {
      const uint16_t* row = samples + static_cast<size_t>(res - 1 - r) * res * 4;
      for (int x = 0; x < res; x++) {
        size_t i = static_cast<size_t>(r) * res + x;
        q[i * 3 + 0] = row[x * 4 + 0];
        q[i * 3 + 1] = row[x * 4 + 1];
        q[i * 3 + 2] = row[x * 4 + 2];
        gim.mask[i] = row[x * 4 + 3] ? 1 : 0;
      }
    }
    // Verbatim dequantization; out-of-mask data stays visible for the
    // validator.
    kernels::active().dequantize_u16(n * 3, q.data(), gim.positions.data());
  }

  // Chart boxes are disjoint, so box membership recovers the id raster.
  for (const auto& rec : gim.chart_table) {
    for (int y = rec.box_y; y < rec.box_y + rec.box_h && y < res; y++) {
      for (int x = rec.box_x; x < rec.box_x + rec.box_w && x < res; x++) {
        size_t i = static_cast<size_t>(y) * res + x;
        if (gim.mask[i]) gim.chart_ids[i] = rec.id;
      }
    }
  }
  return gim;
}

void write_albedo_png(const AlbedoImage& albedo, const std::string& path) {
  const int res = albedo.resolution;
  std::vector<uint8_t> pixels(static_cast<size_t>(res) * res * 3);
  for (size_t i = 0; i < pixels.size(); i++) {
    double v = std::min(1.0, std::max(0.0, albedo.color[i]));
    pixels[i] = static_cast<uint8_t>(std::lrint(v * 255.0));
  }
  std::vector<png_bytep> rows(res);
  for (int r = 0; r < res; r++)
    rows[r] = pixels.data() + static_cast<size_t>(res - 1 - r) * res * 3;
  write_png(path, res, res, 8, PNG_COLOR_TYPE_RGB, rows);
}

AlbedoImage read_albedo_png(const std::string& path) {
  PngData png = read_png(path, 3, 8);
  AlbedoImage out;
  out.resolution = png.width;
  if (png.width != png.height) fail(path + ": albedo must be square");
  out.color.resize(static_cast<size_t>(png.width) * png.height * 3);
  for (int r = 0; r < png.height; r++) {
    const uint8_t* row = png.bytes.data() +
                         static_cast<size_t>(png.height - 1 - r) * png.width * 3;
    for (int x = 0; x < png.width * 3; x++)
      out.color[static_cast<size_t>(r) * png.width * 3 + x] = row[x] / 255.0;
  }
  return out;
}

Texture decode_texture(const uint8_t* data, size_t size) {
  Texture tex;
  if (size >= 8 && data[0] == 0x89 && data[1] == 'P') {
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&image, data, size))
      fail("texture: bad PNG data");
    image.format = PNG_FORMAT_RGB;
    std::vector<uint8_t> buf(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, buf.data(), 0, nullptr)) {
      png_image_free(&image);
      fail("texture: PNG decode failed");
    }
    tex.width = image.width;
    tex.height = image.height;
    // File rows are top-down; flip into the v-up convention.
    tex.rgb.resize(buf.size());
    size_t stride = static_cast<size_t>(tex.width) * 3;
    for (int r = 0; r < tex.height; r++)
      std::memcpy(tex.rgb.data() + stride * r,
                  buf.data() + stride * (tex.height - 1 - r), stride);
    return tex;
  }
  if (size >= 2 && data[0] == 0xFF && data[1] == 0xD8) return decode_jpeg(data, size);
  fail("texture: unsupported image format");
}

Texture load_texture_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot read texture " + path);
  std::vector<uint8_t> data((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
  return decode_texture(data.data(), data.size());
}

}  // namespace gim
