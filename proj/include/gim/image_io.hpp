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

#include <string>
#include <vector>

#include "gim/geometry_image.hpp"

namespace gim {

// Geometry image files: 16-bit RGBA PNG (position channels + mask) or
// 32-bit float EXR, selected by extension (.png / .exr), plus a JSON
// sidecar carrying resolution, encoding, normalization, cylindrical
// parameters and the chart table.
void write_gim_image(const GeometryImage& gim, const std::string& image_path);
void write_gim_meta(const GeometryImage& gim, const std::string& meta_path);
GeometryImage read_gim(const std::string& image_path, const std::string& meta_path);

void write_albedo_png(const AlbedoImage& albedo, const std::string& path);
AlbedoImage read_albedo_png(const std::string& path);

// Texture decoding for referenced assets (glTF images, OBJ materials).
Texture decode_texture(const uint8_t* data, size_t size);
Texture load_texture_file(const std::string& path);

// Minimal uncompressed scanline EXR, enough for our own files.
void write_exr_rgba_f32(const std::string& path, int res,
                        const std::vector<float>& rgba);
std::vector<float> read_exr_rgba_f32(const std::string& path, int* res);

}  // namespace gim
