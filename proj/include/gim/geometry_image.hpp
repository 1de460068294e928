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

// Geometry-image codec: encode a chart-decomposed mesh into a position
// raster plus aligned albedo atlas, and extract a triangle mesh back out
// of the raster grid.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gim/atlas.hpp"
#include "gim/mesh.hpp"

namespace gim {

enum class GimEncoding : uint8_t { cartesian, cylindrical };

struct CylindricalParams {
  double r_max = 1;
  double h_min = -1, h_max = 1;
};

struct ChartRecord {
  int id = 0;
  Transform2 transform;
  double theta_offset = 0;  // radians; meaningful for cylindrical encoding
  UvProvenance provenance = UvProvenance::manual;
  // Conservative pixel box of the chart in the atlas; boxes of distinct
  // charts never overlap, which lets readers rebuild the chart id raster.
  int box_x = 0, box_y = 0, box_w = 0, box_h = 0;
};

struct GeometryImage {
  int resolution = 0;
  std::vector<double> positions;   // resolution^2 * 3, channel values in [0,1]
  std::vector<uint8_t> mask;       // resolution^2
  std::vector<int32_t> chart_ids;  // resolution^2, -1 outside the mask
  GimEncoding encoding = GimEncoding::cartesian;
  NormalizationParams norm;
  CylindricalParams cyl;
  std::vector<ChartRecord> chart_table;
  bool cylindrical_fallback = false;  // cylindrical was requested, a chart
                                      // spans the full azimuth
  std::vector<std::string> captions;

  size_t pixel_count() const { return static_cast<size_t>(resolution) * resolution; }
  size_t valid_pixels() const;
};

struct AlbedoImage {
  int resolution = 0;
  std::vector<double> color;  // resolution^2 * 3 in [0,1]
  bool texture_missing = false;
};

// Single-point coordinate transforms, routed through the same kernels the
// rasters use. rth/returned channels are the normalized (r^, theta^, h^).
Vec3 to_cylindrical(const Vec3& p, const CylindricalParams& params,
                    double theta_offset);
Vec3 from_cylindrical(const Vec3& rth, const CylindricalParams& params,
                      double theta_offset);

CylindricalParams compute_cylindrical_params(const Mesh& normalized_mesh);

struct ThetaOffsetInfo {
  double offset = 0;
  bool full_turn = false;  // chart azimuths span (essentially) 2 pi
};
ThetaOffsetInfo chart_theta_offset(const Mesh& mesh, const Chart& chart);

// mesh must be normalized; layout must carry an injectivity certificate at
// this resolution (see verify_and_certify).
GeometryImage encode_gim(const Mesh& mesh, const AtlasLayout& layout,
                         int resolution, GimEncoding encoding,
                         const NormalizationParams& norm);

AlbedoImage resample_albedo(const Mesh& mesh, const AtlasLayout& layout,
                            int resolution, double missing_fill = 0.5);

// One vertex per masked pixel (decoded and denormalized), up to two
// triangles per 2x2 same-chart block, split along the shorter 3D diagonal.
Mesh extract_mesh(const GeometryImage& gim);

std::pair<GeometryImage, AlbedoImage> rotate_atlas(const GeometryImage& gim,
                                                   const AlbedoImage& albedo,
                                                   int k);

// Empty when the image satisfies the mask/channel invariants.
std::vector<std::string> validate_gim(const GeometryImage& gim);

}  // namespace gim
