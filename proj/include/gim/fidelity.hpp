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

// Round-trip and parameterization-quality metrics. All distances are
// Euclidean point-to-triangle; sampling is area-uniform with a
// counter-based generator so reports are reproducible everywhere.

#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "gim/atlas.hpp"
#include "gim/geometry_image.hpp"
#include "gim/mesh.hpp"

namespace gim {

// Exact nearest point-to-surface queries; results equal the brute-force
// all-triangles minimum (degenerate zero-area triangles are excluded from
// the target set by both paths).
class MeshDistanceIndex {
 public:
  explicit MeshDistanceIndex(const Mesh& mesh);
  ~MeshDistanceIndex();
  MeshDistanceIndex(MeshDistanceIndex&&) noexcept;
  MeshDistanceIndex& operator=(MeshDistanceIndex&&) noexcept;

  double distance_sq(const Vec3& point) const;
  double distance_sq_brute_force(const Vec3& point) const;
  size_t triangle_count() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Deterministic area-uniform surface sampling.
std::vector<Vec3> sample_surface(const Mesh& mesh, size_t n_samples, uint64_t seed);

struct DistanceStats {
  double mean = 0, p95 = 0, max = 0;
};

struct ChamferResult {
  DistanceStats a_to_b;
  DistanceStats b_to_a;
};

ChamferResult chamfer_distance(const Mesh& a, const Mesh& b, size_t n_samples,
                               uint64_t seed = 0);

struct AreaDistortion {
  std::vector<double> ratios;  // per chart: 3D area / atlas UV area
  double spread = 1;           // max / min
};
AreaDistortion area_distortion(const ChartSet& charts);

struct FidelityReport {
  // Reconstruction -> source distances, in normalized units.
  double chamfer_mean = 0, chamfer_p95 = 0, chamfer_max = 0;
  // Fraction of source samples within 2 pixel spacings of the
  // reconstruction.
  double coverage_fraction = 0;
  double area_ratio_spread = 1;
  size_t vertex_count = 0;
  size_t triangle_count = 0;
  size_t chart_count = 0;
  ChamferResult chamfer;  // both directions, normalized units
  bool valid() const {
    return chamfer_mean <= chamfer_p95 && chamfer_p95 <= chamfer_max &&
           coverage_fraction >= 0 && coverage_fraction <= 1 && area_ratio_spread >= 1;
  }
};

struct RoundtripOptions {
  int resolution = 768;
  GimEncoding encoding = GimEncoding::cylindrical;
  size_t n_samples = 100000;
  uint64_t seed = 0;
  double coverage_threshold = 0.8;
  bool enforce_coverage = true;
  int gutter_px = 2;
};

struct RoundtripArtifacts {
  GeometryImage gim;
  Mesh reconstructed;          // model units
  Mesh normalized_source;
  AtlasLayout layout;
  NormalizationParams norm;
};

// split -> unwrap -> rescale -> pack -> verify -> encode -> extract, then
// measures the report fields. Throws on coverage rejection (when
// enforced), injectivity failure or atlas overflow.
FidelityReport roundtrip_report(const Mesh& mesh, const RoundtripOptions& options,
                                RoundtripArtifacts* artifacts = nullptr);

// Metric computation alone, for callers that already ran the pipeline.
FidelityReport measure_roundtrip(const Mesh& normalized_source,
                                 const NormalizationParams& norm,
                                 const AtlasLayout& layout, const GeometryImage& gim,
                                 const Mesh& reconstructed, size_t n_samples,
                                 uint64_t seed);

}  // namespace gim
