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

// Batch corpus processor: runs the encode pipeline over a manifest of
// objects with a worker pool. Objects are independent; outputs are
// bit-identical for any worker count. A failing object records a status
// and never aborts the batch.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gim/fidelity.hpp"
#include "gim/geometry_image.hpp"

namespace gim {

struct BatchConfig {
  int resolution = 768;
  GimEncoding encoding = GimEncoding::cylindrical;
  double coverage_threshold = 0.8;
  int gutter_px = 2;
  bool rotations = false;   // materialize rot90/180/270 augmentations
  bool use_exr = false;
  bool compute_fidelity = true;
  size_t fidelity_samples = 100000;
  uint64_t seed = 0;
  int workers = 0;          // 0 = hardware concurrency
  // Curation bounds for screening scans and low-poly models. The defaults
  // are arbitrary and permissive: 0 disables a bound.
  size_t min_faces = 0;
  size_t max_faces = 0;
  size_t max_charts = 0;
  std::string output_dir;
};

struct ManifestEntry {
  std::string id;
  std::string path;
  std::vector<std::string> captions;
};

struct JobManifest {
  BatchConfig config;
  std::vector<ManifestEntry> objects;
};

JobManifest load_manifest(const std::string& path);
// Unique ids, existing input paths. Throws MeshError on violations.
void validate_manifest(const JobManifest& manifest);

enum class ObjectStatus {
  accepted,
  rejected_coverage,
  rejected_injectivity,
  rejected_overflow,
  parse_error,
};
const char* status_name(ObjectStatus s);

struct ObjectResult {
  std::string id;
  ObjectStatus status = ObjectStatus::parse_error;
  std::string detail;
  double seconds = 0;
  std::optional<FidelityReport> fidelity;
};

struct CurationReport {
  std::vector<ObjectResult> objects;  // manifest order
  double wall_seconds = 0;
  double objects_per_second = 0;
  size_t count(ObjectStatus s) const {
    size_t n = 0;
    for (const auto& o : objects) n += o.status == s;
    return n;
  }
};

// Test seam: invoked per object before processing; an exception it throws
// is recorded as that object's failure.
using ObjectHook = std::function<void(const std::string& id)>;

CurationReport run_batch(const JobManifest& manifest,
                         const ObjectHook* hook = nullptr);

std::string report_to_json(const CurationReport& report);
void write_report_json(const CurationReport& report, const std::string& path);

}  // namespace gim
