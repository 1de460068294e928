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

#include "gim/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <thread>

#include <json.hpp>

#include "gim/image_io.hpp"

namespace gim {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

GimEncoding encoding_from(const std::string& s) {
  if (s == "cartesian") return GimEncoding::cartesian;
  if (s == "cylindrical") return GimEncoding::cylindrical;
  throw MeshError("manifest: unknown encoding '" + s + "'");
}

void parse_config(const json& j, BatchConfig* config) {
  config->resolution = j.value("resolution", config->resolution);
  if (j.contains("encoding"))
    config->encoding = encoding_from(j["encoding"].get<std::string>());
  config->coverage_threshold = j.value("coverage_threshold", config->coverage_threshold);
  config->gutter_px = j.value("gutter", config->gutter_px);
  config->rotations = j.value("rotations", config->rotations);
  if (j.contains("format")) config->use_exr = j["format"].get<std::string>() == "exr";
  config->compute_fidelity = j.value("fidelity", config->compute_fidelity);
  config->fidelity_samples = j.value("fidelity_samples", config->fidelity_samples);
  config->seed = j.value("seed", config->seed);
  config->workers = j.value("workers", config->workers);
  config->min_faces = j.value("min_faces", config->min_faces);
  config->max_faces = j.value("max_faces", config->max_faces);
  config->max_charts = j.value("max_charts", config->max_charts);
}

struct ObjectOutputs {
  GeometryImage gim;
  AlbedoImage albedo;
};

void write_outputs(const BatchConfig& config, const std::string& id,
                   const GeometryImage& gim, const AlbedoImage& albedo,
                   const std::string& suffix) {
  fs::path dir(config.output_dir);
  std::string stem = id + suffix;
  std::string image_ext = config.use_exr ? ".gim.exr" : ".gim.png";
  write_gim_image(gim, (dir / (stem + image_ext)).string());
  write_albedo_png(albedo, (dir / (stem + ".albedo.png")).string());
  write_gim_meta(gim, (dir / (stem + ".meta")).string());
}

ObjectResult process_object(const BatchConfig& config, const ManifestEntry& entry,
                            const ObjectHook* hook) {
  ObjectResult result;
  result.id = entry.id;
  auto start = std::chrono::steady_clock::now();
  auto finish = [&] {
    result.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };
  try {
    if (hook && *hook) (*hook)(entry.id);
    auto [mesh, load_report] = load_mesh_file(entry.path);
    auto [normalized, norm] = normalize_mesh(mesh);

    // Curation bounds (scan / low-poly screening).
    if (config.min_faces && normalized.faces.size() < config.min_faces) {
      result.status = ObjectStatus::rejected_coverage;
      result.detail = "curation filter: face count below " +
                      std::to_string(config.min_faces);
      finish();
      return result;
    }
    if (config.max_faces && normalized.faces.size() > config.max_faces) {
      result.status = ObjectStatus::rejected_coverage;
      result.detail = "curation filter: face count above " +
                      std::to_string(config.max_faces);
      finish();
      return result;
    }

    ChartSet charts = split_charts(normalized);
    if (!charts.uncovered_faces.empty())
      charts = unwrap_missing(normalized, charts);

    if (config.max_charts && charts.charts.size() > config.max_charts) {
      result.status = ObjectStatus::rejected_coverage;
      result.detail = "curation filter: chart count above " +
                      std::to_string(config.max_charts);
      finish();
      return result;
    }

    auto coverage = coverage_filter(charts, config.coverage_threshold);
    if (!coverage.accepted) {
      result.status = ObjectStatus::rejected_coverage;
      result.detail = "manual_coverage=" + std::to_string(coverage.manual_coverage);
      finish();
      return result;
    }

    equal_area_rescale(charts);
    AtlasLayout layout;
    try {
      layout = pack_atlas(std::move(charts), config.resolution, config.gutter_px);
    } catch (const MeshError& e) {
      result.status = ObjectStatus::rejected_overflow;
      result.detail = e.what();
      finish();
      return result;
    }
    auto inj = verify_and_certify(normalized, layout);
    if (!inj.injective) {
      result.status = ObjectStatus::rejected_injectivity;
      result.detail = std::to_string(inj.conflicts.size()) + " pixel conflicts";
      finish();
      return result;
    }

    GeometryImage gim =
        encode_gim(normalized, layout, config.resolution, config.encoding, norm);
    gim.captions = entry.captions;
    AlbedoImage albedo = resample_albedo(normalized, layout, config.resolution);
    write_outputs(config, entry.id, gim, albedo, "");
    if (config.rotations) {
      auto [g90, a90] = rotate_atlas(gim, albedo, 1);
      write_outputs(config, entry.id, g90, a90, ".rot90");
      auto [g180, a180] = rotate_atlas(gim, albedo, 2);
      write_outputs(config, entry.id, g180, a180, ".rot180");
      auto [g270, a270] = rotate_atlas(gim, albedo, 3);
      write_outputs(config, entry.id, g270, a270, ".rot270");
    }

    if (config.compute_fidelity) {
      Mesh reconstructed = extract_mesh(gim);
      result.fidelity = measure_roundtrip(normalized, norm, layout, gim, reconstructed,
                                          config.fidelity_samples, config.seed);
    }
    result.status = ObjectStatus::accepted;
  } catch (const std::exception& e) {
    result.status = ObjectStatus::parse_error;
    result.detail = e.what();
  } catch (...) {
    result.status = ObjectStatus::parse_error;
    result.detail = "unknown error";
  }
  finish();
  return result;
}

}  // namespace

const char* status_name(ObjectStatus s) {
  switch (s) {
    case ObjectStatus::accepted: return "accepted";
    case ObjectStatus::rejected_coverage: return "rejected_coverage";
    case ObjectStatus::rejected_injectivity: return "rejected_injectivity";
    case ObjectStatus::rejected_overflow: return "rejected_overflow";
    default: return "parse_error";
  }
}

JobManifest load_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MeshError("cannot open manifest " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw MeshError("manifest parse error: " + std::string(e.what()));
  }
  JobManifest manifest;
  manifest.config.output_dir = j.value("output_dir", "");
  if (j.contains("config")) parse_config(j["config"], &manifest.config);
  fs::path base = fs::path(path).parent_path();
  for (const auto& obj : j.value("objects", json::array())) {
    ManifestEntry entry;
    entry.id = obj.at("id").get<std::string>();
    entry.path = obj.at("path").get<std::string>();
    if (!entry.path.empty() && fs::path(entry.path).is_relative() && !base.empty())
      entry.path = (base / entry.path).string();
    if (obj.contains("captions"))
      entry.captions = obj["captions"].get<std::vector<std::string>>();
    manifest.objects.push_back(std::move(entry));
  }
  return manifest;
}

void validate_manifest(const JobManifest& manifest) {
  std::set<std::string> ids;
  for (const auto& obj : manifest.objects) {
    if (obj.id.empty()) throw MeshError("manifest: empty object id");
    if (!ids.insert(obj.id).second)
      throw MeshError("manifest: duplicate object id '" + obj.id + "'");
    if (!fs::exists(obj.path))
      throw MeshError("manifest: missing input '" + obj.path + "'");
  }
  if (manifest.config.resolution < 4)
    throw MeshError("manifest: resolution too small");
}

CurationReport run_batch(const JobManifest& manifest, const ObjectHook* hook) {
  validate_manifest(manifest);
  const BatchConfig& config = manifest.config;
  if (config.output_dir.empty()) throw MeshError("batch: no output directory");
  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  {
    fs::path probe = fs::path(config.output_dir) / ".gimcodec-probe";
    std::ofstream test(probe);
    if (!test) throw MeshError("batch: output directory not writable: " + config.output_dir);
    test.close();
    fs::remove(probe, ec);
  }

  int workers = config.workers;
  if (const char* env = std::getenv("GIM_WORKERS")) workers = std::atoi(env);
  if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min<int>(workers, 64));

  CurationReport report;
  report.objects.resize(manifest.objects.size());
  auto start = std::chrono::steady_clock::now();

  std::atomic<size_t> next{0};
  auto worker = [&] {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= manifest.objects.size()) break;
      report.objects[i] = process_object(config, manifest.objects[i], hook);
    }
  };
  if (workers == 1 || manifest.objects.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; w++) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report.objects_per_second =
      report.wall_seconds > 0
          ? static_cast<double>(report.objects.size()) / report.wall_seconds
          : 0;
  return report;
}

std::string report_to_json(const CurationReport& report) {
  json j;
  json objects = json::array();
  for (const auto& o : report.objects) {
    json entry{{"id", o.id},
               {"status", status_name(o.status)},
               {"seconds", o.seconds}};
    if (!o.detail.empty()) entry["detail"] = o.detail;
    if (o.fidelity) {
      entry["fidelity"] = {{"chamfer_mean", o.fidelity->chamfer_mean},
                           {"chamfer_p95", o.fidelity->chamfer_p95},
                           {"chamfer_max", o.fidelity->chamfer_max},
                           {"coverage_fraction", o.fidelity->coverage_fraction},
                           {"area_ratio_spread", o.fidelity->area_ratio_spread},
                           {"vertex_count", o.fidelity->vertex_count},
                           {"triangle_count", o.fidelity->triangle_count},
                           {"chart_count", o.fidelity->chart_count}};
    }
    objects.push_back(std::move(entry));
  }
  j["objects"] = std::move(objects);
  j["counts"] = {{"accepted", report.count(ObjectStatus::accepted)},
                 {"rejected_coverage", report.count(ObjectStatus::rejected_coverage)},
                 {"rejected_injectivity", report.count(ObjectStatus::rejected_injectivity)},
                 {"rejected_overflow", report.count(ObjectStatus::rejected_overflow)},
                 {"parse_error", report.count(ObjectStatus::parse_error)}};
  j["wall_seconds"] = report.wall_seconds;
  j["objects_per_second"] = report.objects_per_second;
  return j.dump(2) + "\n";
}

void write_report_json(const CurationReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw MeshError("cannot write report " + path);
  out << report_to_json(report);
}

}  // namespace gim
