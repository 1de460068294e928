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

// gimtool: encode | decode | validate | stats | batch
// Exit codes: 0 success, 1 validation/processing failure, 2 usage error.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gim/fidelity.hpp"
#include "gim/image_io.hpp"
#include "gim/pipeline.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct CommonFlags {
  std::string config_path;
  int resolution = -1;
  std::string encoding;
  double coverage_threshold = -1;
  int gutter = -1;
};

// Defaults, then config file, then explicit flags.
gim::BatchConfig resolve_config(const CommonFlags& flags) {
  gim::BatchConfig config;
  if (!flags.config_path.empty()) {
    std::ifstream in(flags.config_path);
    if (!in) throw gim::MeshError("cannot open config " + flags.config_path);
    json j;
    in >> j;
    config.resolution = j.value("resolution", config.resolution);
    if (j.contains("encoding"))
      config.encoding = j["encoding"] == "cartesian" ? gim::GimEncoding::cartesian
                                                     : gim::GimEncoding::cylindrical;
    config.coverage_threshold = j.value("coverage_threshold", config.coverage_threshold);
    config.gutter_px = j.value("gutter", config.gutter_px);
    if (j.contains("format")) config.use_exr = j["format"] == "exr";
    config.fidelity_samples = j.value("fidelity_samples", config.fidelity_samples);
    config.seed = j.value("seed", config.seed);
    config.workers = j.value("workers", config.workers);
  }
  if (flags.resolution > 0) config.resolution = flags.resolution;
  if (flags.encoding == "cartesian") config.encoding = gim::GimEncoding::cartesian;
  if (flags.encoding == "cylindrical") config.encoding = gim::GimEncoding::cylindrical;
  if (flags.coverage_threshold >= 0) config.coverage_threshold = flags.coverage_threshold;
  if (flags.gutter >= 0) config.gutter_px = flags.gutter;
  return config;
}

int run_encode(const std::string& input, const std::string& out_dir,
               const gim::BatchConfig& base, bool use_exr, bool rotations,
               std::string id) {
  gim::BatchConfig config = base;
  config.output_dir = out_dir;
  config.use_exr = use_exr;
  config.rotations = rotations;
  config.compute_fidelity = false;
  if (id.empty()) id = fs::path(input).stem().string();

  gim::JobManifest manifest;
  manifest.config = config;
  manifest.objects.push_back({id, input, {}});
  auto report = gim::run_batch(manifest);
  const auto& result = report.objects.at(0);
  if (result.status != gim::ObjectStatus::accepted) {
    std::cerr << "encode failed: " << gim::status_name(result.status);
    if (!result.detail.empty()) std::cerr << " (" << result.detail << ")";
    std::cerr << "\n";
    return 1;
  }
  std::cout << "encoded " << id << " -> " << out_dir << "\n";
  return 0;
}

std::string meta_path_for(const std::string& image_path) {
  std::string p = image_path;
  for (const char* suffix : {".gim.png", ".gim.exr"}) {
    size_t len = std::strlen(suffix);
    if (p.size() > len && p.compare(p.size() - len, len, suffix) == 0)
      return p.substr(0, p.size() - len) + ".meta";
  }
  return fs::path(p).replace_extension(".meta").string();
}

int run_decode(const std::string& image_path, const std::string& albedo_path,
               const std::string& meta_flag, const std::string& out_path) {
  std::string meta = meta_flag.empty() ? meta_path_for(image_path) : meta_flag;
  gim::GeometryImage g = gim::read_gim(image_path, meta);
  gim::Mesh mesh = gim::extract_mesh(g);

  std::string mtl_name;
  if (!albedo_path.empty()) {
    mtl_name = fs::path(out_path).stem().string();
    fs::path dir = fs::path(out_path).parent_path();
    fs::path tex_copy = dir / (mtl_name + ".albedo.png");
    fs::copy_file(albedo_path, tex_copy, fs::copy_options::overwrite_existing);
    std::ofstream mtl(dir / (mtl_name + ".mtl"));
    mtl << "newmtl " << mtl_name << "\nKd 1 1 1\nmap_Kd " << mtl_name
        << ".albedo.png\n";
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw gim::MeshError("cannot write " + out_path);
  gim::save_mesh_obj(mesh, out, mtl_name);
  std::cout << "decoded " << mesh.positions.size() << " vertices, "
            << mesh.faces.size() << " triangles -> " << out_path << "\n";
  return 0;
}

bool is_mesh_path(const std::string& path) {
  std::string ext = fs::path(path).extension().string();
  for (auto& c : ext) c = static_cast<char>(std::tolower(c));
  return ext == ".obj" || ext == ".gltf" || ext == ".glb";
}

int run_validate(const std::string& path, const gim::BatchConfig& config) {
  json out;
  std::vector<std::string> reasons;
  if (is_mesh_path(path)) {
    auto [mesh, load_report] = gim::load_mesh_file(path);
    if (mesh.faces.empty()) reasons.push_back("no geometry");
    size_t manual = 0, generated = 0, absent = 0;
    for (const auto& f : mesh.faces) {
      if (f.provenance == gim::UvProvenance::manual) manual++;
      else if (f.provenance == gim::UvProvenance::generated) generated++;
      else absent++;
      for (int c = 0; c < 3; c++) {
        if (f.pos[c] < 0 || f.pos[c] >= static_cast<int>(mesh.positions.size()))
          reasons.push_back("face references invalid position index");
        if (f.has_uv() && f.uv[c] >= static_cast<int>(mesh.uvs.size()))
          reasons.push_back("face references invalid uv index");
      }
    }
    if (manual + generated + absent != mesh.faces.size())
      reasons.push_back("uv_provenance does not partition faces");
    for (const auto& uv : mesh.uvs)
      if (uv.x < 0 || uv.x > 1 || uv.y < 0 || uv.y > 1) {
        reasons.push_back("uv outside [0,1]^2");
        break;
      }
    if (reasons.empty() && !mesh.faces.empty()) {
      auto [normalized, norm] = gim::normalize_mesh(mesh);
      gim::ChartSet charts = gim::split_charts(normalized);
      if (!charts.uncovered_faces.empty())
        charts = gim::unwrap_missing(normalized, charts);
      gim::equal_area_rescale(charts);
      auto layout = gim::pack_atlas(std::move(charts), config.resolution, config.gutter_px);
      auto inj = gim::verify_and_certify(normalized, layout);
      if (!inj.injective) {
        reasons.push_back("uv mapping not injective at resolution " +
                          std::to_string(config.resolution) + " (" +
                          std::to_string(inj.conflicts.size()) + " conflicts)");
      }
      out["charts"] = layout.set.charts.size();
    }
  } else {
    std::string meta = meta_path_for(path);
    gim::GeometryImage g = gim::read_gim(path, meta);
    reasons = gim::validate_gim(g);
    out["valid_pixels"] = g.valid_pixels();
  }
  out["input"] = path;
  out["valid"] = reasons.empty();
  out["reasons"] = reasons;
  std::cout << out.dump(2) << "\n";
  return reasons.empty() ? 0 : 1;
}

int run_stats(const std::string& input, const gim::BatchConfig& config,
              size_t samples, uint64_t seed, bool no_coverage_filter) {
  auto [mesh, load_report] = gim::load_mesh_file(input);
  gim::RoundtripOptions options;
  options.resolution = config.resolution;
  options.encoding = config.encoding;
  options.n_samples = samples;
  options.seed = seed;
  options.coverage_threshold = config.coverage_threshold;
  options.enforce_coverage = !no_coverage_filter;
  options.gutter_px = config.gutter_px;
  auto report = gim::roundtrip_report(mesh, options);
  json j{{"input", input},
         {"resolution", options.resolution},
         {"encoding", options.encoding == gim::GimEncoding::cylindrical ? "cylindrical"
                                                                        : "cartesian"},
         {"chamfer_mean", report.chamfer_mean},
         {"chamfer_p95", report.chamfer_p95},
         {"chamfer_max", report.chamfer_max},
         {"coverage_fraction", report.coverage_fraction},
         {"area_ratio_spread", report.area_ratio_spread},
         {"vertex_count", report.vertex_count},
         {"triangle_count", report.triangle_count},
         {"chart_count", report.chart_count}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

int run_batch_cmd(const std::string& manifest_path, const CommonFlags& flags,
                  const std::string& out_dir, const std::string& report_path,
                  int workers) {
  gim::JobManifest manifest = gim::load_manifest(manifest_path);
  if (flags.resolution > 0) manifest.config.resolution = flags.resolution;
  if (flags.encoding == "cartesian") manifest.config.encoding = gim::GimEncoding::cartesian;
  if (flags.encoding == "cylindrical")
    manifest.config.encoding = gim::GimEncoding::cylindrical;
  if (flags.coverage_threshold >= 0)
    manifest.config.coverage_threshold = flags.coverage_threshold;
  if (flags.gutter >= 0) manifest.config.gutter_px = flags.gutter;
  if (!out_dir.empty()) manifest.config.output_dir = out_dir;
  if (workers > 0) manifest.config.workers = workers;

  auto report = gim::run_batch(manifest);
  std::string report_out = report_path.empty()
                               ? (fs::path(manifest.config.output_dir) / "report.json").string()
                               : report_path;
  gim::write_report_json(report, report_out);
  std::cout << "batch: " << report.count(gim::ObjectStatus::accepted) << "/"
            << report.objects.size() << " accepted, "
            << report.objects_per_second << " objects/s, report -> " << report_out
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-chart geometry image codec"};
  app.require_subcommand(1);

  CommonFlags flags;
  app.add_option("--config", flags.config_path, "JSON config file (flags override it)");

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--resolution", flags.resolution, "atlas resolution (default 768)");
    cmd->add_option("--encoding", flags.encoding, "cylindrical|cartesian")
        ->check(CLI::IsMember({"cylindrical", "cartesian"}));
    cmd->add_option("--coverage-threshold", flags.coverage_threshold,
                    "manual UV coverage acceptance threshold (default 0.8)");
    cmd->add_option("--gutter", flags.gutter, "chart separation in pixels (default 2)");
  };

  auto* encode = app.add_subcommand("encode", "mesh -> geometry image + albedo");
  std::string enc_input, enc_out, enc_id;
  bool enc_exr = false, enc_rot = false;
  encode->add_option("mesh", enc_input, "input mesh (.obj/.gltf/.glb)")->required();
  encode->add_option("-o,--output", enc_out, "output directory")->required();
  encode->add_option("--id", enc_id, "object id (default: input stem)");
  encode->add_flag("--exr", enc_exr, "write float EXR instead of 16-bit PNG");
  encode->add_flag("--rotations", enc_rot, "also write rot90/180/270 augmentations");
  add_common(encode);

  auto* decode = app.add_subcommand("decode", "geometry image -> mesh");
  std::string dec_image, dec_albedo, dec_meta, dec_out;
  decode->add_option("gim", dec_image, "geometry image (.gim.png/.gim.exr)")->required();
  decode->add_option("albedo", dec_albedo, "albedo PNG to attach");
  decode->add_option("--meta", dec_meta, "sidecar path (default: derived)");
  decode->add_option("-o,--output", dec_out, "output OBJ path")->required();

  auto* validate = app.add_subcommand("validate", "check mesh or geometry image invariants");
  std::string val_input;
  validate->add_option("input", val_input, "mesh or geometry image")->required();
  add_common(validate);

  auto* stats = app.add_subcommand("stats", "round-trip fidelity report for a mesh");
  std::string stats_input;
  size_t stats_samples = 100000;
  uint64_t stats_seed = 0;
  bool stats_no_filter = false;
  stats->add_option("mesh", stats_input, "input mesh")->required();
  stats->add_option("--samples", stats_samples, "surface samples per direction");
  stats->add_option("--seed", stats_seed, "sampler seed");
  stats->add_flag("--no-coverage-filter", stats_no_filter,
                  "report even when manual coverage is below threshold");
  add_common(stats);

  auto* batch = app.add_subcommand("batch", "process a manifest of objects");
  std::string batch_manifest, batch_out, batch_report;
  int batch_workers = 0;
  batch->add_option("manifest", batch_manifest, "JSON manifest")->required();
  batch->add_option("-o,--output", batch_out, "output directory override");
  batch->add_option("--report", batch_report, "curation report path");
  batch->add_option("--workers", batch_workers, "worker thread count");
  add_common(batch);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    gim::BatchConfig config = resolve_config(flags);
    if (encode->parsed())
      return run_encode(enc_input, enc_out, config, enc_exr, enc_rot, enc_id);
    if (decode->parsed()) return run_decode(dec_image, dec_albedo, dec_meta, dec_out);
    if (validate->parsed()) return run_validate(val_input, config);
    if (stats->parsed())
      return run_stats(stats_input, config, stats_samples, stats_seed, stats_no_filter);
    if (batch->parsed())
      return run_batch_cmd(batch_manifest, flags, batch_out, batch_report, batch_workers);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
