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

// Drives the gimtool binary end to end. The binary path arrives via the
// GIMTOOL environment variable set by CTest.

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "fixtures.hpp"
#include "gim/fidelity.hpp"
#include "gim/image_io.hpp"

using namespace gim;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string tool() {
  if (const char* env = std::getenv("GIMTOOL")) return env;
  for (const char* guess : {"./gimtool", "../gimtool", "build/gimtool"}) {
    if (fs::exists(guess)) return fs::absolute(guess).string();
  }
  REQUIRE_MESSAGE(false, "GIMTOOL env var must point at the binary");
  return {};
}

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& args) {
  auto out_path = fs::temp_directory_path() / "gimcodec-cli-out.txt";
  std::string cmd = tool() + " " + args + " > " + out_path.string() + " 2>&1";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_path);
  r.output.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  return r;
}

fs::path fresh_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / "gimcodec-cli" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string write_cube(const fs::path& dir) {
  auto path = dir / "cube.obj";
  std::ofstream out(path, std::ios::binary);
  save_mesh_obj(fixtures::cube(), out);
  return path.string();
}

}  // namespace

TEST_CASE("usage errors exit with code 2") {
  CHECK(run("").exit_code == 2);
  CHECK(run("encode").exit_code == 2);
  CHECK(run("encode --definitely-not-a-flag x").exit_code == 2);
  CHECK(run("frobnicate").exit_code == 2);
}

TEST_CASE("encode -> decode round trip through files") {
  auto dir = fresh_dir("roundtrip");
  std::string cube = write_cube(dir);

  auto enc = run("encode " + cube + " -o " + dir.string() + " --resolution 768");
  CAPTURE(enc.output);
  CHECK(enc.exit_code == 0);
  auto gim_path = dir / "cube.gim.png";
  REQUIRE(fs::exists(gim_path));
  REQUIRE(fs::exists(dir / "cube.albedo.png"));
  REQUIRE(fs::exists(dir / "cube.meta"));

  // Sidecar reports the valid pixel count within the 768 budget.
  json meta;
  std::ifstream meta_in(dir / "cube.meta");
  meta_in >> meta;
  CHECK(meta.at("valid_pixels").get<size_t>() <= size_t{589824});
  CHECK(meta.at("resolution") == 768);

  auto dec = run("decode " + gim_path.string() + " " +
                 (dir / "cube.albedo.png").string() + " -o " +
                 (dir / "recon.obj").string());
  CAPTURE(dec.output);
  CHECK(dec.exit_code == 0);
  REQUIRE(fs::exists(dir / "recon.obj"));
  CHECK(fs::exists(dir / "recon.mtl"));

  // decode(encode(cube)): chamfer within the pixel tolerance.
  auto [recon, rep] = load_mesh_file((dir / "recon.obj").string());
  auto [source, srep] = load_mesh_file(cube);
  auto [src_norm, params] = normalize_mesh(source);
  Mesh recon_norm = recon;
  for (auto& p : recon_norm.positions) p = params.to_normalized(p);
  auto chamfer = chamfer_distance(recon_norm, src_norm, 20000, 0);
  CHECK(chamfer.a_to_b.p95 <= 2.0 * (2.0 / 768.0));
}

TEST_CASE("validate: meshes and geometry images, exit codes 0/1") {
  auto dir = fresh_dir("validate");
  std::string cube = write_cube(dir);
  auto ok = run("validate " + cube + " --resolution 256");
  CAPTURE(ok.output);
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("\"valid\": true") != std::string::npos);

  // A geometry image with finite data outside the mask must fail with a
  // machine-readable reason.
  GeometryImage bad;
  bad.resolution = 4;
  bad.positions.assign(4 * 4 * 3, 0.0);
  bad.mask.assign(4 * 4, 0);
  bad.chart_ids.assign(4 * 4, -1);
  bad.mask[5] = 1;
  bad.chart_ids[5] = 0;
  bad.positions[5 * 3] = 0.5;
  ChartRecord rec;
  rec.box_x = 0;
  rec.box_y = 0;
  rec.box_w = 4;
  rec.box_h = 4;
  bad.chart_table.push_back(rec);
  bad.positions[0] = 0.25;  // data outside the mask
  write_gim_image(bad, (dir / "bad.gim.png").string());
  write_gim_meta(bad, (dir / "bad.meta").string());
  auto invalid = run("validate " + (dir / "bad.gim.png").string());
  CAPTURE(invalid.output);
  CHECK(invalid.exit_code == 1);
  CHECK(invalid.output.find("mask/channel inconsistency") != std::string::npos);

  // The same image with the stray value removed passes.
  bad.positions[0] = 0.0;
  write_gim_image(bad, (dir / "good.gim.png").string());
  write_gim_meta(bad, (dir / "good.meta").string());
  CHECK(run("validate " + (dir / "good.gim.png").string()).exit_code == 0);
}

TEST_CASE("stats prints a fidelity report") {
  auto dir = fresh_dir("stats");
  std::string cube = write_cube(dir);
  auto r = run("stats " + cube + " --resolution 192 --samples 2000 --seed 7");
  CAPTURE(r.output);
  CHECK(r.exit_code == 0);
  json j = json::parse(r.output);
  CHECK(j.at("chamfer_p95").get<double>() <= 2.0 * (2.0 / 192.0));
  CHECK(j.at("coverage_fraction").get<double>() >= 0.99);
  CHECK(j.at("chart_count") == 6);
}

TEST_CASE("batch processes a manifest and writes the curation report") {
  auto dir = fresh_dir("batch");
  std::string cube = write_cube(dir);
  {
    std::ofstream out(dir / "strip.obj", std::ios::binary);
    save_mesh_obj(fixtures::cube_missing(2), out);
  }
  json manifest{
      {"output_dir", (dir / "out").string()},
      {"config",
       {{"resolution", 96}, {"fidelity", false}, {"workers", 2}}},
      {"objects",
       {{{"id", "cube"}, {"path", "cube.obj"}, {"captions", {"a cube"}}},
        {{"id", "lowcov"}, {"path", "strip.obj"}}}}};
  {
    std::ofstream out(dir / "jobs.json");
    out << manifest.dump(2);
  }
  auto r = run("batch " + (dir / "jobs.json").string());
  CAPTURE(r.output);
  CHECK(r.exit_code == 0);
  REQUIRE(fs::exists(dir / "out" / "report.json"));
  json report;
  std::ifstream in(dir / "out" / "report.json");
  in >> report;
  CHECK(report.at("counts").at("accepted") == 1);
  CHECK(report.at("counts").at("rejected_coverage") == 1);
  CHECK(fs::exists(dir / "out" / "cube.gim.png"));
  // Captions pass through into the sidecar.
  json meta;
  std::ifstream meta_in(dir / "out" / "cube.meta");
  meta_in >> meta;
  CHECK(meta.at("captions")[0] == "a cube");
}

TEST_CASE("encode honors the coverage threshold flag") {
  auto dir = fresh_dir("threshold");
  {
    std::ofstream out(dir / "lowcov.obj", std::ios::binary);
    save_mesh_obj(fixtures::cube_missing(2), out);
  }
  auto strict = run("encode " + (dir / "lowcov.obj").string() + " -o " +
                    dir.string() + " --resolution 96");
  CHECK(strict.exit_code == 1);
  CHECK(strict.output.find("rejected_coverage") != std::string::npos);
  auto lax = run("encode " + (dir / "lowcov.obj").string() + " -o " + dir.string() +
                 " --resolution 96 --coverage-threshold 0.5");
  CAPTURE(lax.output);
  CHECK(lax.exit_code == 0);
}

TEST_CASE("encode --exr writes a float geometry image that decodes") {
  auto dir = fresh_dir("exr");
  std::string cube = write_cube(dir);
  auto enc = run("encode " + cube + " -o " + dir.string() +
                 " --resolution 96 --exr");
  CAPTURE(enc.output);
  CHECK(enc.exit_code == 0);
  REQUIRE(fs::exists(dir / "cube.gim.exr"));
  auto dec = run("decode " + (dir / "cube.gim.exr").string() + " -o " +
                 (dir / "recon.obj").string());
  CHECK(dec.exit_code == 0);
  CHECK(fs::exists(dir / "recon.obj"));
}
