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

#include "gim/fidelity.hpp"

#include <algorithm>
#include <cmath>

#include "gim/kernels.hpp"

namespace gim {

namespace {

// Counter-based generator: every sample is a pure function of (seed, i).
uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

double to_unit_double(uint64_t x) { return (x >> 11) * 0x1.0p-53; }

double rnd(uint64_t seed, uint64_t index) {
  return to_unit_double(splitmix64(seed * 0x2545F4914F6CDD1Dull + index));
}

struct BvhNode {
  Vec3 lo, hi;
  int left = -1, right = -1;
  int begin = 0, count = 0;  // leaf triangles when count > 0
};

double aabb_dist_sq(const BvhNode& n, const Vec3& p) {
  double d = 0;
  double ex = std::max({n.lo.x - p.x, 0.0, p.x - n.hi.x});
  double ey = std::max({n.lo.y - p.y, 0.0, p.y - n.hi.y});
  double ez = std::max({n.lo.z - p.z, 0.0, p.z - n.hi.z});
  d = ex * ex + ey * ey + ez * ez;
  return d;
}

constexpr int kLeafSize = 8;

}  // namespace

struct MeshDistanceIndex::Impl {
  // Triangles in SoA order, leaf-contiguous after the build.
  std::vector<double> ax, ay, az, bx, by, bz, cx, cy, cz;
  std::vector<BvhNode> nodes;
  int root = -1;

  kernels::TriSoA soa() const {
    return {ax.data(), ay.data(), az.data(), bx.data(), by.data(), bz.data(),
            cx.data(), cy.data(), cz.data()};
  }

  int build(std::vector<int>& order, const std::vector<Vec3>& centroids,
            const std::vector<Box3>& boxes, int begin, int end) {
    BvhNode node;
    Box3 bounds;
    for (int i = begin; i < end; i++) bounds.expand(boxes[order[i]]);
    node.lo = bounds.lo;
    node.hi = bounds.hi;
    int id = static_cast<int>(nodes.size());
    nodes.push_back(node);
    if (end - begin <= kLeafSize) {
      nodes[id].begin = begin;
      nodes[id].count = end - begin;
      return id;
    }
    Vec3 ext = bounds.extent();
    int axis = ext.x >= ext.y && ext.x >= ext.z ? 0 : (ext.y >= ext.z ? 1 : 2);
    int mid = (begin + end) / 2;
    std::nth_element(order.begin() + begin, order.begin() + mid, order.begin() + end,
                     [&](int a, int b) {
                       double ca = axis == 0   ? centroids[a].x
                                   : axis == 1 ? centroids[a].y
                                                : centroids[a].z;
                       double cb = axis == 0   ? centroids[b].x
                                   : axis == 1 ? centroids[b].y
                                                : centroids[b].z;
                       if (ca != cb) return ca < cb;
                       return a < b;
                     });
    int l = build(order, centroids, boxes, begin, mid);
    int r = build(order, centroids, boxes, mid, end);
    nodes[id].left = l;
    nodes[id].right = r;
    return id;
  }
};

MeshDistanceIndex::MeshDistanceIndex(const Mesh& mesh) : impl_(new Impl) {
  if (mesh.faces.empty()) throw MeshError("distance index: empty mesh");
  std::vector<std::array<Vec3, 3>> tris;
  tris.reserve(mesh.faces.size());
  for (const auto& f : mesh.faces) {
    std::array<Vec3, 3> t = {mesh.positions[f.pos[0]], mesh.positions[f.pos[1]],
                             mesh.positions[f.pos[2]]};
    if (triangle_area(t[0], t[1], t[2]) > 0) tris.push_back(t);
  }
  if (tris.empty()) throw MeshError("distance index: no non-degenerate triangles");

  std::vector<Vec3> centroids(tris.size());
  std::vector<Box3> boxes(tris.size());
  std::vector<int> order(tris.size());
  for (size_t i = 0; i < tris.size(); i++) {
    order[i] = static_cast<int>(i);
    Box3 b;
    for (const auto& v : tris[i]) b.expand(v);
    boxes[i] = b;
    centroids[i] = (tris[i][0] + tris[i][1] + tris[i][2]) / 3.0;
  }
  impl_->root = impl_->build(order, centroids, boxes, 0, static_cast<int>(tris.size()));

  size_t n = tris.size();
  auto& im = *impl_;
  im.ax.resize(n); im.ay.resize(n); im.az.resize(n);
  im.bx.resize(n); im.by.resize(n); im.bz.resize(n);
  im.cx.resize(n); im.cy.resize(n); im.cz.resize(n);
  for (size_t i = 0; i < n; i++) {
    const auto& t = tris[order[i]];
    im.ax[i] = t[0].x; im.ay[i] = t[0].y; im.az[i] = t[0].z;
    im.bx[i] = t[1].x; im.by[i] = t[1].y; im.bz[i] = t[1].z;
    im.cx[i] = t[2].x; im.cy[i] = t[2].y; im.cz[i] = t[2].z;
  }
}

MeshDistanceIndex::~MeshDistanceIndex() = default;
MeshDistanceIndex::MeshDistanceIndex(MeshDistanceIndex&&) noexcept = default;
MeshDistanceIndex& MeshDistanceIndex::operator=(MeshDistanceIndex&&) noexcept = default;

size_t MeshDistanceIndex::triangle_count() const { return impl_->ax.size(); }

double MeshDistanceIndex::distance_sq(const Vec3& point) const {
  const auto& im = *impl_;
  const double p[3] = {point.x, point.y, point.z};
  const auto& k = kernels::active();
  auto soa = im.soa();
  double best = 1e300;
  int stack[64];
  int top = 0;
  stack[top++] = im.root;
  double dists[kLeafSize];
  while (top > 0) {
    const BvhNode& node = im.nodes[stack[--top]];
    if (aabb_dist_sq(node, point) > best) continue;
    if (node.count > 0) {
      kernels::TriSoA leaf{soa.ax + node.begin, soa.ay + node.begin, soa.az + node.begin,
                           soa.bx + node.begin, soa.by + node.begin, soa.bz + node.begin,
                           soa.cx + node.begin, soa.cy + node.begin, soa.cz + node.begin};
      k.point_tri_dist(p, leaf, node.count, dists);
      for (int i = 0; i < node.count; i++) best = std::min(best, dists[i]);
      continue;
    }
    double dl = aabb_dist_sq(im.nodes[node.left], point);
    double dr = aabb_dist_sq(im.nodes[node.right], point);
    // Near child popped first.
    if (dl <= dr) {
      stack[top++] = node.right;
      stack[top++] = node.left;
    } else {
      stack[top++] = node.left;
      stack[top++] = node.right;
    }
  }
  return best;
}

double MeshDistanceIndex::distance_sq_brute_force(const Vec3& point) const {
  const auto& im = *impl_;
  const double p[3] = {point.x, point.y, point.z};
  size_t n = im.ax.size();
  std::vector<double> dists(n);
  kernels::active().point_tri_dist(p, im.soa(), static_cast<int>(n), dists.data());
  double best = 1e300;
  for (double d : dists) best = std::min(best, d);
  return best;
}

std::vector<Vec3> sample_surface(const Mesh& mesh, size_t n_samples, uint64_t seed) {
  if (mesh.faces.empty()) throw MeshError("sample_surface: empty mesh");
  std::vector<double> cumulative;
  std::vector<int> faces;
  cumulative.reserve(mesh.faces.size());
  double total = 0;
  for (size_t f = 0; f < mesh.faces.size(); f++) {
    const Face& face = mesh.faces[f];
    double a = triangle_area(mesh.positions[face.pos[0]], mesh.positions[face.pos[1]],
                             mesh.positions[face.pos[2]]);
    if (a <= 0) continue;
    total += a;
    cumulative.push_back(total);
    faces.push_back(static_cast<int>(f));
  }
  if (total <= 0) throw MeshError("sample_surface: zero surface area");

  std::vector<Vec3> out;
  out.reserve(n_samples);
  for (size_t i = 0; i < n_samples; i++) {
    double r = rnd(seed, i * 3) * total;
    size_t idx = std::lower_bound(cumulative.begin(), cumulative.end(), r) -
                 cumulative.begin();
    if (idx >= faces.size()) idx = faces.size() - 1;
    const Face& face = mesh.faces[faces[idx]];
    double u1 = rnd(seed, i * 3 + 1), u2 = rnd(seed, i * 3 + 2);
    double su1 = std::sqrt(u1);
    double w0 = 1.0 - su1, w1 = su1 * (1.0 - u2), w2 = su1 * u2;
    const Vec3& a = mesh.positions[face.pos[0]];
    const Vec3& b = mesh.positions[face.pos[1]];
    const Vec3& c = mesh.positions[face.pos[2]];
    out.push_back(a * w0 + b * w1 + c * w2);
  }
  return out;
}

namespace {

DistanceStats stats_from(std::vector<double>& dists) {
  DistanceStats s;
  if (dists.empty()) return s;
  double sum = 0;
  for (double d : dists) sum += d;
  s.mean = sum / static_cast<double>(dists.size());
  std::sort(dists.begin(), dists.end());
  size_t p95_idx = std::min(dists.size() - 1,
                            static_cast<size_t>(0.95 * static_cast<double>(dists.size())));
  s.p95 = dists[p95_idx];
  s.max = dists.back();
  return s;
}

std::vector<double> distances_to(const std::vector<Vec3>& points,
                                 const MeshDistanceIndex& index) {
  std::vector<double> out(points.size());
  for (size_t i = 0; i < points.size(); i++)
    out[i] = std::sqrt(index.distance_sq(points[i]));
  return out;
}

}  // namespace

ChamferResult chamfer_distance(const Mesh& a, const Mesh& b, size_t n_samples,
                               uint64_t seed) {
  if (a.faces.empty() || b.faces.empty())
    throw MeshError("chamfer_distance: empty mesh");
  MeshDistanceIndex index_a(a), index_b(b);
  auto samples_a = sample_surface(a, n_samples, seed);
  auto samples_b = sample_surface(b, n_samples, seed);
  ChamferResult result;
  auto da = distances_to(samples_a, index_b);
  result.a_to_b = stats_from(da);
  auto db = distances_to(samples_b, index_a);
  result.b_to_a = stats_from(db);
  return result;
}

AreaDistortion area_distortion(const ChartSet& charts) {
  AreaDistortion out;
  double lo = 1e300, hi = 0;
  for (const auto& c : charts.charts) {
    double ratio = c.surface_area_3d / c.atlas_uv_area();
    out.ratios.push_back(ratio);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  out.spread = out.ratios.empty() || lo <= 0 ? 1 : hi / lo;
  return out;
}

FidelityReport measure_roundtrip(const Mesh& normalized_source,
                                 const NormalizationParams& norm,
                                 const AtlasLayout& layout, const GeometryImage& gim,
                                 const Mesh& reconstructed, size_t n_samples,
                                 uint64_t seed) {
  Mesh recon_norm = reconstructed;
  for (auto& p : recon_norm.positions) p = norm.to_normalized(p);

  FidelityReport report;
  report.vertex_count = reconstructed.positions.size();
  report.triangle_count = reconstructed.faces.size();
  report.chart_count = layout.set.charts.size();
  report.area_ratio_spread = area_distortion(layout.set).spread;

  MeshDistanceIndex source_index(normalized_source);
  MeshDistanceIndex recon_index(recon_norm);

  auto recon_samples = sample_surface(recon_norm, n_samples, seed);
  auto d_recon = distances_to(recon_samples, source_index);
  DistanceStats recon_to_src = stats_from(d_recon);
  report.chamfer_mean = recon_to_src.mean;
  report.chamfer_p95 = recon_to_src.p95;
  report.chamfer_max = recon_to_src.max;
  report.chamfer.a_to_b = recon_to_src;

  auto src_samples = sample_surface(normalized_source, n_samples, seed);
  auto d_src = distances_to(src_samples, recon_index);
  double tolerance = 2.0 * (2.0 / gim.resolution);
  size_t within = 0;
  for (double d : d_src)
    if (d <= tolerance) within++;
  report.coverage_fraction =
      d_src.empty() ? 0 : static_cast<double>(within) / static_cast<double>(d_src.size());
  report.chamfer.b_to_a = stats_from(d_src);
  return report;
}

FidelityReport roundtrip_report(const Mesh& mesh, const RoundtripOptions& options,
                                RoundtripArtifacts* artifacts) {
  auto [normalized, norm] = normalize_mesh(mesh);
  ChartSet charts = split_charts(normalized);
  if (!charts.uncovered_faces.empty()) charts = unwrap_missing(normalized, charts);
  auto coverage = coverage_filter(charts, options.coverage_threshold);
  if (options.enforce_coverage && !coverage.accepted)
    throw MeshError("coverage below threshold");
  equal_area_rescale(charts);
  AtlasLayout layout = pack_atlas(std::move(charts), options.resolution, options.gutter_px);
  auto inj = verify_and_certify(normalized, layout);
  if (!inj.injective) throw MeshError("injectivity violated");

  GeometryImage gim =
      encode_gim(normalized, layout, options.resolution, options.encoding, norm);
  Mesh reconstructed = extract_mesh(gim);

  FidelityReport report = measure_roundtrip(normalized, norm, layout, gim,
                                            reconstructed, options.n_samples,
                                            options.seed);
  if (artifacts) {
    artifacts->gim = std::move(gim);
    artifacts->reconstructed = std::move(reconstructed);
    artifacts->normalized_source = std::move(normalized);
    artifacts->layout = std::move(layout);
    artifacts->norm = norm;
  }
  return report;
}

}  // namespace gim
