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

// Kernel equivalence: the AVX2 variants must reproduce the scalar
// reference bit for bit, on every size class (vector body + scalar tail).
// Accuracy of the polynomial trig is checked against libm separately.

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "gim/kernels.hpp"
#include "oracles.hpp"

using namespace gim::kernels;

namespace {

std::mt19937_64 rng(12345);

double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

bool bits_equal(double a, double b) {
  return std::memcmp(&a, &b, sizeof(double)) == 0;
}

CylSetup random_setup() {
  CylSetup s;
  s.r_max = uniform(0.5, 1.5);
  s.inv_r_max = 1.0 / s.r_max;
  s.h_min = uniform(-1.2, -0.3);
  double h_max = uniform(0.3, 1.2);
  s.h_range = h_max - s.h_min;
  s.inv_h_range = 1.0 / s.h_range;
  s.theta_offset = uniform(-3.2, 3.2);
  return s;
}

}  // namespace

TEST_CASE("kernel registry") {
  if (avx2() == nullptr) {
    MESSAGE("AVX2 kernels unavailable; equivalence tests run scalar-only");
  } else {
    CHECK(std::string(avx2()->name) == "avx2");
  }
  CHECK(std::string(scalar().name) == "scalar");
  const char* env = std::getenv("GIM_KERNELS");
  if (env && std::string(env) == "scalar") {
    CHECK(std::string(active().name) == "scalar");
  } else {
    CHECK((std::string(active().name) == "scalar" ||
           std::string(active().name) == "avx2"));
  }
}

TEST_CASE("cart_to_cyl: scalar and AVX2 agree bitwise") {
  if (!avx2()) return;
  for (int trial = 0; trial < 20; trial++) {
    CylSetup s = random_setup();
    int n = 1 + trial * 7;  // covers tails of every length mod 4
    std::vector<double> x(n), y(n), z(n);
    for (int i = 0; i < n; i++) {
      x[i] = uniform(-1, 1);
      y[i] = uniform(-1, 1);
      z[i] = uniform(-1, 1);
    }
    if (n > 2) x[2] = z[2] = 0.0;  // axis point
    std::vector<double> r1(n), t1(n), h1(n), r2(n), t2(n), h2(n);
    scalar().cart_to_cyl(s, n, x.data(), y.data(), z.data(), r1.data(), t1.data(),
                         h1.data());
    avx2()->cart_to_cyl(s, n, x.data(), y.data(), z.data(), r2.data(), t2.data(),
                        h2.data());
    for (int i = 0; i < n; i++) {
      CHECK(bits_equal(r1[i], r2[i]));
      CHECK(bits_equal(t1[i], t2[i]));
      CHECK(bits_equal(h1[i], h2[i]));
    }
  }
}

TEST_CASE("cyl_to_cart: scalar and AVX2 agree bitwise") {
  if (!avx2()) return;
  for (int trial = 0; trial < 20; trial++) {
    CylSetup s = random_setup();
    int n = 1 + trial * 5;
    std::vector<double> r(n), t(n), h(n);
    for (int i = 0; i < n; i++) {
      r[i] = uniform(0, 1);
      t[i] = uniform(0, 1);
      h[i] = uniform(0, 1);
    }
    std::vector<double> x1(n), y1(n), z1(n), x2(n), y2(n), z2(n);
    scalar().cyl_to_cart(s, n, r.data(), t.data(), h.data(), x1.data(), y1.data(),
                         z1.data());
    avx2()->cyl_to_cart(s, n, r.data(), t.data(), h.data(), x2.data(), y2.data(),
                        z2.data());
    for (int i = 0; i < n; i++) {
      CHECK(bits_equal(x1[i], x2[i]));
      CHECK(bits_equal(y1[i], y2[i]));
      CHECK(bits_equal(z1[i], z2[i]));
    }
  }
}

TEST_CASE("polynomial trig matches libm within 4e-14") {
  // Independent trigonometric recomputation over the codec's input range.
  CylSetup s;
  const double two_pi = 6.283185307179586476925286766559;
  for (int i = 0; i < 20000; i++) {
    double x = uniform(-1.5, 1.5), z = uniform(-1.5, 1.5), y = uniform(-1, 1);
    double r, t, h;
    scalar().cart_to_cyl(s, 1, &x, &y, &z, &r, &t, &h);
    if (x * x + z * z == 0) continue;
    double expect = std::atan2(z, x) / two_pi;
    if (expect < 0) expect += 1.0;
    if (expect >= 1.0) expect -= 1.0;
    double diff = std::fabs(t - expect);
    diff = std::min(diff, 1.0 - diff);  // wrap distance
    CHECK(diff < 4e-14);
  }
  for (int i = 0; i < 20000; i++) {
    double r = uniform(0, 1.5), t = uniform(0, 1), h = uniform(0, 1);
    double x, y, z;
    scalar().cyl_to_cart(s, 1, &r, &t, &h, &x, &y, &z);
    double angle = t * two_pi;
    CHECK(std::fabs(x - r * std::cos(angle)) < 4e-14);
    CHECK(std::fabs(z - r * std::sin(angle)) < 4e-14);
  }
}

TEST_CASE("cylindrical round trip recovers 1e5 points within 1e-6") {
  const auto& k = active();
  CylSetup s = random_setup();
  const int n = 100000;
  std::vector<double> x(n), y(n), z(n), r(n), t(n), h(n), x2(n), y2(n), z2(n);
  for (int i = 0; i < n; i++) {
    double a = uniform(0, 6.28), rad = uniform(1e-6, s.r_max);
    x[i] = rad * std::cos(a);
    z[i] = rad * std::sin(a);
    y[i] = s.h_min + uniform(0, 1) * s.h_range;
  }
  k.cart_to_cyl(s, n, x.data(), y.data(), z.data(), r.data(), t.data(), h.data());
  k.cyl_to_cart(s, n, r.data(), t.data(), h.data(), x2.data(), y2.data(), z2.data());
  double max_err = 0;
  for (int i = 0; i < n; i++) {
    max_err = std::max(max_err, std::fabs(x2[i] - x[i]));
    max_err = std::max(max_err, std::fabs(y2[i] - y[i]));
    max_err = std::max(max_err, std::fabs(z2[i] - z[i]));
  }
  CHECK(max_err < 1e-6);
}

TEST_CASE("axis-aligned cylindrical cases") {
  CylSetup s;  // defaults: r_max 1, h in [-1,1], no offset
  double x = 1, y = 0, z = 0, r, t, h;
  scalar().cart_to_cyl(s, 1, &x, &y, &z, &r, &t, &h);
  CHECK(r == doctest::Approx(1.0));
  CHECK(t == doctest::Approx(0.0));
  CHECK(h == doctest::Approx(0.5));

  x = 0, z = 1;
  scalar().cart_to_cyl(s, 1, &x, &y, &z, &r, &t, &h);
  CHECK(t == doctest::Approx(0.25));  // quarter turn

  x = 0, z = 0;  // on the axis: theta convention is 0
  scalar().cart_to_cyl(s, 1, &x, &y, &z, &r, &t, &h);
  CHECK(r == 0.0);
  CHECK(t == 0.0);
}

TEST_CASE("raster_row: scalar and AVX2 agree bitwise") {
  if (!avx2()) return;
  for (int trial = 0; trial < 200; trial++) {
    TriRowSetup setup;
    for (int j = 0; j < 3; j++) {
      setup.edge_dx[j] = uniform(-8, 8);
      setup.edge_dy[j] = uniform(-8, 8);
      setup.edge_ox[j] = uniform(0, 16);
      setup.edge_oy[j] = uniform(0, 16);
      setup.edge_sign[j] = rng() & 1 ? 1.0 : -1.0;
      setup.accept_zero[j] = rng() & 1;
    }
    for (int v = 0; v < 3; v++) {
      setup.vx[v] = uniform(-1, 1);
      setup.vy[v] = uniform(-1, 1);
      setup.vz[v] = uniform(-1, 1);
    }
    setup.inv_area2 = uniform(0.01, 2);
    int n = 1 + static_cast<int>(rng() % 23);
    double px0 = std::floor(uniform(0, 16)) + 0.5;
    double py = std::floor(uniform(0, 16)) + 0.5;
    std::vector<uint8_t> c1(n), c2(n);
    std::vector<double> x1(n), y1(n), z1(n), x2(n), y2(n), z2(n);
    scalar().raster_row(setup, px0, py, n, c1.data(), x1.data(), y1.data(), z1.data());
    avx2()->raster_row(setup, px0, py, n, c2.data(), x2.data(), y2.data(), z2.data());
    for (int i = 0; i < n; i++) {
      CHECK(c1[i] == c2[i]);
      CHECK(bits_equal(x1[i], x2[i]));
      CHECK(bits_equal(y1[i], y2[i]));
      CHECK(bits_equal(z1[i], z2[i]));
    }
  }
}

TEST_CASE("quantize/dequantize: scalar and AVX2 agree bitwise") {
  if (!avx2()) return;
  for (int trial = 0; trial < 30; trial++) {
    size_t n = 1 + rng() % 100;
    std::vector<double> v(n);
    for (auto& e : v) e = uniform(-0.2, 1.2);
    if (n > 1) v[1] = 1.5 / 65535.0;  // exact rounding boundary
    std::vector<uint16_t> q1(n), q2(n);
    scalar().quantize_u16(n, v.data(), q1.data());
    avx2()->quantize_u16(n, v.data(), q2.data());
    CHECK(q1 == q2);
    std::vector<double> d1(n), d2(n);
    scalar().dequantize_u16(n, q1.data(), d1.data());
    avx2()->dequantize_u16(n, q1.data(), d2.data());
    for (size_t i = 0; i < n; i++) CHECK(bits_equal(d1[i], d2[i]));
  }
}

TEST_CASE("quantize round trip stays within half a step") {
  const auto& k = active();
  size_t n = 4096;
  std::vector<double> v(n), d(n);
  std::vector<uint16_t> q(n);
  for (auto& e : v) e = uniform(0, 1);
  k.quantize_u16(n, v.data(), q.data());
  k.dequantize_u16(n, q.data(), d.data());
  for (size_t i = 0; i < n; i++)
    CHECK(std::fabs(d[i] - v[i]) <= 0.5 / 65535.0 + 1e-12);
}

TEST_CASE("point_tri_dist: paths agree bitwise and match the oracle") {
  const int n = 257;
  std::vector<double> ax(n), ay(n), az(n), bx(n), by(n), bz(n), cx(n), cy(n), cz(n);
  for (int i = 0; i < n; i++) {
    ax[i] = uniform(-2, 2); ay[i] = uniform(-2, 2); az[i] = uniform(-2, 2);
    bx[i] = uniform(-2, 2); by[i] = uniform(-2, 2); bz[i] = uniform(-2, 2);
    cx[i] = uniform(-2, 2); cy[i] = uniform(-2, 2); cz[i] = uniform(-2, 2);
  }
  TriSoA soa{ax.data(), ay.data(), az.data(), bx.data(), by.data(), bz.data(),
             cx.data(), cy.data(), cz.data()};
  for (int trial = 0; trial < 50; trial++) {
    double p[3] = {uniform(-3, 3), uniform(-3, 3), uniform(-3, 3)};
    std::vector<double> d1(n), d2(n);
    scalar().point_tri_dist(p, soa, n, d1.data());
    if (avx2()) {
      avx2()->point_tri_dist(p, soa, n, d2.data());
      for (int i = 0; i < n; i++) CHECK(bits_equal(d1[i], d2[i]));
    }
    for (int i = 0; i < n; i += 17) {
      double expect = oracles::point_triangle_dist_sq(
          {p[0], p[1], p[2]}, {ax[i], ay[i], az[i]}, {bx[i], by[i], bz[i]},
          {cx[i], cy[i], cz[i]});
      CHECK(d1[i] == doctest::Approx(expect).epsilon(1e-9));
    }
  }
}

TEST_CASE("mask_popcount: scalar and AVX2 agree") {
  for (size_t n : {size_t{0}, size_t{1}, size_t{31}, size_t{32}, size_t{1000}}) {
    std::vector<uint8_t> mask(n);
    for (auto& m : mask) m = rng() % 3 == 0 ? 0 : static_cast<uint8_t>(rng() & 0xFF);
    size_t expect = 0;
    for (auto m : mask) expect += m != 0;
    CHECK(scalar().mask_popcount(mask.data(), n) == expect);
    if (avx2()) CHECK(avx2()->mask_popcount(mask.data(), n) == expect);
  }
}
