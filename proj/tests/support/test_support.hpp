//
//  tetbiot: Biot-Savart velocity evaluation on tetrahedral meshes.
//
//  Copyright 2026 The tetbiot Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.
//
// Helpers shared by the unit and acceptance tests: seeded random geometry,
// an independent 10-point Gauss-Legendre table and scratch directories.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include "tetbiot/geometry.hpp"
#include "tetbiot/vec3.hpp"

namespace tetbiot::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(gen_);
  }
  Vec3 vec(double lo = -1.0, double hi = 1.0) { return {uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)}; }
  Vec3 unit() {
    for (;;) {
      const Vec3 v = vec();
      const double n2 = norm2(v);
      if (n2 > 1e-4 && n2 <= 1.0) return (1.0 / std::sqrt(n2)) * v;
    }
  }
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

inline double signed_volume6(const std::array<Vec3, 4>& p) {
  return dot(p[1] - p[0], cross(p[2] - p[0], p[3] - p[0]));
}

inline double diameter2(const std::array<Vec3, 4>& p) {
  double d2 = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) d2 = std::max(d2, norm2(p[i] - p[j]));
  }
  return d2;
}

/// Ray from a random origin in [-spread, spread]^3. Half of the draws aim
/// at a random point of [-1, 1]^3 so that hits are common; the rest point
/// in a uniform random direction.
inline Ray random_ray(Rng& rng, double spread) {
  const Vec3 origin = rng.vec(-spread, spread);
  if (rng.uniform() < 0.5) return {origin, rng.unit()};
  for (;;) {
    const Vec3 d = rng.vec() - origin;
    const double n = norm(d);
    if (n > 1e-6) return {origin, (1.0 / n) * d};
  }
}

/// Random tet inside [-1, 1]^3 whose volume is not tiny relative to its
/// diameter (|6V| >= 0.05 diam^3).
inline std::array<Vec3, 4> random_tet(Rng& rng) {
  for (;;) {
    std::array<Vec3, 4> p{rng.vec(), rng.vec(), rng.vec(), rng.vec()};
    const double d = std::sqrt(diameter2(p));
    const double v6 = signed_volume6(p);
    if (std::fabs(v6) < 0.05 * d * d * d) continue;
    if (v6 < 0.0) std::swap(p[2], p[3]);
    return p;
  }
}

/// Rotation matrix (rows) from a unit axis and angle (Rodrigues).
struct Rotation {
  std::array<Vec3, 3> rows;
  Vec3 operator()(const Vec3& v) const { return {dot(rows[0], v), dot(rows[1], v), dot(rows[2], v)}; }
};

inline Rotation rotation(const Vec3& axis, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const double t = 1.0 - c;
  const double x = axis.x, y = axis.y, z = axis.z;
  return {{{{t * x * x + c, t * x * y - s * z, t * x * z + s * y},
            {t * x * y + s * z, t * y * y + c, t * y * z - s * x},
            {t * x * z - s * y, t * y * z + s * x, t * z * z + c}}}};
}

/// Tabulated 10-point Gauss-Legendre rule on [-1, 1] (positive half;
/// standard reference values), independent of gauss_legendre.
inline constexpr std::array<double, 5> kGauss10Nodes{
    0.1488743389816312108848260, 0.4333953941292471907992659, 0.6794095682990244062343274,
    0.8650633666889845107320967, 0.9739065285171717200779640};
inline constexpr std::array<double, 5> kGauss10Weights{
    0.2955242247147528701738930, 0.2692667193099963550912269, 0.2190863625159820439955349,
    0.1494513491505805931457763, 0.0666713443086881375935688};

/// Integral over [a, b] of f by the tabulated 10-point rule.
template <typename F>
auto gauss10(F&& f, double a, double b) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  auto sum = half * kGauss10Weights[0] * (f(mid - half * kGauss10Nodes[0]) +
                                          f(mid + half * kGauss10Nodes[0]));
  for (std::size_t i = 1; i < kGauss10Nodes.size(); ++i) {
    sum += half * kGauss10Weights[i] *
           (f(mid - half * kGauss10Nodes[i]) + f(mid + half * kGauss10Nodes[i]));
  }
  return sum;
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("tetbiot_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline double rel_diff(const Vec3& a, const Vec3& b) {
  const double scale = std::max(norm(a), norm(b));
  return scale == 0.0 ? 0.0 : norm(a - b) / scale;
}

}  // namespace tetbiot::testing
