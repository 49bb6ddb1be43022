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
#include "tetbiot/reference_fields.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>

#include "tetbiot/errors.hpp"
#include "tetbiot/quadrature.hpp"

namespace tetbiot {

namespace {
constexpr double kPi = std::numbers::pi;
}

// Hill's spherical vortex ---------------------------------------------------

double hill_translation_speed(const HillVortex& hill) {
  return 2.0 * hill.strength * hill.radius * hill.radius / 15.0;
}

Vec3 hill_velocity(const Vec3& p, const HillVortex& hill) {
  const double A = hill.strength;
  const double a2 = hill.radius * hill.radius;
  const double U = hill_translation_speed(hill);
  const double rho2 = norm2(p);
  Vec3 u;
  if (rho2 <= a2) {
    // u_r (x/r, y/r) with u_r = A r z / 5.
    const double s = A * p.z / 5.0;
    const double r2 = p.x * p.x + p.y * p.y;
    u = {s * p.x, s * p.y, A / 5.0 * (5.0 / 3.0 * a2 - 2.0 * r2 - p.z * p.z)};
  } else {
    const double rho = std::sqrt(rho2);
    const double c = 0.5 * U * a2 * hill.radius / (rho2 * rho2 * rho);
    u = {3.0 * c * p.z * p.x, 3.0 * c * p.z * p.y, c * (3.0 * p.z * p.z - rho2)};
  }
  if (hill.frame == HillFrame::vortex_fixed) u.z -= U;
  return u;
}

Vec3 hill_vorticity(const Vec3& p, const HillVortex& hill) {
  if (norm2(p) > hill.radius * hill.radius) return {};
  return {-hill.strength * p.y, hill.strength * p.x, 0.0};
}

// Gaussian ring ---------------------------------------------------------------

double ring_vorticity_theta(double r, double z, const GaussianRing& ring) {
  const double dr = r - ring.radius;
  const double s2 = ring.core * ring.core;
  return ring.circulation / (2.0 * kPi * s2) * std::exp(-(dr * dr + z * z) / (2.0 * s2));
}

Vec3 ring_vorticity(const Vec3& p, const GaussianRing& ring) {
  const double r = std::hypot(p.x, p.y);
  if (r == 0.0) return {};
  const double w = ring_vorticity_theta(r, p.z, ring) / r;
  return {-w * p.y, w * p.x, 0.0};
}

namespace {

// K and E from the complementary parameter mc = 1 - m, which stays accurate
// as m -> 1.
EllipticKE elliptic_ke_complement(double mc) {
  double a = 1.0;
  double b = std::sqrt(mc);
  double c2 = 1.0 - mc;  // c_0^2
  double power = 0.5;
  double sum = power * c2;
  for (int it = 0; it < 64; ++it) {
    const double an = 0.5 * (a + b);
    const double cn = 0.5 * (a - b);
    b = std::sqrt(a * b);
    a = an;
    power *= 2.0;
    c2 = cn * cn;
    sum += power * c2;
    if (std::fabs(cn) <= 1e-14 * a) break;
  }
  const double K = kPi / (2.0 * a);
  return {K, K * (1.0 - sum)};
}

}  // namespace

EllipticKE elliptic_ke(double m) {
  if (!(m >= 0.0 && m < 1.0)) throw std::domain_error("elliptic_ke: m outside [0, 1)");
  return elliptic_ke_complement(1.0 - m);
}

double filament_stream_function(double r, double z, double r1, double z1) {
  if (r <= 0.0 || r1 <= 0.0) return 0.0;
  const double dz = z - z1;
  const double d2 = (r + r1) * (r + r1) + dz * dz;
  const double near2 = (r - r1) * (r - r1) + dz * dz;
  if (near2 == 0.0) throw std::domain_error("filament_stream_function: on the filament");
  const auto [K, E] = elliptic_ke_complement(near2 / d2);
  const double d = std::sqrt(d2);
  return (d * (K - E) - 2.0 * r * r1 / d * K) / (2.0 * kPi);
}

namespace {

const GaussRule& radial_rule(int order) {
  static const GaussRule fixed = gauss_legendre(kRingRadialNodes);
  if (order == kRingRadialNodes) return fixed;
  thread_local GaussRule other;
  if (other.order != order) other = gauss_legendre(order);
  return other;
}

}  // namespace

double ring_stream_function(double r, double z, const GaussianRing& ring, int angles,
                            int radial) {
  const double Rs = ring.support_radius();
  const double cr = r - ring.radius;
  const double d2 = cr * cr + z * z;
  const GaussRule& g = radial_rule(radial);
  const double dalpha = 2.0 * kPi / angles;
  double psi = 0.0;

  if (d2 < Rs * Rs) {
    // Polar coordinates about the target: rho = rho_exit s^2 clusters nodes
    // at the log singularity and cancels it with the Jacobian.
    for (int j = 0; j < angles; ++j) {
      const double alpha = (j + 0.5) * dalpha;
      const double er = std::cos(alpha);
      const double ez = std::sin(alpha);
      const double b = er * cr + ez * z;
      const double rho_exit = -b + std::sqrt(b * b - (d2 - Rs * Rs));
      double line = 0.0;
      for (int i = 0; i < radial; ++i) {
        const double s = 0.5 * (1.0 + g.nodes[static_cast<std::size_t>(i)]);
        const double ws = 0.5 * g.weights[static_cast<std::size_t>(i)];
        const double rho = rho_exit * s * s;
        const double r1 = r + rho * er;
        const double z1 = z + rho * ez;
        const double w = ring_vorticity_theta(r1, z1, ring);
        line += ws * w * filament_stream_function(r, z, r1, z1) * rho * 2.0 * rho_exit * s;
      }
      psi += line * dalpha;
    }
  } else {
    // Target outside the support: polar coordinates about the core centre.
    for (int j = 0; j < angles; ++j) {
      const double alpha = (j + 0.5) * dalpha;
      const double er = std::cos(alpha);
      const double ez = std::sin(alpha);
      double line = 0.0;
      for (int i = 0; i < radial; ++i) {
        const double rho = 0.5 * Rs * (1.0 + g.nodes[static_cast<std::size_t>(i)]);
        const double wr = 0.5 * Rs * g.weights[static_cast<std::size_t>(i)];
        const double r1 = ring.radius + rho * er;
        const double z1 = rho * ez;
        const double w = ring_vorticity_theta(r1, z1, ring);
        line += wr * w * filament_stream_function(r, z, r1, z1) * rho;
      }
      psi += line * dalpha;
    }
  }
  return psi;
}

RingTableGrid core_grid(const GaussianRing& ring, double half_width, double step) {
  const int n = static_cast<int>(std::ceil(2.0 * half_width / step)) + 1;
  const double span = (n - 1) * step;
  return {ring.radius - 0.5 * span, ring.radius + 0.5 * span, -0.5 * span, 0.5 * span, n, n};
}

RingVelocityTable::RingVelocityTable(const GaussianRing& ring, const RingTableGrid& grid)
    : ring_(ring), grid_(grid) {
  if (grid.nr < 2 || grid.nz < 2 || !(grid.r_max > grid.r_min) || !(grid.z_max > grid.z_min)) {
    throw std::invalid_argument("RingVelocityTable: empty grid");
  }
  if (!(ring.radius > ring.support_radius()) || !(ring.core > 0.0)) {
    throw std::invalid_argument("RingVelocityTable: need R > 6 sigma > 0");
  }
  dr_ = (grid.r_max - grid.r_min) / (grid.nr - 1);
  dz_ = (grid.z_max - grid.z_min) / (grid.nz - 1);
  constexpr int g = 2;  // ghost layers for the 5-point stencil
  if (!(grid.r_min - g * dr_ > 0.0)) {
    throw std::invalid_argument("RingVelocityTable: grid (with stencil) must stay at r > 0");
  }

  const int mr = grid.nr + 2 * g;
  const int mz = grid.nz + 2 * g;
  std::vector<double> ext(static_cast<std::size_t>(mr) * static_cast<std::size_t>(mz));
  auto at = [&](int i, int j) -> double& {
    return ext[static_cast<std::size_t>(j + g) * static_cast<std::size_t>(mr) +
               static_cast<std::size_t>(i + g)];
  };
  for (int j = -g; j < grid.nz + g; ++j) {
    for (int i = -g; i < grid.nr + g; ++i) {
      at(i, j) = ring_stream_function(r_node(i), z_node(j), ring_);
    }
  }

  const std::size_t n = static_cast<std::size_t>(grid.nr) * static_cast<std::size_t>(grid.nz);
  psi_.resize(n);
  ur_.resize(n);
  uz_.resize(n);
  for (int j = 0; j < grid.nz; ++j) {
    for (int i = 0; i < grid.nr; ++i) {
      const double dpsi_dr =
          (-at(i + 2, j) + 8.0 * at(i + 1, j) - 8.0 * at(i - 1, j) + at(i - 2, j)) / (12.0 * dr_);
      const double dpsi_dz =
          (-at(i, j + 2) + 8.0 * at(i, j + 1) - 8.0 * at(i, j - 1) + at(i, j - 2)) / (12.0 * dz_);
      const double r = r_node(i);
      psi_[index(i, j)] = at(i, j);
      ur_[index(i, j)] = -dpsi_dz / r;
      uz_[index(i, j)] = dpsi_dr / r;
    }
  }
}

RingVelocityTable::Meridional RingVelocityTable::at(double r, double z) const {
  const double fr = (r - grid_.r_min) / dr_;
  const double fz = (z - grid_.z_min) / dz_;
  if (!(fr >= 0.0 && fr <= grid_.nr - 1 && fz >= 0.0 && fz <= grid_.nz - 1)) {
    throw RangeError("ring table query (r=" + std::to_string(r) + ", z=" + std::to_string(z) +
                     ") outside the tabulated grid");
  }
  const int i = std::min(static_cast<int>(fr), grid_.nr - 2);
  const int j = std::min(static_cast<int>(fz), grid_.nz - 2);
  const double tr = fr - i;
  const double tz = fz - j;
  auto lerp2 = [&](const std::vector<double>& f) {
    const double a = (1.0 - tr) * f[index(i, j)] + tr * f[index(i + 1, j)];
    const double b = (1.0 - tr) * f[index(i, j + 1)] + tr * f[index(i + 1, j + 1)];
    return (1.0 - tz) * a + tz * b;
  };
  return {lerp2(ur_), lerp2(uz_)};
}

Vec3 RingVelocityTable::velocity(const Vec3& p) const {
  const double r = std::hypot(p.x, p.y);
  const auto m = at(r, p.z);
  return {m.ur * p.x / r, m.ur * p.y / r, m.uz};
}

void RingVelocityTable::write_csv(const std::filesystem::path& path) const {
  struct Closer {
    void operator()(std::FILE* f) const { std::fclose(f); }
  };
  std::unique_ptr<std::FILE, Closer> f(std::fopen(path.string().c_str(), "w"));
  if (!f) throw IoError("cannot write " + path.string());
  std::fputs("r,z,ur,uz\n", f.get());
  for (int j = 0; j < grid_.nz; ++j) {
    for (int i = 0; i < grid_.nr; ++i) {
      std::fprintf(f.get(), "%.17g,%.17g,%.17g,%.17g\n", r_node(i), z_node(j), ur_node(i, j),
                   uz_node(i, j));
    }
  }
  if (std::fclose(f.release()) != 0) throw IoError("error writing " + path.string());
}

std::vector<Vec3> ring_station_points(const GaussianRing& ring, int stations, int k,
                                      double extent_sigmas) {
  if (stations < 1 || k < 1) throw std::invalid_argument("ring_station_points: empty layout");
  const double E = extent_sigmas * ring.core;
  std::vector<Vec3> pts;
  pts.reserve(static_cast<std::size_t>(stations) * static_cast<std::size_t>(k * k));
  for (int s = 0; s < stations; ++s) {
    const double beta = 2.0 * kPi * (s + 0.5) / stations;
    const double cb = std::cos(beta);
    const double sb = std::sin(beta);
    for (int j = 0; j < k; ++j) {
      const double z = -E + 2.0 * E * (j + 0.5) / k;
      for (int i = 0; i < k; ++i) {
        const double r = ring.radius - E + 2.0 * E * (i + 0.5) / k;
        pts.push_back({r * cb, r * sb, z});
      }
    }
  }
  return pts;
}

// Error statistics ------------------------------------------------------------

ErrorStats rms_error(std::span<const Vec3> computed, std::span<const Vec3> reference,
                     double seconds) {
  if (computed.size() != reference.size()) {
    throw std::invalid_argument("rms_error: " + std::to_string(computed.size()) +
                                " computed values for " + std::to_string(reference.size()) +
                                " reference values");
  }
  ErrorStats st;
  st.count = computed.size();
  st.seconds = seconds;
  if (st.count == 0) return st;
  double err2 = 0.0;
  double ref2 = 0.0;
  for (std::size_t i = 0; i < computed.size(); ++i) {
    const double e2 = norm2(computed[i] - reference[i]);
    err2 += e2;
    ref2 += norm2(reference[i]);
    st.max_error = std::max(st.max_error, std::sqrt(e2));
  }
  const auto n = static_cast<double>(st.count);
  st.rms_abs = std::sqrt(err2 / n);
  st.ref_rms = std::sqrt(ref2 / n);
  st.rms = st.ref_rms > 0.0 ? st.rms_abs / st.ref_rms : st.rms_abs;
  return st;
}

}  // namespace tetbiot
