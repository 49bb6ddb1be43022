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
// Analytic and tabulated reference velocity fields, and error statistics.
//
// Axisymmetric fields use cylindrical (r, theta, z) about the z axis with
// theta-hat = (-y, x, 0)/r. Positive azimuthal vorticity drives fluid in +z
// along the axis.

#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "tetbiot/vec3.hpp"

namespace tetbiot {

// Hill's spherical vortex ---------------------------------------------------

enum class HillFrame {
  /// Fluid at rest at infinity; the frame the Biot-Savart integral yields.
  fluid_at_rest,
  /// Moving with the vortex; the sphere boundary is a stream surface.
  vortex_fixed,
};

struct HillVortex {
  double strength = 1.0;  // A: omega_theta = A r inside the sphere
  double radius = 1.0;    // a
  HillFrame frame = HillFrame::fluid_at_rest;
};

/// Self-induced translation speed 2 A a^2 / 15 along +z.
double hill_translation_speed(const HillVortex& hill);

/// Interior: u_r = A r z / 5, u_z = (A/5)(5a^2/3 - 2r^2 - z^2) (at rest at
/// infinity). Exterior: the potential dipole of a sphere moving at the
/// translation speed. In the vortex-fixed frame the translation speed is
/// subtracted from u_z everywhere.
Vec3 hill_velocity(const Vec3& p, const HillVortex& hill);

/// A (-y, x, 0) inside the sphere (|p| <= a), zero outside.
Vec3 hill_vorticity(const Vec3& p, const HillVortex& hill);

// Gaussian-core vortex ring -------------------------------------------------

/// Core truncation radius in units of sigma. The core profile at this
/// distance is exp(-18) of its peak.
inline constexpr double kRingSupportSigmas = 6.0;

struct GaussianRing {
  double radius = 1.0;       // R, ring centreline radius
  double core = 0.1;         // sigma
  double circulation = 1.0;  // Gamma

  double support_radius() const { return kRingSupportSigmas * core; }
};

/// Azimuthal vorticity (Gamma / (2 pi sigma^2)) exp(-rho^2 / (2 sigma^2)),
/// rho the meridional distance from the core centre (R, 0).
double ring_vorticity_theta(double r, double z, const GaussianRing& ring);
Vec3 ring_vorticity(const Vec3& p, const GaussianRing& ring);

/// Complete elliptic integrals K(m), E(m) of parameter m = k^2 in [0, 1),
/// by the arithmetic-geometric mean to 1e-14.
struct EllipticKE {
  double K;
  double E;
};
EllipticKE elliptic_ke(double m);

/// Stream function at (r, z) of a circular vortex filament of unit
/// circulation at (r1, z1).
double filament_stream_function(double r, double z, double r1, double z1);

inline constexpr int kRingAngleNodes = 64;
inline constexpr int kRingRadialNodes = 32;

/// Stream function of the Gaussian ring at (r, z) by 2-D quadrature of the
/// filament kernel over the truncated core: periodic trapezoid in angle times
/// Gauss-Legendre in radius, in polar coordinates about the target when it
/// lies inside the support and about the core centre otherwise.
double ring_stream_function(double r, double z, const GaussianRing& ring,
                            int angles = kRingAngleNodes, int radial = kRingRadialNodes);

/// Uniform (r, z) grid: nr x nz nodes spanning [r_min, r_max] x [z_min, z_max].
struct RingTableGrid {
  double r_min, r_max, z_min, z_max;
  int nr, nz;
};

/// Grid of spacing `step` covering the core out to `half_width` around the
/// ring centre (R, 0).
RingTableGrid core_grid(const GaussianRing& ring, double half_width, double step);

/// Meridional velocity tabulated on a grid: the stream function is computed
/// by quadrature at every node (plus two ghost layers), differentiated by
/// fourth-order central differences, and interpolated bilinearly.
class RingVelocityTable {
 public:
  /// Throws std::invalid_argument for an empty grid or one reaching r <= 0.
  RingVelocityTable(const GaussianRing& ring, const RingTableGrid& grid);

  const GaussianRing& ring() const { return ring_; }
  const RingTableGrid& grid() const { return grid_; }
  double dr() const { return dr_; }
  double dz() const { return dz_; }

  /// Tabulated node values.
  double ur_node(int i, int j) const { return ur_[index(i, j)]; }
  double uz_node(int i, int j) const { return uz_[index(i, j)]; }
  double psi_node(int i, int j) const { return psi_[index(i, j)]; }
  double r_node(int i) const { return grid_.r_min + i * dr_; }
  double z_node(int j) const { return grid_.z_min + j * dz_; }

  struct Meridional {
    double ur;
    double uz;
  };
  /// Bilinear interpolation. Throws RangeError outside the grid.
  Meridional at(double r, double z) const;

  /// Cartesian velocity at a 3-D point.
  Vec3 velocity(const Vec3& p) const;

  /// CSV `r,z,ur,uz`, one row per node, r fastest.
  void write_csv(const std::filesystem::path& path) const;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(grid_.nr) +
           static_cast<std::size_t>(i);
  }

  GaussianRing ring_;
  RingTableGrid grid_;
  double dr_ = 0.0;
  double dz_ = 0.0;
  std::vector<double> psi_, ur_, uz_;
};

/// Evaluation stations for the ring: `stations` meridional planes equally
/// spaced in azimuth (offset by half a spacing from the x axis), each with a
/// k x k square grid over the core out to `extent` (default 3 sigma).
std::vector<Vec3> ring_station_points(const GaussianRing& ring, int stations, int k,
                                      double extent_sigmas = 3.0);

// Error statistics ----------------------------------------------------------

struct ErrorStats {
  double rms = 0.0;        // sqrt(mean |v - v_ref|^2) / sqrt(mean |v_ref|^2)
  double rms_abs = 0.0;    // sqrt(mean |v - v_ref|^2)
  double max_error = 0.0;  // max |v - v_ref|
  double ref_rms = 0.0;    // sqrt(mean |v_ref|^2)
  std::size_t count = 0;
  double seconds = 0.0;
};

/// Throws std::invalid_argument on a length mismatch. If the reference is
/// identically zero, `rms` equals `rms_abs`.
ErrorStats rms_error(std::span<const Vec3> computed, std::span<const Vec3> reference,
                     double seconds = 0.0);

}  // namespace tetbiot
