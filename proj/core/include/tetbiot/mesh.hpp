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
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <vector>

#include "tetbiot/vec3.hpp"

namespace tetbiot {

using NodeIndex = std::uint32_t;

/// One linear tetrahedron: four node indices and the cached squared length
/// of its longest edge.
struct Tetra {
  std::array<NodeIndex, 4> nodes{};
  double h2 = 0.0;
};

/// Nodes, per-node vorticity and tetrahedra. Immutable once constructed;
/// the constructor validates connectivity and rebuilds the h2 cache.
class TetMesh {
 public:
  TetMesh() = default;

  /// Throws ValidationError on out-of-range or repeated node indices, on
  /// zero-volume tets (listing the offenders), or when `vorticity` is
  /// non-empty and its size differs from `nodes`. Empty `vorticity` means
  /// zero everywhere. `index_base` is the first node id used in files.
  TetMesh(std::vector<Vec3> nodes, std::vector<std::array<NodeIndex, 4>> tets,
          std::vector<Vec3> vorticity = {}, int index_base = 0);

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t tet_count() const { return tets_.size(); }
  int index_base() const { return index_base_; }

  std::span<const Vec3> nodes() const { return nodes_; }
  std::span<const Vec3> vorticity() const { return vorticity_; }
  std::span<const Tetra> tets() const { return tets_; }

  /// Copy with different nodal vorticity (same size as nodes).
  TetMesh with_vorticity(std::vector<Vec3> vorticity) const;

  /// Six times the signed volume of tet i.
  double signed_volume6(std::size_t i) const;

 private:
  std::vector<Vec3> nodes_;
  std::vector<Vec3> vorticity_;
  std::vector<Tetra> tets_;
  int index_base_ = 0;
};

/// Squared longest edge of the tet spanned by the four points.
double longest_edge2(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d);

/// vorticity[i] = field(nodes[i]).
TetMesh set_vorticity(const TetMesh& mesh, const std::function<Vec3(const Vec3&)>& field);

/// Box [lo, hi] cut into n[0] x n[1] x n[2] cells, each split into the six
/// Kuhn tetrahedra sharing the lo-hi diagonal, all positively oriented.
TetMesh lattice_mesh(const Vec3& lo, const Vec3& hi, const std::array<int, 3>& n);
TetMesh lattice_mesh(const Vec3& lo, const Vec3& hi, int n);

/// Keeps the tets for which `keep(mesh, tet_index)` is true and drops nodes
/// no longer referenced. Vorticity travels with the nodes.
TetMesh select_tets(const TetMesh& mesh,
                    const std::function<bool(const TetMesh&, std::size_t)>& keep);

/// Cube lattice of [-radius, radius]^3 with n cells per axis, restricted to
/// the tets with at least one node strictly inside the ball.
TetMesh ball_lattice_mesh(double radius, int n, const Vec3& center = {});

/// `count` points uniform in the ball, reproducible for a given seed
/// (rejection sampling from the bounding cube).
std::vector<Vec3> random_ball_points(std::size_t count, double radius, std::uint64_t seed);

// TetGen ASCII interchange -------------------------------------------------

/// Reads a .node/.ele pair. Node ids may start at 0 or 1 (taken from the
/// first node row); if the .node rows carry at least three attributes the
/// first three are read as vorticity, otherwise vorticity is zero.
/// Throws IoError, ParseError (with line number), UnsupportedFormat
/// (dimension != 3 or nodes per tet != 4) or ValidationError.
TetMesh load_tetgen(const std::filesystem::path& node_path,
                    const std::filesystem::path& ele_path);

/// Writes a .node/.ele pair using the mesh's index base. With
/// `with_vorticity` the vorticity goes out as three node attributes.
void write_tetgen(const TetMesh& mesh, const std::filesystem::path& node_path,
                  const std::filesystem::path& ele_path, bool with_vorticity = true);

/// Reads `node,wx,wy,wz` (one row per node, ids in the mesh's base) and
/// returns the mesh carrying that vorticity.
TetMesh apply_vorticity_csv(const TetMesh& mesh, const std::filesystem::path& csv_path);

void write_vorticity_csv(const TetMesh& mesh, const std::filesystem::path& csv_path);

/// Writes `node,x,y,z,vx,vy,vz`. `ids` labels each row.
void write_velocity_csv(const std::filesystem::path& path, std::span<const std::int64_t> ids,
                        std::span<const Vec3> points, std::span<const Vec3> velocities);

}  // namespace tetbiot
