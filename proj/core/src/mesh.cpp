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
#include "tetbiot/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <utility>

#include "tetbiot/errors.hpp"

namespace tetbiot {

namespace {

// Relative threshold on 6V / h^3 below which a tet is degenerate.
constexpr double kDegenerateVolume = 1e-12;

double volume6(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  return dot(b - a, cross(c - a, d - a));
}

}  // namespace

double longest_edge2(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  return std::max({norm2(b - a), norm2(c - a), norm2(d - a), norm2(c - b),
                   norm2(d - b), norm2(d - c)});
}

TetMesh::TetMesh(std::vector<Vec3> nodes, std::vector<std::array<NodeIndex, 4>> tets,
                 std::vector<Vec3> vorticity, int index_base)
    : nodes_(std::move(nodes)), vorticity_(std::move(vorticity)), index_base_(index_base) {
  if (vorticity_.empty()) {
    vorticity_.assign(nodes_.size(), Vec3{});
  } else if (vorticity_.size() != nodes_.size()) {
    throw ValidationError("vorticity has " + std::to_string(vorticity_.size()) +
                          " entries for " + std::to_string(nodes_.size()) + " nodes");
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!is_finite(nodes_[i]) || !is_finite(vorticity_[i])) {
      throw ValidationError("non-finite position or vorticity at node " +
                            std::to_string(i + static_cast<std::size_t>(index_base_)));
    }
  }

  tets_.reserve(tets.size());
  std::vector<std::size_t> degenerate;
  for (std::size_t t = 0; t < tets.size(); ++t) {
    const auto& ids = tets[t];
    for (int k = 0; k < 4; ++k) {
      if (ids[k] >= nodes_.size()) {
        throw ValidationError("tet " + std::to_string(t) + " references node " +
                              std::to_string(ids[k] + static_cast<NodeIndex>(index_base_)) +
                              " but the mesh has " + std::to_string(nodes_.size()) +
                              " nodes");
      }
      for (int j = 0; j < k; ++j) {
        if (ids[j] == ids[k]) {
          throw ValidationError("tet " + std::to_string(t) + " repeats a node");
        }
      }
    }
    const Vec3& a = nodes_[ids[0]];
    const Vec3& b = nodes_[ids[1]];
    const Vec3& c = nodes_[ids[2]];
    const Vec3& d = nodes_[ids[3]];
    const double h2 = longest_edge2(a, b, c, d);
    if (std::fabs(volume6(a, b, c, d)) <= kDegenerateVolume * h2 * std::sqrt(h2)) {
      degenerate.push_back(t);
    }
    tets_.push_back(Tetra{ids, h2});
  }
  if (!degenerate.empty()) {
    std::string list;
    for (std::size_t i = 0; i < degenerate.size() && i < 10; ++i) {
      if (i) list += ", ";
      list += std::to_string(degenerate[i]);
    }
    if (degenerate.size() > 10) list += ", ...";
    throw ValidationError(std::to_string(degenerate.size()) +
                          " zero-volume tetrahedra: " + list);
  }
}

TetMesh TetMesh::with_vorticity(std::vector<Vec3> vorticity) const {
  std::vector<std::array<NodeIndex, 4>> ids;
  ids.reserve(tets_.size());
  for (const auto& t : tets_) ids.push_back(t.nodes);
  return TetMesh(nodes_, std::move(ids), std::move(vorticity), index_base_);
}

double TetMesh::signed_volume6(std::size_t i) const {
  const auto& n = tets_[i].nodes;
  return volume6(nodes_[n[0]], nodes_[n[1]], nodes_[n[2]], nodes_[n[3]]);
}

TetMesh set_vorticity(const TetMesh& mesh, const std::function<Vec3(const Vec3&)>& field) {
  std::vector<Vec3> w;
  w.reserve(mesh.node_count());
  for (const auto& p : mesh.nodes()) w.push_back(field(p));
  return mesh.with_vorticity(std::move(w));
}

TetMesh lattice_mesh(const Vec3& lo, const Vec3& hi, const std::array<int, 3>& n) {
  for (int k = 0; k < 3; ++k) {
    if (n[k] < 1) throw std::invalid_argument("lattice_mesh: need at least one cell per axis");
  }
  const std::size_t nx = static_cast<std::size_t>(n[0]) + 1;
  const std::size_t ny = static_cast<std::size_t>(n[1]) + 1;
  const std::size_t nz = static_cast<std::size_t>(n[2]) + 1;

  std::vector<Vec3> nodes;
  nodes.reserve(nx * ny * nz);
  for (std::size_t k = 0; k < nz; ++k) {
    const double z = lo.z + (hi.z - lo.z) * static_cast<double>(k) / n[2];
    for (std::size_t j = 0; j < ny; ++j) {
      const double y = lo.y + (hi.y - lo.y) * static_cast<double>(j) / n[1];
      for (std::size_t i = 0; i < nx; ++i) {
        const double x = lo.x + (hi.x - lo.x) * static_cast<double>(i) / n[0];
        nodes.push_back({x, y, z});
      }
    }
  }
  auto id = [&](std::size_t i, std::size_t j, std::size_t k) {
    return static_cast<NodeIndex>(i + nx * (j + ny * k));
  };

  // Each permutation of the axes is one monotone path from the cell's low
  // corner to its high corner; the four corners on a path form a tet.
  static constexpr std::array<std::array<int, 3>, 6> kPaths{{
      {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
  }};

  std::vector<std::array<NodeIndex, 4>> tets;
  tets.reserve(6 * static_cast<std::size_t>(n[0]) * n[1] * n[2]);
  for (std::size_t k = 0; k + 1 < nz; ++k) {
    for (std::size_t j = 0; j + 1 < ny; ++j) {
      for (std::size_t i = 0; i + 1 < nx; ++i) {
        for (const auto& path : kPaths) {
          std::array<std::size_t, 3> c{i, j, k};
          std::array<NodeIndex, 4> t{};
          t[0] = id(c[0], c[1], c[2]);
          for (int s = 0; s < 3; ++s) {
            ++c[static_cast<std::size_t>(path[static_cast<std::size_t>(s)])];
            t[static_cast<std::size_t>(s) + 1] = id(c[0], c[1], c[2]);
          }
          if (volume6(nodes[t[0]], nodes[t[1]], nodes[t[2]], nodes[t[3]]) < 0.0) {
            std::swap(t[2], t[3]);
          }
          tets.push_back(t);
        }
      }
    }
  }
  return TetMesh(std::move(nodes), std::move(tets));
}

TetMesh lattice_mesh(const Vec3& lo, const Vec3& hi, int n) {
  return lattice_mesh(lo, hi, {n, n, n});
}

TetMesh select_tets(const TetMesh& mesh,
                    const std::function<bool(const TetMesh&, std::size_t)>& keep) {
  constexpr NodeIndex kUnused = std::numeric_limits<NodeIndex>::max();
  std::vector<NodeIndex> remap(mesh.node_count(), kUnused);
  std::vector<std::array<NodeIndex, 4>> kept;
  for (std::size_t t = 0; t < mesh.tet_count(); ++t) {
    if (!keep(mesh, t)) continue;
    kept.push_back(mesh.tets()[t].nodes);
    for (NodeIndex v : mesh.tets()[t].nodes) remap[v] = 0;
  }
  std::vector<Vec3> nodes;
  std::vector<Vec3> w;
  for (std::size_t i = 0; i < mesh.node_count(); ++i) {
    if (remap[i] == kUnused) continue;
    remap[i] = static_cast<NodeIndex>(nodes.size());
    nodes.push_back(mesh.nodes()[i]);
    w.push_back(mesh.vorticity()[i]);
  }
  for (auto& t : kept) {
    for (auto& v : t) v = remap[v];
  }
  return TetMesh(std::move(nodes), std::move(kept), std::move(w), mesh.index_base());
}

TetMesh ball_lattice_mesh(double radius, int n, const Vec3& center) {
  const Vec3 half{radius, radius, radius};
  const TetMesh cube = lattice_mesh(center - half, center + half, n);
  const double r2 = radius * radius;
  return select_tets(cube, [&](const TetMesh& m, std::size_t t) {
    for (NodeIndex v : m.tets()[t].nodes) {
      if (norm2(m.nodes()[v] - center) < r2) return true;
    }
    return false;
  });
}

std::vector<Vec3> random_ball_points(std::size_t count, double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  // 53 random mantissa bits mapped onto [-1, 1).
  auto uniform = [&rng] {
    return static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0;
  };
  std::vector<Vec3> points;
  points.reserve(count);
  while (points.size() < count) {
    const Vec3 p{uniform(), uniform(), uniform()};
    if (norm2(p) <= 1.0) points.push_back(radius * p);
  }
  return points;
}

}  // namespace tetbiot
