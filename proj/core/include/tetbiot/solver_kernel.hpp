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
// The per-tetrahedron inner loop of the velocity evaluation, templated on
// the scalar so that tests can run it on an operation-counting number type.
// Nothing here may call sqrt, log, atan or trigonometric functions.

#pragma once

#include <array>
#include <cstdint>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "tetbiot/geometry.hpp"
#include "tetbiot/mesh.hpp"

namespace tetbiot {

inline constexpr NodeIndex kNoNode = std::numeric_limits<NodeIndex>::max();

/// Default near-field guard: the cull is not applied for |r|^2 <= 4 h2.
inline constexpr double kDefaultRMin2Scale = 4.0;

namespace kernel {

/// Mesh data as seen by the kernel.
template <typename T>
struct MeshView {
  std::span<const BasicVec3<T>> nodes;
  std::span<const BasicVec3<T>> vorticity;
  std::span<const Tetra> tets;
};

/// Fan tables as seen by the kernel. Directions come in rows of equal phi;
/// row_sin and row_cos hold sin(phi) and cos(phi) per row.
struct FanView {
  std::span<const double> sx, sy, sz, weight;
  std::span<const double> row_sin, row_cos;
};

/// Local index (0..3) of `node` in the tet, or -1.
inline int local_vertex(const Tetra& tet, NodeIndex node) {
  if (node == kNoNode) return -1;
  for (int k = 0; k < 4; ++k) {
    if (tet.nodes[static_cast<std::size_t>(k)] == node) return k;
  }
  return -1;
}

/// r_min2 for a tet: the fixed override if given, else 4 h2.
template <typename T>
T guard_radius2(const Tetra& tet, std::optional<double> r_min2) {
  return r_min2 ? T(*r_min2) : T(kDefaultRMin2Scale * tet.h2);
}

/// Bounding sphere of a tet about its vertex centroid.
template <typename T>
struct TetSphere {
  BasicVec3<T> centre;
  T radius2;
};

template <typename T>
TetSphere<T> bounding_sphere(const std::array<BasicVec3<T>, 4>& p) {
  const BasicVec3<T> c = T(0.25) * (p[0] + p[1] + p[2] + p[3]);
  T r2 = norm2(p[0] - c);
  for (std::size_t k = 1; k < 4; ++k) {
    const T d2 = norm2(p[k] - c);
    if (d2 > r2) r2 = d2;
  }
  // Pad so that rounding in the test below can never drop a grazing line.
  return {c, r2 * T(1.0 + 1e-9) + T(1e-300)};
}

/// The ray-independent half of the Moller-Trumbore test for one face and a
/// fixed origin: edges e1, e2 from corner a, s = x - a, q = s x e1, e2.q.
template <typename T>
struct FaceFrame {
  BasicVec3<T> e1, e2, s, q;
  T t_num;
};

template <typename T>
FaceFrame<T> face_frame(const BasicVec3<T>& x, const BasicVec3<T>& a, const BasicVec3<T>& b,
                        const BasicVec3<T>& c) {
  FaceFrame<T> f;
  f.e1 = b - a;
  f.e2 = c - a;
  f.s = x - a;
  f.q = cross(f.s, f.e1);
  f.t_num = dot(f.e2, f.q);
  return f;
}

/// ray_triangle_intersect on a precomputed frame. The bounds are checked on
/// the undivided numerators so that only hits pay for the division.
template <typename T>
std::optional<BasicTriHit<T>> face_hit(const FaceFrame<T>& f, const BasicVec3<T>& dir) {
  const BasicVec3<T> pv = cross(dir, f.e2);
  T det = dot(f.e1, pv);
  if (det < T(kParallelDeterminant) && det > T(-kParallelDeterminant)) return std::nullopt;
  T u = dot(f.s, pv);
  T v = dot(dir, f.q);
  T t = f.t_num;
  if (det < T(0.0)) {
    det = -det;
    u = -u;
    v = -v;
    t = -t;
  }
  const T lo = T(-kHitTolerance) * det;
  const T hi = T(1.0 + kHitTolerance) * det;
  if (u < lo || u > hi || v < lo || u + v > hi) return std::nullopt;
  const T inv = T(1.0) / det;
  return BasicTriHit<T>{t * inv, u * inv, v * inv};
}

/// ray_tet_intersect with the faces given as frames about the ray origin.
template <typename T>
std::optional<BasicTetSegment<T>> frame_segment(const std::array<FaceFrame<T>, 4>& faces,
                                                const std::array<BasicVec3<T>, 4>& w,
                                                const BasicVec3<T>& dir, const T& merge2,
                                                int origin_vertex) {
  if (origin_vertex >= 0) {
    const auto v = static_cast<std::size_t>(origin_vertex);
    const auto hit = face_hit(faces[v], dir);
    if (!hit) return std::nullopt;
    const BasicVec3<T> w_hit = detail::interpolate_on_face(w, kTetFaces[v], *hit);
    if (hit->t < T(0.0)) return BasicTetSegment<T>{hit->t, T(0.0), w_hit, w[v]};
    return BasicTetSegment<T>{T(0.0), hit->t, w[v], w_hit};
  }

  std::array<T, 4> t{};
  std::array<BasicVec3<T>, 4> wh{};
  int count = 0;
  for (std::size_t fi = 0; fi < 4; ++fi) {
    const auto hit = face_hit(faces[fi], dir);
    if (!hit) continue;
    bool duplicate = false;
    for (int k = 0; k < count; ++k) {
      const T dt = hit->t - t[k];
      if (dt * dt < merge2) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;
    t[count] = hit->t;
    wh[count] = detail::interpolate_on_face(w, kTetFaces[fi], *hit);
    ++count;
  }
  if (count < 2) return std::nullopt;

  int lo = 0;
  int hi = 0;
  for (int k = 1; k < count; ++k) {
    if (t[k] < t[lo]) lo = k;
    if (t[hi] < t[k]) hi = k;
  }
  return BasicTetSegment<T>{t[lo], t[hi], wh[lo], wh[hi]};
}

/// Velocity contribution of a tet at one point, summed over the fan.
///
/// Gives the same sum as applying tet_cull and ray_tet_intersect ray by ray:
/// both tests only ever drop lines that miss the tet. Here a line is dropped
/// when its distance from the centroid exceeds the bounding radius, which is
/// tighter than the vertex test and leaves far fewer intersection calls.
template <typename T>
BasicVec3<T> tet_point_velocity(const std::array<BasicVec3<T>, 4>& p,
                                const std::array<BasicVec3<T>, 4>& w, const T& h2,
                                const TetSphere<T>& sphere, const T& r_min2,
                                const BasicVec3<T>& x, int origin_vertex, const FanView& fan) {
  const BasicVec3<T> r = sphere.centre - x;
  const T r2 = norm2(r);
  const T slack = r2 - sphere.radius2;
  const bool cullable = norm2(p[0] - x) > r_min2 && slack > T(0.0);
  const std::size_t n = fan.weight.size();
  const double* sx = fan.sx.data();
  const double* sy = fan.sy.data();
  const double* sz = fan.sz.data();

  thread_local std::vector<std::uint32_t> candidates;
  candidates.resize(n);
  std::uint32_t* cp = candidates.data();
  std::size_t count = 0;
  if (cullable) {
    // A whole row of equal phi is skipped when even its best-aligned
    // direction misses: (r.s)^2 <= (a + b)^2 with a = sin(phi) |r_xy|,
    // b = |cos(phi) r_z|, tested without square roots.
    const T rho2 = r.x * r.x + r.y * r.y;
    const T z2 = r.z * r.z;
    const std::size_t rows = fan.row_sin.size();
    const std::size_t per_row = rows == 0 ? 0 : n / rows;
    for (std::size_t row = 0; row < rows; ++row) {
      const T sp = T(fan.row_sin[row]);
      const T cphi = T(fan.row_cos[row]);
      const T a2 = sp * sp * rho2;
      const T b2 = cphi * cphi * z2;
      const T q = slack - a2 - b2;
      if (q > T(0.0) && T(4.0) * a2 * b2 < q * q * T(1.0 - 1e-9)) continue;
      const std::size_t first = row * per_row;
      for (std::size_t k = first; k < first + per_row; ++k) {
        const T rs = r.x * T(sx[k]) + r.y * T(sy[k]) + r.z * T(sz[k]);
        cp[count] = static_cast<std::uint32_t>(k);
        count += static_cast<std::size_t>(!(rs * rs < slack));
      }
    }
  } else {
    for (std::size_t k = 0; k < n; ++k) cp[k] = static_cast<std::uint32_t>(k);
    count = n;
  }

  BasicVec3<T> sum{};
  if (count == 0) return sum;
  std::array<FaceFrame<T>, 4> faces;
  for (std::size_t fi = 0; fi < 4; ++fi) {
    const auto& f = kTetFaces[fi];
    faces[fi] = face_frame(x, p[f[0]], p[f[1]], p[f[2]]);
  }
  const T merge2 = T(kDedupTolerance * kDedupTolerance) * h2;
  for (std::size_t c = 0; c < count; ++c) {
    const std::size_t k = candidates[c];
    const BasicVec3<T> dir{T(sx[k]), T(sy[k]), T(sz[k])};
    const auto seg = frame_segment(faces, w, dir, merge2, origin_vertex);
    if (!seg) continue;
    sum += T(fan.weight[k]) * signed_segment_contribution(*seg, dir);
  }
  return sum;
}

/// Adds the contributions of tets [begin, end) to `acc` (one entry per
/// point). Loop order: tets outermost, then points, then rays.
template <typename T>
void accumulate_tets(const MeshView<T>& mesh, std::size_t begin, std::size_t end,
                     std::span<const BasicVec3<T>> points, std::span<const NodeIndex> self_nodes,
                     const FanView& fan, std::optional<double> r_min2,
                     std::span<BasicVec3<T>> acc) {
  for (std::size_t t = begin; t < end; ++t) {
    const Tetra& tet = mesh.tets[t];
    const std::array<BasicVec3<T>, 4> p{mesh.nodes[tet.nodes[0]], mesh.nodes[tet.nodes[1]],
                                        mesh.nodes[tet.nodes[2]], mesh.nodes[tet.nodes[3]]};
    const std::array<BasicVec3<T>, 4> w{
        mesh.vorticity[tet.nodes[0]], mesh.vorticity[tet.nodes[1]],
        mesh.vorticity[tet.nodes[2]], mesh.vorticity[tet.nodes[3]]};
    const T h2 = T(tet.h2);
    const T guard = guard_radius2<T>(tet, r_min2);
    const TetSphere<T> sphere = bounding_sphere(p);
    for (std::size_t i = 0; i < points.size(); ++i) {
      const int origin_vertex = self_nodes.empty() ? -1 : local_vertex(tet, self_nodes[i]);
      acc[i] += tet_point_velocity(p, w, h2, sphere, guard, points[i], origin_vertex, fan);
    }
  }
}

/// The radial integral along one line: sum over every tet not culled and
/// crossed by the line of the signed segment contribution. No fan weight.
template <typename T>
BasicVec3<T> ray_integral(const BasicVec3<T>& x, NodeIndex self_node, const BasicVec3<T>& dir,
                          const MeshView<T>& mesh, std::optional<double> r_min2) {
  BasicVec3<T> sum{};
  for (const Tetra& tet : mesh.tets) {
    const std::array<BasicVec3<T>, 4> p{mesh.nodes[tet.nodes[0]], mesh.nodes[tet.nodes[1]],
                                        mesh.nodes[tet.nodes[2]], mesh.nodes[tet.nodes[3]]};
    const T h2 = T(tet.h2);
    if (tet_cull(x, dir, p[0], h2, guard_radius2<T>(tet, r_min2))) continue;
    const std::array<BasicVec3<T>, 4> w{
        mesh.vorticity[tet.nodes[0]], mesh.vorticity[tet.nodes[1]],
        mesh.vorticity[tet.nodes[2]], mesh.vorticity[tet.nodes[3]]};
    const auto seg =
        ray_tet_intersect(BasicRay<T>{x, dir}, p, w, h2, local_vertex(tet, self_node));
    if (seg) sum += signed_segment_contribution(*seg, dir);
  }
  return sum;
}

}  // namespace kernel
}  // namespace tetbiot
