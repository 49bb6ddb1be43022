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
#include <optional>

#include "tetbiot/vec3.hpp"

namespace tetbiot {

/// Barycentric slack allowed on a reported triangle hit.
inline constexpr double kHitTolerance = 1e-10;
/// Below this |determinant| the ray is treated as parallel to the face.
inline constexpr double kParallelDeterminant = 1e-12;
/// Face hits closer than this fraction of the tet diameter are one hit.
inline constexpr double kDedupTolerance = 1e-9;

/// Line x = origin + t * direction, t over the whole real axis.
template <typename T>
struct BasicRay {
  BasicVec3<T> origin;
  BasicVec3<T> direction;  // unit length
};
using Ray = BasicRay<double>;

template <typename T>
struct BasicTriHit {
  T t;  // signed distance along the ray; negative values are valid hits
  T u;
  T v;
};
using TriHit = BasicTriHit<double>;

/// Portion of a ray inside one tetrahedron, r0 <= r1, with the linearly
/// interpolated vorticity at both ends.
template <typename T>
struct BasicTetSegment {
  T r0;
  T r1;
  BasicVec3<T> w0;
  BasicVec3<T> w1;
};
using TetSegment = BasicTetSegment<double>;

/// Vertex indices of the face opposite local vertex k.
inline constexpr std::array<std::array<int, 3>, 4> kTetFaces{{
    {1, 2, 3},
    {0, 2, 3},
    {0, 1, 3},
    {0, 1, 2},
}};

/// Moller-Trumbore intersection of the infinite line through the ray with
/// triangle abc. Returns (t, u, v) with
///   origin + t * direction = (1 - u - v) a + u b + v c.
/// Negative t is reported; culling of back faces and of hits behind the
/// origin is deliberately absent. One division per call.
template <typename T>
std::optional<BasicTriHit<T>> ray_triangle_intersect(const BasicRay<T>& ray,
                                                     const BasicVec3<T>& a,
                                                     const BasicVec3<T>& b,
                                                     const BasicVec3<T>& c) {
  const BasicVec3<T> e1 = b - a;
  const BasicVec3<T> e2 = c - a;
  const BasicVec3<T> p = cross(ray.direction, e2);
  const T det = dot(e1, p);
  if (det < T(kParallelDeterminant) && det > T(-kParallelDeterminant)) {
    return std::nullopt;
  }
  const T inv_det = T(1.0) / det;

  const BasicVec3<T> s = ray.origin - a;
  const T u = dot(s, p) * inv_det;
  if (u < T(-kHitTolerance) || u > T(1.0 + kHitTolerance)) return std::nullopt;

  const BasicVec3<T> q = cross(s, e1);
  const T v = dot(ray.direction, q) * inv_det;
  if (v < T(-kHitTolerance) || u + v > T(1.0 + kHitTolerance)) {
    return std::nullopt;
  }

  return BasicTriHit<T>{dot(e2, q) * inv_det, u, v};
}

/// Skip predicate for a whole tetrahedron. `r` runs from the evaluation point
/// to any vertex of the tet and h2 is the squared longest edge. Every point
/// of the tet lies within sqrt(h2) of that vertex, so a line whose squared
/// distance from the vertex, |r|^2 - (r.s)^2, exceeds 2 h2 cannot touch the
/// tet. The test is sign-blind in s and never culls when |r|^2 <= r_min2.
template <typename T>
bool tet_cull(const BasicVec3<T>& eval_point, const BasicVec3<T>& dir,
              const BasicVec3<T>& vertex, const T& h2, const T& r_min2) {
  const BasicVec3<T> r = vertex - eval_point;
  const T r2 = norm2(r);
  if (!(r2 > r_min2)) return false;
  const T slack = r2 - T(2.0) * h2;
  if (!(slack > T(0.0))) return false;
  const T rs = dot(r, dir);
  return rs * rs < slack;
}

namespace detail {

template <typename T>
BasicVec3<T> interpolate_on_face(const std::array<BasicVec3<T>, 4>& w,
                                 const std::array<int, 3>& face,
                                 const BasicTriHit<T>& hit) {
  const T w0 = T(1.0) - hit.u - hit.v;
  return w0 * w[face[0]] + hit.u * w[face[1]] + hit.v * w[face[2]];
}

}  // namespace detail

/// Segment of the ray inside a tetrahedron with vertices `p` and nodal
/// vorticities `w`, or nothing if the line misses it.
///
/// `origin_vertex` names the local vertex (0..3) that the ray origin sits
/// on, or -1. For such a tet the line through the vertex meets the tet iff
/// it crosses the opposite face, so only that face is tested and the
/// segment runs from R = 0 (carrying the vertex vorticity) to the crossing.
///
/// Otherwise all four faces are tested. Hits whose distances agree to
/// kDedupTolerance of the tet diameter are merged (edge and vertex grazing),
/// and the segment spans the smallest and largest remaining t.
template <typename T>
std::optional<BasicTetSegment<T>> ray_tet_intersect(
    const BasicRay<T>& ray, const std::array<BasicVec3<T>, 4>& p,
    const std::array<BasicVec3<T>, 4>& w, const T& h2, int origin_vertex = -1) {
  if (origin_vertex >= 0) {
    const auto& face = kTetFaces[static_cast<std::size_t>(origin_vertex)];
    const auto hit = ray_triangle_intersect(ray, p[face[0]], p[face[1]], p[face[2]]);
    if (!hit) return std::nullopt;
    const BasicVec3<T> w_hit = detail::interpolate_on_face(w, face, *hit);
    const BasicVec3<T>& w_node = w[static_cast<std::size_t>(origin_vertex)];
    if (hit->t < T(0.0)) return BasicTetSegment<T>{hit->t, T(0.0), w_hit, w_node};
    return BasicTetSegment<T>{T(0.0), hit->t, w_node, w_hit};
  }

  std::array<T, 4> t{};
  std::array<BasicVec3<T>, 4> wh{};
  int count = 0;
  const T merge2 = T(kDedupTolerance * kDedupTolerance) * h2;
  for (const auto& face : kTetFaces) {
    const auto hit = ray_triangle_intersect(ray, p[face[0]], p[face[1]], p[face[2]]);
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
    wh[count] = detail::interpolate_on_face(w, face, *hit);
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

/// Exact line integral of dir x w over a segment on which w is linear:
/// (r1 - r0)/2 * dir x (w0 + w1).
template <typename T>
BasicVec3<T> segment_contribution(const BasicTetSegment<T>& seg,
                                  const BasicVec3<T>& dir) {
  return (T(0.5) * (seg.r1 - seg.r0)) * cross(dir, seg.w0 + seg.w1);
}

/// Line integral of sign(R) dir x w over the segment. This is the radial
/// integrand once the full sphere of directions is folded onto a half range
/// of polar angle with R running over the whole line: the half-line R < 0
/// stands for direction -dir and enters with the opposite sign. A segment
/// that straddles the origin is split at R = 0 (one division).
template <typename T>
BasicVec3<T> signed_segment_contribution(const BasicTetSegment<T>& seg,
                                         const BasicVec3<T>& dir) {
  if (!(seg.r0 < T(0.0))) return segment_contribution(seg, dir);
  if (!(seg.r1 > T(0.0))) return -segment_contribution(seg, dir);
  const T f = -seg.r0 / (seg.r1 - seg.r0);
  const BasicVec3<T> w_mid = seg.w0 + f * (seg.w1 - seg.w0);
  const BasicVec3<T> ahead = seg.r1 * (w_mid + seg.w1);
  const BasicVec3<T> behind = seg.r0 * (seg.w0 + w_mid);
  return T(0.5) * cross(dir, ahead + behind);
}

}  // namespace tetbiot
