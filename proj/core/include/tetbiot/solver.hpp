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

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tetbiot/mesh.hpp"
#include "tetbiot/quadrature.hpp"
#include "tetbiot/solver_kernel.hpp"
#include "tetbiot/vec3.hpp"

namespace tetbiot {

/// Number of fixed tet blocks used by the deterministic reduction. Results
/// are bit-identical for any worker count up to this value.
inline constexpr int kDeterministicBlocks = 64;

struct EvalOptions {
  /// Fixed near-field guard for the cull; unset means 4 h2 per tet.
  std::optional<double> r_min2;
  int workers = 1;
  /// Reduce over kDeterministicBlocks fixed tet blocks in ascending order.
  /// Otherwise each worker owns one accumulator and merges it when done.
  bool deterministic = true;
};

/// Points at which to evaluate. `self_nodes[i]` is the mesh node that
/// point i coincides with, or kNoNode; an empty span means no point is a
/// node.
struct EvalRequest {
  const TetMesh& mesh;
  std::span<const Vec3> points;
  std::span<const NodeIndex> self_nodes;
  const QuadFan& fan;
  EvalOptions options{};
};

struct VelocityField {
  std::vector<Vec3> velocities;
  /// Wall time of the evaluation proper (no I/O, no fan construction).
  double seconds = 0.0;
  int workers = 1;
};

/// v_i = sum_k weight_k * ray_integral(x_i, s_k). Tets are split into
/// contiguous blocks spread over `workers` threads; each block or worker
/// fills a private accumulator and the accumulators are summed once at the
/// end. Throws ValidationError for workers < 1, r_min2 <= 0 or a
/// self_nodes span of the wrong length.
VelocityField evaluate(const EvalRequest& request);

/// Velocity at every mesh node, each point tagged as its own node.
VelocityField evaluate_at_nodes(const TetMesh& mesh, const QuadFan& fan,
                                const EvalOptions& options = {});

/// Unweighted radial integral along the line through `point` in direction
/// `dir` (unit). `self_node` is the node the point sits on, or kNoNode.
Vec3 ray_integral(const Vec3& point, NodeIndex self_node, const Vec3& dir,
                  const TetMesh& mesh, std::optional<double> r_min2 = std::nullopt);

/// Direct volume quadrature of the Biot-Savart integral at a point outside
/// every tet: each tet is refined `subdivisions` times into 8 children and
/// the midpoint rule is applied to the linearly interpolated vorticity.
/// Throws DomainError if the point lies inside or on a tet.
Vec3 brute_force_velocity(const Vec3& point, const TetMesh& mesh, int subdivisions);

}  // namespace tetbiot
