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
#include "tetbiot/solver.hpp"

#include <algorithm>
#include <chrono>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>

#include "tetbiot/errors.hpp"

namespace tetbiot {

namespace {

kernel::MeshView<double> view_of(const TetMesh& mesh) {
  return {mesh.nodes(), mesh.vorticity(), mesh.tets()};
}

kernel::FanView view_of(const QuadFan& fan) {
  return {fan.sx(), fan.sy(), fan.sz(), fan.weights(), fan.row_sin(), fan.row_cos()};
}

void validate(const EvalRequest& req) {
  const auto& opt = req.options;
  if (opt.workers < 1) {
    throw ValidationError("workers must be >= 1, got " + std::to_string(opt.workers));
  }
  if (opt.r_min2 && !(*opt.r_min2 > 0.0)) throw ValidationError("r_min2 must be > 0");
  if (!req.self_nodes.empty() && req.self_nodes.size() != req.points.size()) {
    throw ValidationError("self_nodes must be empty or match the point count");
  }
  for (NodeIndex n : req.self_nodes) {
    if (n != kNoNode && n >= req.mesh.node_count()) {
      throw ValidationError("self node " + std::to_string(n) + " not in mesh");
    }
  }
  for (const auto& p : req.points) {
    if (!is_finite(p)) throw ValidationError("non-finite evaluation point");
  }
}

// [begin, end) of block b when `total` items are cut into `blocks` pieces.
std::pair<std::size_t, std::size_t> block_range(std::size_t total, std::size_t blocks,
                                                std::size_t b) {
  return {total * b / blocks, total * (b + 1) / blocks};
}

template <typename Work>
void run_workers(int workers, Work&& work) {
  std::vector<std::jthread> threads;
  threads.reserve(static_cast<std::size_t>(workers - 1));
  for (int w = 1; w < workers; ++w) threads.emplace_back([&work, w] { work(w); });
  work(0);
}

}  // namespace

VelocityField evaluate(const EvalRequest& req) {
  validate(req);
  const auto start = std::chrono::steady_clock::now();

  const auto mesh = view_of(req.mesh);
  const auto fan = view_of(req.fan);
  const std::size_t n_points = req.points.size();
  const std::size_t n_tets = req.mesh.tet_count();
  const int workers = req.options.workers;

  VelocityField out;
  out.workers = workers;
  out.velocities.assign(n_points, Vec3{});

  if (req.options.deterministic) {
    const std::size_t blocks = kDeterministicBlocks;
    std::vector<std::vector<Vec3>> acc(blocks);
    run_workers(workers, [&](int w) {
      const auto [first, last] = block_range(blocks, static_cast<std::size_t>(workers),
                                             static_cast<std::size_t>(w));
      for (std::size_t b = first; b < last; ++b) {
        const auto [begin, end] = block_range(n_tets, blocks, b);
        if (begin == end) continue;
        acc[b].assign(n_points, Vec3{});
        kernel::accumulate_tets<double>(mesh, begin, end, req.points, req.self_nodes, fan,
                                        req.options.r_min2, acc[b]);
      }
    });
    for (const auto& block : acc) {
      if (block.empty()) continue;
      for (std::size_t i = 0; i < n_points; ++i) out.velocities[i] += block[i];
    }
  } else {
    std::mutex merge;
    run_workers(workers, [&](int w) {
      const auto [begin, end] = block_range(n_tets, static_cast<std::size_t>(workers),
                                            static_cast<std::size_t>(w));
      std::vector<Vec3> acc(n_points);
      kernel::accumulate_tets<double>(mesh, begin, end, req.points, req.self_nodes, fan,
                                      req.options.r_min2, acc);
      std::scoped_lock lock(merge);
      for (std::size_t i = 0; i < n_points; ++i) out.velocities[i] += acc[i];
    });
  }

  out.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

VelocityField evaluate_at_nodes(const TetMesh& mesh, const QuadFan& fan,
                                const EvalOptions& options) {
  std::vector<NodeIndex> tags(mesh.node_count());
  for (std::size_t i = 0; i < tags.size(); ++i) tags[i] = static_cast<NodeIndex>(i);
  return evaluate(EvalRequest{mesh, mesh.nodes(), tags, fan, options});
}

Vec3 ray_integral(const Vec3& point, NodeIndex self_node, const Vec3& dir, const TetMesh& mesh,
                  std::optional<double> r_min2) {
  return kernel::ray_integral<double>(point, self_node, dir, view_of(mesh), r_min2);
}

// Direct quadrature oracle --------------------------------------------------

namespace {

struct Corner {
  Vec3 x;
  Vec3 w;
};

Corner midpoint(const Corner& a, const Corner& b) {
  return {0.5 * (a.x + b.x), 0.5 * (a.w + b.w)};
}

constexpr double kInsideTolerance = 1e-12;

bool contains(const std::array<Vec3, 4>& p, const Vec3& x) {
  // Barycentric coordinates by ratios of signed volumes.
  const double v = dot(p[1] - p[0], cross(p[2] - p[0], p[3] - p[0]));
  const double l1 = dot(x - p[0], cross(p[2] - p[0], p[3] - p[0])) / v;
  const double l2 = dot(p[1] - p[0], cross(x - p[0], p[3] - p[0])) / v;
  const double l3 = dot(p[1] - p[0], cross(p[2] - p[0], x - p[0])) / v;
  const double l0 = 1.0 - l1 - l2 - l3;
  return l0 >= -kInsideTolerance && l1 >= -kInsideTolerance && l2 >= -kInsideTolerance &&
         l3 >= -kInsideTolerance;
}

// Midpoint rule of -(1/4pi) (x - y) x w(y) / |x - y|^3 over the tet, after
// `depth` rounds of 1-to-8 refinement.
Vec3 refine_and_integrate(const Vec3& x, const std::array<Corner, 4>& c, int depth) {
  if (depth == 0) {
    const Vec3 centroid = 0.25 * (c[0].x + c[1].x + c[2].x + c[3].x);
    const Vec3 w = 0.25 * (c[0].w + c[1].w + c[2].w + c[3].w);
    const double vol =
        std::fabs(dot(c[1].x - c[0].x, cross(c[2].x - c[0].x, c[3].x - c[0].x))) / 6.0;
    const Vec3 r = x - centroid;
    const double r2 = norm2(r);
    const double scale = -vol / (4.0 * std::numbers::pi * r2 * std::sqrt(r2));
    return scale * cross(r, w);
  }
  const Corner m01 = midpoint(c[0], c[1]);
  const Corner m02 = midpoint(c[0], c[2]);
  const Corner m03 = midpoint(c[0], c[3]);
  const Corner m12 = midpoint(c[1], c[2]);
  const Corner m13 = midpoint(c[1], c[3]);
  const Corner m23 = midpoint(c[2], c[3]);
  const std::array<std::array<Corner, 4>, 8> children{{
      {c[0], m01, m02, m03},
      {m01, c[1], m12, m13},
      {m02, m12, c[2], m23},
      {m03, m13, m23, c[3]},
      // Inner octahedron cut along the m02-m13 diagonal.
      {m02, m13, m01, m03},
      {m02, m13, m03, m23},
      {m02, m13, m23, m12},
      {m02, m13, m12, m01},
  }};
  Vec3 sum{};
  for (const auto& child : children) sum += refine_and_integrate(x, child, depth - 1);
  return sum;
}

}  // namespace

Vec3 brute_force_velocity(const Vec3& point, const TetMesh& mesh, int subdivisions) {
  if (subdivisions < 0) throw std::invalid_argument("subdivisions must be >= 0");
  Vec3 sum{};
  for (std::size_t t = 0; t < mesh.tet_count(); ++t) {
    const auto& ids = mesh.tets()[t].nodes;
    const std::array<Vec3, 4> p{mesh.nodes()[ids[0]], mesh.nodes()[ids[1]],
                                mesh.nodes()[ids[2]], mesh.nodes()[ids[3]]};
    if (contains(p, point)) {
      throw DomainError("brute_force_velocity: point lies in or on tet " + std::to_string(t));
    }
    std::array<Corner, 4> c;
    for (std::size_t k = 0; k < 4; ++k) c[k] = {p[k], mesh.vorticity()[ids[k]]};
    sum += refine_and_integrate(point, c, subdivisions);
  }
  return sum;
}

}  // namespace tetbiot
