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
// Acceptance suite. Each criterion prints one line
//   [PASS|FAIL|SKIP] <id> <summary>
// and the process exits 0, 1 or 77. Run with a criterion id, or "all".

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "test_support.hpp"
#include "tetbiot/geometry.hpp"
#include "tetbiot/mesh.hpp"
#include "tetbiot/quadrature.hpp"
#include "tetbiot/reference_fields.hpp"
#include "tetbiot/solver.hpp"
#include "tetbiot/studies.hpp"
#include "traced_scalar.hpp"

namespace tetbiot {
namespace {

using testing::Rng;

enum class Status { pass, fail, skip };

struct Outcome {
  Status status;
  std::string summary;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. Single tet against direct quadrature ----------------------------------------

Outcome single_tet_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  const QuadFan fan = build_fan(32, 32);
  Rng rng(1001);
  std::vector<double> errors;
  for (int c = 0; c < 20; ++c) {
    const auto p = testing::random_tet(rng);
    const Vec3 centre = 0.25 * (p[0] + p[1] + p[2] + p[3]);
    const double diam = std::sqrt(testing::diameter2(p));
    const Vec3 x = centre + (rng.uniform(3.0, 10.0) * diam) * rng.unit();
    const TetMesh mesh({p.begin(), p.end()}, {{0, 1, 2, 3}},
                       {rng.vec(), rng.vec(), rng.vec(), rng.vec()});
    const std::vector<Vec3> pts{x};
    const Vec3 v = evaluate(EvalRequest{mesh, pts, {}, fan}).velocities[0];
    const Vec3 ref = brute_force_velocity(x, mesh, 5);
    errors.push_back(norm(v - ref) / norm(ref));
  }
  std::sort(errors.begin(), errors.end());

  // Unit tet, uniform vorticity, point 10 units away on the x axis.
  const TetMesh unit({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {{0, 1, 2, 3}},
                     {{0, 0, 1}, {0, 0, 1}, {0, 0, 1}, {0, 0, 1}});
  const std::vector<Vec3> far{{10, 0, 0}};
  const Vec3 vf = evaluate(EvalRequest{unit, far, {}, fan}).velocities[0];
  const Vec3 rf = brute_force_velocity(far[0], unit, 5);

  const double secs = seconds_since(t0);
  const bool ok = errors.back() < 5e-3 && secs < 60.0;
  return {ok ? Status::pass : Status::fail,
          fmt("single tet, 32x32 fan vs direct quadrature: max rel err %.3g, median %.3g, "
              "min %.3g (need < 0.005); unit tet at (10,0,0): %.3g; %.1fs",
              errors.back(), errors[errors.size() / 2], errors.front(),
              norm(vf - rf) / norm(rf), secs)};
}

// 2. Segment contribution exactness -----------------------------------------------

Outcome segment_exactness() {
  Rng rng(1002);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Vec3 dir = rng.unit();
    double r0 = rng.uniform(-5, 5), r1 = rng.uniform(-5, 5);
    if (r1 < r0) std::swap(r0, r1);
    const TetSegment seg{r0, r1, rng.vec(-3, 3), rng.vec(-3, 3)};
    const Vec3 exact = testing::gauss10(
        [&](double r) {
          const double f = (r - r0) / (r1 - r0);
          return cross(dir, seg.w0 + f * (seg.w1 - seg.w0));
        },
        r0, r1);
    // Relative to the integrand scale so that cancellation to near zero
    // does not inflate the ratio.
    const double scale = (r1 - r0) * std::max(norm(seg.w0), norm(seg.w1));
    worst = std::max(worst, norm(segment_contribution(seg, dir) - exact) / scale);
  }
  return {worst <= 1e-13 ? Status::pass : Status::fail,
          fmt("segment contribution vs 10-point Gauss, 1000 cases: worst rel err %.2g "
              "(need <= 1e-13)",
              worst)};
}

// 3. Gauss-Legendre -----------------------------------------------------------------

Outcome gauss_legendre_rules() {
  double worst_sum = 0.0, worst_mono = 0.0;
  for (int n = 1; n <= 64; ++n) {
    const GaussRule g = gauss_legendre(n);
    double sum = 0.0;
    for (double w : g.weights) sum += w;
    worst_sum = std::max(worst_sum, std::fabs(sum - 2.0));
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double q = 0.0;
      for (int i = 0; i < n; ++i) q += g.weights[i] * std::pow(g.nodes[i], k);
      const double exact = k % 2 == 1 ? 0.0 : 2.0 / (k + 1);
      worst_mono = std::max(worst_mono, std::fabs(q - exact));
    }
  }
  const bool ok = worst_sum <= 1e-13 && worst_mono <= 1e-12;
  return {ok ? Status::pass : Status::fail,
          fmt("Gauss-Legendre orders 1-64: |sum w - 2| <= %.2g, monomial error <= %.2g", worst_sum,
              worst_mono)};
}

// 4. Parity and cull soundness -------------------------------------------------------

Outcome parity_and_cull() {
  Rng rng(1004);
  const std::array<Vec3, 4> w{};
  int bad_parity = 0, unsound = 0, degenerate = 0, hits2 = 0, culled = 0;
  for (int i = 0; i < 100000; ++i) {
    const auto p = testing::random_tet(rng);
    const double h2 = testing::diameter2(p);
    const Ray ray = testing::random_ray(rng, 4.0);
    int hits = 0;
    for (const auto& f : kTetFaces) {
      if (ray_triangle_intersect(ray, p[f[0]], p[f[1]], p[f[2]])) ++hits;
    }
    const auto seg = ray_tet_intersect(ray, p, w, h2);
    const bool degenerate_draw = hits != 0 && hits != 2;
    if (degenerate_draw) {
      ++degenerate;
    } else {
      bad_parity += seg.has_value() != (hits == 2);
      hits2 += hits == 2;
    }
    for (const auto& v : p) {
      if (tet_cull(ray.origin, ray.direction, v, h2, 1e-6)) {
        ++culled;
        unsound += seg.has_value() || hits > 0;
      }
    }
  }
  const bool ok = bad_parity == 0 && unsound == 0;
  return {ok ? Status::pass : Status::fail,
          fmt("1e5 ray/tet draws: %d two-face hits, %d parity violations, %d grazing draws "
              "excluded; %d culls, %d dropped a hit",
              hits2, bad_parity, degenerate, culled, unsound)};
}

// 5. Hill's vortex --------------------------------------------------------------------

Outcome hill_accuracy() {
  const auto t0 = std::chrono::steady_clock::now();
  const HillVortex hill;
  const TetMesh mesh = hill_mesh(hill);
  const HillRun r4 = run_hill(mesh, hill, 1000, 4, 7);
  const HillRun r16 = run_hill(mesh, hill, 1000, 16, 7);
  const double e4 = r4.stats.rms, e16 = r16.stats.rms;
  const double target = 0.021;
  const bool bound = e4 <= 0.08;
  const bool factor3 = e4 >= target / 3 && e4 <= target * 3;
  const bool trend = e16 < e4;
  const double secs = seconds_since(t0);
  const bool ok = bound && factor3 && trend && secs <= 600;
  return {ok ? Status::pass : Status::fail,
          fmt("Hill, %zu nodes, 1000 points: eps(4x4) = %.4f (need <= 0.08: %s; within 3x of "
              "0.021: %s), eps(16x16) = %.4f (improves: %s); unnormalized rms %.4f and %.4f; "
              "%.1fs",
              r4.nodes, e4, bound ? "yes" : "no", factor3 ? "yes" : "no", e16,
              trend ? "yes" : "no", r4.stats.rms_abs, r16.stats.rms_abs, secs)};
}

// 6-7. Gaussian ring --------------------------------------------------------------------

struct RingSetup {
  GaussianRing ring;
  RingVelocityTable table;
  std::vector<Vec3> points;
};

const RingSetup& ring_setup() {
  static const RingSetup s = [] {
    const GaussianRing ring;
    return RingSetup{ring, ring_reference_table(ring), ring_station_points(ring, 2, 4)};
  }();
  return s;
}

Outcome ring_convergence() {
  const auto t0 = std::chrono::steady_clock::now();
  const RingSetup& s = ring_setup();
  const auto presets = ring_presets();
  const std::vector<int> quad{64};
  const auto rows = run_ring_study(s.ring, s.table, presets, quad, s.points);
  std::vector<double> h, eps;
  std::string detail;
  for (const auto& r : rows) {
    h.push_back(r.h);
    eps.push_back(r.stats.rms);
    detail += fmt("%s h=%.3g eps=%.4f; ", r.resolution.c_str(), r.h, r.stats.rms);
  }
  const double slope = loglog_slope(h, eps);
  const double secs = seconds_since(t0);
  const bool ok = slope >= 1.7 && slope <= 2.6 && secs <= 1800;
  return {ok ? Status::pass : Status::fail,
          fmt("ring, 64x64 fan, %zu points: %sslope %.3f (need [1.7, 2.6]); %.1fs",
              s.points.size(), detail.c_str(), slope, secs)};
}

Outcome ring_plateau() {
  const auto t0 = std::chrono::steady_clock::now();
  const RingSetup& s = ring_setup();
  const std::vector<RingPreset> coarse{ring_presets().front()};
  const std::vector<int> quad{4, 8, 16, 32, 64};
  const auto rows = run_ring_study(s.ring, s.table, coarse, quad, s.points);
  std::vector<double> eps;
  std::string detail;
  for (const auto& r : rows) {
    eps.push_back(r.stats.rms);
    detail += fmt("%d:%.4f ", r.n_quad, r.stats.rms);
  }
  const bool falling = eps[1] <= 1.05 * eps[0] && eps[2] <= 1.05 * eps[1];
  const double change = std::fabs(eps[4] - eps[3]) / eps[3];
  const double secs = seconds_since(t0);
  const bool ok = falling && change < 0.10 && secs <= 600;
  return {ok ? Status::pass : Status::fail,
          fmt("ring %s preset, eps by fan order %s(4->16 falling: %s; 32->64 change %.1f%%, "
              "need < 10%%); %.1fs",
              coarse[0].name.c_str(), detail.c_str(), falling ? "yes" : "no", 100 * change,
              secs)};
}

// 8. Parallel execution -------------------------------------------------------------------

struct ScaleCase {
  TetMesh mesh;
  std::vector<Vec3> points;
  QuadFan fan;
};

ScaleCase scale_case(int cells, std::size_t points, int n_quad) {
  const HillVortex hill;
  return {hill_mesh(hill, cells), random_ball_points(points, 0.999, 11), build_fan(n_quad, n_quad)};
}

Outcome determinism() {
  const ScaleCase c = scale_case(10, 300, 8);
  std::vector<Vec3> first;
  bool identical = true;
  for (int workers : {1, 2, 4, 8}) {
    EvalOptions opt;
    opt.workers = workers;
    opt.deterministic = true;
    const auto v = evaluate(EvalRequest{c.mesh, c.points, {}, c.fan, opt}).velocities;
    if (first.empty()) {
      first = v;
    } else {
      identical = identical && std::memcmp(first.data(), v.data(), v.size() * sizeof(Vec3)) == 0;
    }
  }
  return {identical ? Status::pass : Status::fail,
          fmt("deterministic mode, %zu tets x %zu points, workers 1/2/4/8: velocities "
              "bit-identical: %s",
              c.mesh.tet_count(), c.points.size(), identical ? "yes" : "no")};
}

Outcome scaling() {
  const unsigned cores = std::thread::hardware_concurrency();
  if (cores < 4) {
    return {Status::skip,
            fmt("parallel scaling needs >= 4 cores, this host reports %u", cores)};
  }
  const ScaleCase c = scale_case(kHillLatticeCells, 400, 8);
  std::vector<double> ws, ts;
  std::string detail;
  for (unsigned w = 1; w <= cores; w *= 2) {
    EvalOptions opt;
    opt.workers = static_cast<int>(w);
    double best = 1e300;
    for (int rep = 0; rep < 3; ++rep) {
      best = std::min(best, evaluate(EvalRequest{c.mesh, c.points, {}, c.fan, opt}).seconds);
    }
    ws.push_back(w);
    ts.push_back(best);
    detail += fmt("%u:%.3fs ", w, best);
  }
  const double exponent = loglog_slope(ws, ts);
  return {exponent <= -0.75 ? Status::pass : Status::fail,
          fmt("wall time by workers %sexponent %.3f (need <= -0.75)", detail.c_str(), exponent)};
}

// 9. Arithmetic budget --------------------------------------------------------------------

Outcome arithmetic_budget() {
  const HillVortex hill;
  const TetMesh mesh = hill_mesh(hill, 4);
  const QuadFan fan = build_fan(8, 8);
  std::vector<Vec3> points = random_ball_points(20, 0.999, 13);
  std::vector<NodeIndex> self(points.size(), kNoNode);
  for (NodeIndex n = 0; n < mesh.node_count(); n += 17) {
    points.push_back(mesh.nodes()[n]);
    self.push_back(n);
  }
  const auto run = budget::run_traced(mesh, points, self, fan);
  const auto& k = run.counts;
  const bool ok = k.transcendental == 0;
  return {ok ? Status::pass : Status::fail,
          fmt("solver inner loop over %zu tets x %zu points x %zu rays: %llu sqrt/log/atan/trig "
              "calls (need 0), %llu divisions, %llu multiplies, %llu adds",
              mesh.tet_count(), points.size(), fan.size(),
              static_cast<unsigned long long>(k.transcendental),
              static_cast<unsigned long long>(k.div), static_cast<unsigned long long>(k.mul),
              static_cast<unsigned long long>(k.add))};
}

struct Criterion {
  const char* id;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {"c1", single_tet_oracle},  {"c2", segment_exactness}, {"c3", gauss_legendre_rules},
      {"c4", parity_and_cull},    {"c5", hill_accuracy},     {"c6", ring_convergence},
      {"c7", ring_plateau},       {"c8-determinism", determinism},
      {"c8-scaling", scaling},    {"c9", arithmetic_budget},
  };
  return all;
}

int report(const Criterion& c) {
  Outcome o;
  try {
    o = c.run();
  } catch (const std::exception& e) {
    o = {Status::fail, std::string("exception: ") + e.what()};
  }
  const char* tag = o.status == Status::pass ? "PASS" : o.status == Status::fail ? "FAIL" : "SKIP";
  std::printf("[%s] %s %s\n", tag, c.id, o.summary.c_str());
  std::fflush(stdout);
  return o.status == Status::pass ? 0 : o.status == Status::fail ? 1 : 77;
}

}  // namespace
}  // namespace tetbiot

int main(int argc, char** argv) {
  using tetbiot::criteria;
  if (argc != 2) {
    std::fprintf(stderr, "usage: %s <criterion id | all>\nids:", argv[0]);
    for (const auto& c : criteria()) std::fprintf(stderr, " %s", c.id);
    std::fprintf(stderr, "\n");
    return 2;
  }
  const std::string want = argv[1];
  int worst = 0;
  bool found = false;
  for (const auto& c : criteria()) {
    if (want != "all" && want != c.id) continue;
    found = true;
    const int rc = tetbiot::report(c);
    // A single criterion reports its own status; "all" fails if any fails.
    if (want != "all") worst = rc;
    else if (rc == 1) worst = 1;
  }
  if (!found) {
    std::fprintf(stderr, "unknown criterion %s\n", argv[1]);
    return 2;
  }
  return worst;
}
