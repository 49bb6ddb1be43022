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
#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <stdexcept>
#include <thread>

#include <CLI11/CLI11.hpp>

#include "tetbiot/errors.hpp"
#include "tetbiot/mesh.hpp"
#include "tetbiot/quadrature.hpp"
#include "tetbiot/reference_fields.hpp"
#include "tetbiot/solver.hpp"
#include "tetbiot/studies.hpp"

namespace tetbiot::cli {

namespace {

std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// CSV destination: the --out file if given, else `fallback`.
class CsvSink {
 public:
  CsvSink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::out | std::ios::trunc);
      if (!file_) throw IoError("cannot write " + path);
      os_ = &file_;
    }
  }
  std::ostream& operator*() { return *os_; }
  void close(const std::string& path) {
    if (file_.is_open()) {
      file_.close();
      if (!file_) throw IoError("error writing " + path);
    }
  }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

struct EvalArgs {
  std::string mesh, ele, vorticity, out;
  int nphi = 16;
  int ntheta = 16;
  int workers = 1;
  bool deterministic = false;
};

struct HillArgs {
  std::string mesh, ele, out;
  std::size_t points = 1000;
  int nquad = 4;
  int cells = kHillLatticeCells;
  std::uint64_t seed = 1;
  int workers = 1;
  bool deterministic = false;
  bool zero_vorticity = false;
};

struct RingArgs {
  std::vector<std::string> presets{"coarse", "medium", "fine"};
  std::vector<int> quads{64};
  int stations = 2;
  int per_side = 4;
  int workers = 1;
  std::uint64_t seed = 1;
  bool deterministic = false;
  std::string out;
};

struct ScaleArgs {
  std::vector<int> workers{1, 2, 4};
  int nquad = 8;
  int cells = kHillLatticeCells;
  std::size_t points = 200;
  std::uint64_t seed = 1;
  bool deterministic = false;
  std::string out;
};

struct MeshArgs {
  std::string kind = "hill";
  int cells = kHillLatticeCells;
  double h_over_sigma = 1.0;
  std::string out;
};

struct TableArgs {
  double step_sigmas = 1.0 / 24.0;
  double half_width_sigmas = 3.5;
  std::string out;
};

void check_fan_order(int n, const char* what) {
  if (n < 1 || n > kMaxGaussOrder) {
    throw ValidationError(std::string(what) + " must be in [1, " +
                          std::to_string(kMaxGaussOrder) + "], got " + std::to_string(n));
  }
}

TetMesh load_mesh(const std::string& node, const std::string& ele) {
  return load_tetgen(node, ele);
}

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  check_fan_order(a.nphi, "--nphi");
  check_fan_order(a.ntheta, "--ntheta");
  TetMesh mesh = load_mesh(a.mesh, a.ele);
  if (!a.vorticity.empty()) mesh = apply_vorticity_csv(mesh, a.vorticity);
  const QuadFan fan = build_fan(a.nphi, a.ntheta);
  EvalOptions opt;
  opt.workers = a.workers;
  opt.deterministic = a.deterministic;
  const VelocityField field = evaluate_at_nodes(mesh, fan, opt);

  std::vector<std::int64_t> ids(mesh.node_count());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    ids[i] = static_cast<std::int64_t>(i) + mesh.index_base();
  }
  if (!a.out.empty()) write_velocity_csv(a.out, ids, mesh.nodes(), field.velocities);
  out << "points=" << mesh.node_count() << " tets=" << mesh.tet_count()
      << " fan=" << fan.size() << " seconds=" << fmt_short(field.seconds)
      << " workers=" << field.workers << '\n';
  return kOk;
}

int cmd_hill(const HillArgs& a, std::ostream& out) {
  check_fan_order(a.nquad, "--nquad");
  if (a.points < 1) throw ValidationError("--points must be >= 1");
  HillVortex hill;
  if (a.zero_vorticity) hill.strength = 0.0;
  TetMesh mesh;
  if (!a.mesh.empty()) {
    mesh = set_vorticity(load_mesh(a.mesh, a.ele),
                         [&](const Vec3& p) { return hill_vorticity(p, hill); });
  } else {
    if (a.cells < 1) throw ValidationError("--cells must be >= 1");
    mesh = hill_mesh(hill, a.cells);
  }
  EvalOptions opt;
  opt.workers = a.workers;
  opt.deterministic = a.deterministic;
  const HillRun run = run_hill(mesh, hill, a.points, a.nquad, a.seed, opt);

  CsvSink sink(a.out, out);
  *sink << "n_points,n_quad,workers,eps,seconds\n"
        << a.points << ',' << run.n_quad << ',' << run.workers << ',' << fmt_g(run.stats.rms)
        << ',' << fmt_short(run.stats.seconds) << '\n';
  sink.close(a.out);
  if (!a.out.empty()) {
    out << "nodes=" << run.nodes << " tets=" << run.tets << " eps=" << fmt_short(run.stats.rms)
        << " abs=" << fmt_short(run.stats.rms_abs) << '\n';
  }
  return kOk;
}

int cmd_ring(const RingArgs& a, std::ostream& out) {
  for (int q : a.quads) check_fan_order(q, "--quad");
  const auto all = ring_presets();
  std::vector<RingPreset> chosen;
  for (const auto& name : a.presets) {
    const auto it = std::find_if(all.begin(), all.end(),
                                 [&](const RingPreset& p) { return p.name == name; });
    if (it == all.end()) throw ValidationError("unknown ring preset '" + name + "'");
    chosen.push_back(*it);
  }
  const GaussianRing ring;
  const RingVelocityTable table = ring_reference_table(ring);
  const auto points = ring_station_points(ring, a.stations, a.per_side);
  EvalOptions opt;
  opt.workers = a.workers;
  opt.deterministic = a.deterministic;
  const auto rows = run_ring_study(ring, table, chosen, a.quads, points, opt);

  CsvSink sink(a.out, out);
  *sink << "resolution,h,n_quad,eps\n";
  for (const auto& r : rows) {
    *sink << r.resolution << ',' << fmt_g(r.h) << ',' << r.n_quad << ',' << fmt_g(r.stats.rms)
          << '\n';
  }
  sink.close(a.out);

  const int top = *std::max_element(a.quads.begin(), a.quads.end());
  std::vector<double> hs, eps;
  for (const auto& r : rows) {
    if (r.n_quad != top) continue;
    hs.push_back(r.h);
    eps.push_back(r.stats.rms);
  }
  if (hs.size() >= 2) {
    out << "slope=" << fmt_short(loglog_slope(hs, eps)) << " n_quad=" << top << '\n';
  }
  return kOk;
}

int cmd_scale(const ScaleArgs& a, std::ostream& out, std::ostream& err) {
  check_fan_order(a.nquad, "--nquad");
  const unsigned cores = std::thread::hardware_concurrency();
  for (int w : a.workers) {
    if (w < 1) throw ValidationError("worker counts must be >= 1");
    if (cores != 0 && static_cast<unsigned>(w) > cores) {
      err << "warning: " << w << " workers exceed the " << cores << " available cores\n";
    }
  }
  const HillVortex hill;
  const TetMesh mesh = hill_mesh(hill, a.cells);
  const auto points = random_ball_points(a.points, 0.999, a.seed);
  const QuadFan fan = build_fan(a.nquad, a.nquad);

  CsvSink sink(a.out, out);
  *sink << "workers,seconds\n";
  std::vector<double> ws, ts;
  std::optional<std::vector<Vec3>> first;
  bool identical = true;
  for (int w : a.workers) {
    EvalOptions opt;
    opt.workers = w;
    opt.deterministic = a.deterministic;
    const VelocityField field = evaluate(EvalRequest{mesh, points, {}, fan, opt});
    *sink << w << ',' << fmt_short(field.seconds) << '\n';
    ws.push_back(w);
    ts.push_back(field.seconds);
    if (!first) {
      first = field.velocities;
    } else if (field.velocities != *first) {
      identical = false;
    }
  }
  sink.close(a.out);
  if (std::set<double>(ws.begin(), ws.end()).size() >= 2) {
    out << "exponent=" << fmt_short(loglog_slope(ws, ts)) << '\n';
  }
  if (a.deterministic) out << "identical=" << (identical ? "yes" : "no") << '\n';
  return kOk;
}

int cmd_mesh(const MeshArgs& a, std::ostream& out) {
  if (a.out.empty()) throw ValidationError("--out is required");
  TetMesh mesh;
  if (a.kind == "hill") {
    if (a.cells < 1) throw ValidationError("--cells must be >= 1");
    mesh = hill_mesh(HillVortex{}, a.cells);
  } else if (a.kind == "ring") {
    const GaussianRing ring;
    mesh = ring_mesh(ring, a.h_over_sigma * ring.core);
  } else {
    throw ValidationError("unknown mesh kind '" + a.kind + "' (hill, ring)");
  }
  write_tetgen(mesh, a.out + ".node", a.out + ".ele");
  out << "nodes=" << mesh.node_count() << " tets=" << mesh.tet_count() << '\n';
  return kOk;
}

int cmd_ring_table(const TableArgs& a, std::ostream& out) {
  if (a.out.empty()) throw ValidationError("--out is required");
  if (!(a.step_sigmas > 0.0) || !(a.half_width_sigmas > 0.0)) {
    throw ValidationError("--step and --half-width must be > 0");
  }
  const GaussianRing ring;
  const RingVelocityTable table(
      ring, core_grid(ring, a.half_width_sigmas * ring.core, a.step_sigmas * ring.core));
  table.write_csv(a.out);
  out << "nodes=" << table.grid().nr * table.grid().nz << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Biot-Savart velocity evaluation on tetrahedral meshes", "tetbiot"};
  app.require_subcommand(1);

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Velocity at every node of a TetGen mesh");
  eval->add_option("--mesh", ev.mesh, "TetGen .node file")->required();
  eval->add_option("--ele", ev.ele, "TetGen .ele file")->required();
  eval->add_option("--vorticity", ev.vorticity, "CSV node,wx,wy,wz overriding node attributes");
  eval->add_option("--nphi", ev.nphi, "Gauss points in phi")->capture_default_str();
  eval->add_option("--ntheta", ev.ntheta, "Gauss points in theta")->capture_default_str();
  eval->add_option("--workers", ev.workers, "Worker threads")->capture_default_str();
  eval->add_option("--out", ev.out, "Velocity CSV node,x,y,z,vx,vy,vz");
  eval->add_flag("--deterministic", ev.deterministic, "Fixed-order reduction");

  HillArgs hl;
  auto* hill = app.add_subcommand("hill", "Error against Hill's spherical vortex");
  hill->add_option("--mesh", hl.mesh, "TetGen .node file (default: lattice ball)");
  hill->add_option("--ele", hl.ele, "TetGen .ele file");
  hill->add_option("--points", hl.points, "Random interior evaluation points")
      ->capture_default_str();
  hill->add_option("--nquad", hl.nquad, "Gauss points in phi and theta")->capture_default_str();
  hill->add_option("--cells", hl.cells, "Lattice cells per axis")->capture_default_str();
  hill->add_option("--seed", hl.seed, "Point sampling seed")->capture_default_str();
  hill->add_option("--workers", hl.workers, "Worker threads")->capture_default_str();
  hill->add_option("--out", hl.out, "CSV n_points,n_quad,workers,eps,seconds");
  hill->add_flag("--deterministic", hl.deterministic, "Fixed-order reduction");
  hill->add_flag("--zero-vorticity", hl.zero_vorticity, "Zero field and zero reference");

  RingArgs rg;
  auto* ring = app.add_subcommand("ring", "Gaussian ring convergence study");
  ring->add_option("--presets", rg.presets, "Resolutions: coarse, medium, fine")
      ->delimiter(',');
  ring->add_option("--quad", rg.quads, "Fan orders")->delimiter(',');
  ring->add_option("--stations", rg.stations, "Meridional planes")->capture_default_str();
  ring->add_option("--per-side", rg.per_side, "Points per side in each plane")
      ->capture_default_str();
  ring->add_option("--workers", rg.workers, "Worker threads")->capture_default_str();
  ring->add_option("--seed", rg.seed, "Accepted for uniformity; the study is not random");
  ring->add_option("--out", rg.out, "CSV resolution,h,n_quad,eps");
  ring->add_flag("--deterministic", rg.deterministic, "Fixed-order reduction");

  ScaleArgs sc;
  auto* scale = app.add_subcommand("scale", "Wall time against worker count");
  scale->add_option("--workers", sc.workers, "Worker counts")->delimiter(',');
  scale->add_option("--nquad", sc.nquad, "Gauss points in phi and theta")->capture_default_str();
  scale->add_option("--cells", sc.cells, "Lattice cells per axis")->capture_default_str();
  scale->add_option("--points", sc.points, "Evaluation points")->capture_default_str();
  scale->add_option("--seed", sc.seed, "Point sampling seed")->capture_default_str();
  scale->add_option("--out", sc.out, "CSV workers,seconds");
  scale->add_flag("--deterministic", sc.deterministic, "Fixed-order reduction");

  MeshArgs ms;
  auto* mesh = app.add_subcommand("mesh", "Write a test mesh as TetGen files");
  mesh->add_option("--kind", ms.kind, "hill or ring")->capture_default_str();
  mesh->add_option("--cells", ms.cells, "Lattice cells per axis (hill)")->capture_default_str();
  mesh->add_option("--spacing", ms.h_over_sigma, "Spacing in core radii (ring)")
      ->capture_default_str();
  mesh->add_option("--out", ms.out, "Output path without extension")->required();

  TableArgs tb;
  auto* table = app.add_subcommand("ring-table", "Tabulate the ring reference velocity");
  table->add_option("--step", tb.step_sigmas, "Grid spacing in core radii")
      ->capture_default_str();
  table->add_option("--half-width", tb.half_width_sigmas, "Half width in core radii")
      ->capture_default_str();
  table->add_option("--out", tb.out, "CSV r,z,ur,uz")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*eval) return cmd_eval(ev, out);
    if (*hill) return cmd_hill(hl, out);
    if (*ring) return cmd_ring(rg, out);
    if (*scale) return cmd_scale(sc, out, err);
    if (*mesh) return cmd_mesh(ms, out);
    if (*table) return cmd_ring_table(tb, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const UnsupportedFormat& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }
  return kUsage;
}

}  // namespace tetbiot::cli
