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
// TetGen .node/.ele and the CSV side files.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "tetbiot/errors.hpp"
#include "tetbiot/mesh.hpp"

namespace tetbiot {

namespace {

/// Whitespace (or comma) separated records with `#` comments and blank
/// lines skipped, keeping track of the physical line number.
class RecordReader {
 public:
  RecordReader(const std::filesystem::path& path, bool comma_separated)
      : path_(path.string()), in_(path), commas_(comma_separated) {
    if (!in_) throw IoError("cannot open " + path_);
  }

  bool next(std::vector<std::string_view>& fields) {
    fields.clear();
    while (std::getline(in_, line_)) {
      ++line_no_;
      std::string_view view(line_);
      if (auto hash = view.find('#'); hash != std::string_view::npos) {
        view = view.substr(0, hash);
      }
      split(view, fields);
      if (!fields.empty()) return true;
    }
    return false;
  }

  double real(std::string_view s) const {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      fail("expected a real number, got '" + std::string(s) + "'");
    }
    return v;
  }

  long long integer(std::string_view s) const {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      fail("expected an integer, got '" + std::string(s) + "'");
    }
    return v;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(path_, line_no_, what);
  }

  const std::string& path() const { return path_; }
  std::size_t line() const { return line_no_; }

 private:
  void split(std::string_view view, std::vector<std::string_view>& out) const {
    std::size_t i = 0;
    auto is_sep = [this](char c) {
      return c == ' ' || c == '\t' || c == '\r' || (commas_ && c == ',');
    };
    while (i < view.size()) {
      while (i < view.size() && is_sep(view[i])) ++i;
      std::size_t j = i;
      while (j < view.size() && !is_sep(view[j])) ++j;
      if (j > i) out.push_back(view.substr(i, j - i));
      i = j;
    }
  }

  std::string path_;
  std::ifstream in_;
  bool commas_;
  std::string line_;
  std::size_t line_no_ = 0;
};

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using File = std::unique_ptr<std::FILE, FileCloser>;

File open_for_write(const std::filesystem::path& path) {
  File f(std::fopen(path.string().c_str(), "w"));
  if (!f) throw IoError("cannot write " + path.string());
  return f;
}

void close_checked(File f, const std::filesystem::path& path) {
  if (std::fclose(f.release()) != 0) throw IoError("error writing " + path.string());
}

}  // namespace

TetMesh load_tetgen(const std::filesystem::path& node_path,
                    const std::filesystem::path& ele_path) {
  std::vector<std::string_view> f;

  RecordReader nodes_in(node_path, false);
  if (!nodes_in.next(f)) nodes_in.fail("missing header");
  if (f.size() < 2) nodes_in.fail("header needs '<points> <dim> [<attrs> <markers>]'");
  const long long n_points = nodes_in.integer(f[0]);
  const long long dim = nodes_in.integer(f[1]);
  const long long n_attrs = f.size() > 2 ? nodes_in.integer(f[2]) : 0;
  const long long n_marks = f.size() > 3 ? nodes_in.integer(f[3]) : 0;
  if (n_points < 0 || n_attrs < 0 || n_marks < 0 || n_marks > 1) {
    nodes_in.fail("invalid header values");
  }
  if (dim != 3) {
    throw UnsupportedFormat(nodes_in.path() + ": dimension " + std::to_string(dim) +
                            " (only 3 is supported)");
  }

  std::vector<Vec3> nodes;
  std::vector<Vec3> vorticity;
  nodes.reserve(static_cast<std::size_t>(n_points));
  long long base = 0;
  const std::size_t row_width = 4 + static_cast<std::size_t>(n_attrs + n_marks);
  for (long long i = 0; i < n_points; ++i) {
    if (!nodes_in.next(f)) nodes_in.fail("expected " + std::to_string(n_points) + " nodes");
    if (f.size() != row_width) {
      nodes_in.fail("node row has " + std::to_string(f.size()) + " fields, expected " +
                    std::to_string(row_width));
    }
    const long long index = nodes_in.integer(f[0]);
    if (i == 0) {
      if (index != 0 && index != 1) nodes_in.fail("first node index must be 0 or 1");
      base = index;
    } else if (index != base + i) {
      nodes_in.fail("node index " + std::to_string(index) + " out of sequence");
    }
    nodes.push_back({nodes_in.real(f[1]), nodes_in.real(f[2]), nodes_in.real(f[3])});
    if (n_attrs >= 3) {
      vorticity.push_back({nodes_in.real(f[4]), nodes_in.real(f[5]), nodes_in.real(f[6])});
    }
  }

  RecordReader ele_in(ele_path, false);
  if (!ele_in.next(f)) ele_in.fail("missing header");
  if (f.size() < 2) ele_in.fail("header needs '<tets> <nodes per tet> [<attrs>]'");
  const long long n_tets = ele_in.integer(f[0]);
  const long long per_tet = ele_in.integer(f[1]);
  const long long tet_attrs = f.size() > 2 ? ele_in.integer(f[2]) : 0;
  if (n_tets < 0 || tet_attrs < 0) ele_in.fail("invalid header values");
  if (per_tet != 4) {
    throw UnsupportedFormat(ele_in.path() + ": " + std::to_string(per_tet) +
                            " nodes per tetrahedron (only 4 is supported)");
  }

  std::vector<std::array<NodeIndex, 4>> tets;
  tets.reserve(static_cast<std::size_t>(n_tets));
  const std::size_t ele_width = 5 + static_cast<std::size_t>(tet_attrs);
  for (long long t = 0; t < n_tets; ++t) {
    if (!ele_in.next(f)) ele_in.fail("expected " + std::to_string(n_tets) + " tetrahedra");
    if (f.size() != ele_width) {
      ele_in.fail("tet row has " + std::to_string(f.size()) + " fields, expected " +
                  std::to_string(ele_width));
    }
    std::array<NodeIndex, 4> ids{};
    for (std::size_t k = 0; k < 4; ++k) {
      const long long v = ele_in.integer(f[k + 1]) - base;
      if (v < 0 || v >= n_points) {
        throw ValidationError(ele_in.path() + ":" + std::to_string(ele_in.line()) +
                              ": node " + std::to_string(v + base) +
                              " out of range for " + std::to_string(n_points) + " nodes");
      }
      ids[k] = static_cast<NodeIndex>(v);
    }
    tets.push_back(ids);
  }

  return TetMesh(std::move(nodes), std::move(tets), std::move(vorticity),
                 static_cast<int>(base));
}

void write_tetgen(const TetMesh& mesh, const std::filesystem::path& node_path,
                  const std::filesystem::path& ele_path, bool with_vorticity) {
  const int base = mesh.index_base();
  {
    File f = open_for_write(node_path);
    std::fprintf(f.get(), "%zu 3 %d 0\n", mesh.node_count(), with_vorticity ? 3 : 0);
    for (std::size_t i = 0; i < mesh.node_count(); ++i) {
      const Vec3& p = mesh.nodes()[i];
      std::fprintf(f.get(), "%zu %.17g %.17g %.17g", i + static_cast<std::size_t>(base), p.x,
                   p.y, p.z);
      if (with_vorticity) {
        const Vec3& w = mesh.vorticity()[i];
        std::fprintf(f.get(), " %.17g %.17g %.17g", w.x, w.y, w.z);
      }
      std::fputc('\n', f.get());
    }
    close_checked(std::move(f), node_path);
  }
  {
    File f = open_for_write(ele_path);
    std::fprintf(f.get(), "%zu 4 0\n", mesh.tet_count());
    for (std::size_t t = 0; t < mesh.tet_count(); ++t) {
      const auto& n = mesh.tets()[t].nodes;
      std::fprintf(f.get(), "%zu %u %u %u %u\n", t + static_cast<std::size_t>(base),
                   n[0] + static_cast<unsigned>(base), n[1] + static_cast<unsigned>(base),
                   n[2] + static_cast<unsigned>(base), n[3] + static_cast<unsigned>(base));
    }
    close_checked(std::move(f), ele_path);
  }
}

TetMesh apply_vorticity_csv(const TetMesh& mesh, const std::filesystem::path& csv_path) {
  RecordReader in(csv_path, true);
  std::vector<std::string_view> f;
  if (!in.next(f)) in.fail("missing header");
  if (f.size() != 4 || f[0] != "node" || f[1] != "wx" || f[2] != "wy" || f[3] != "wz") {
    in.fail("header must be 'node,wx,wy,wz'");
  }
  const long long n = static_cast<long long>(mesh.node_count());
  const long long base = mesh.index_base();
  std::vector<Vec3> w(mesh.node_count());
  std::vector<bool> seen(mesh.node_count(), false);
  while (in.next(f)) {
    if (f.size() != 4) in.fail("expected 4 fields");
    const long long id = in.integer(f[0]) - base;
    if (id < 0 || id >= n) {
      throw ValidationError(in.path() + ":" + std::to_string(in.line()) + ": node " +
                            std::to_string(id + base) + " not in mesh");
    }
    const auto i = static_cast<std::size_t>(id);
    if (seen[i]) {
      throw ValidationError(in.path() + ":" + std::to_string(in.line()) + ": node " +
                            std::to_string(id + base) + " listed twice");
    }
    seen[i] = true;
    w[i] = {in.real(f[1]), in.real(f[2]), in.real(f[3])};
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) {
      throw ValidationError(in.path() + ": no vorticity for node " +
                            std::to_string(static_cast<long long>(i) + base));
    }
  }
  return mesh.with_vorticity(std::move(w));
}

void write_vorticity_csv(const TetMesh& mesh, const std::filesystem::path& csv_path) {
  File f = open_for_write(csv_path);
  std::fputs("node,wx,wy,wz\n", f.get());
  for (std::size_t i = 0; i < mesh.node_count(); ++i) {
    const Vec3& w = mesh.vorticity()[i];
    std::fprintf(f.get(), "%zu,%.17g,%.17g,%.17g\n",
                 i + static_cast<std::size_t>(mesh.index_base()), w.x, w.y, w.z);
  }
  close_checked(std::move(f), csv_path);
}

void write_velocity_csv(const std::filesystem::path& path, std::span<const std::int64_t> ids,
                        std::span<const Vec3> points, std::span<const Vec3> velocities) {
  if (ids.size() != points.size() || points.size() != velocities.size()) {
    throw std::invalid_argument("write_velocity_csv: column lengths differ");
  }
  File f = open_for_write(path);
  std::fputs("node,x,y,z,vx,vy,vz\n", f.get());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Vec3& p = points[i];
    const Vec3& v = velocities[i];
    std::fprintf(f.get(), "%lld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                 static_cast<long long>(ids[i]), p.x, p.y, p.z, v.x, v.y, v.z);
  }
  close_checked(std::move(f), path);
}

}  // namespace tetbiot
