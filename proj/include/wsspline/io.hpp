#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "wsspline/global_space.hpp"
#include "wsspline/triangulation.hpp"
#include "wsspline/ws_split.hpp"

namespace wsspline::io {

/// Shortest decimal that round-trips.
std::string format_shortest(double v);
/// printf %.17g.
std::string format_17g(double v);
std::string hex64(uint64_t v);

/// Lines `v x y` and `t i j k` (1-based); `#` starts a comment.
/// Throws ErrorKind::parse with the line number.
Triangulation read_mesh(std::istream& in);
Triangulation read_mesh_file(const std::string& path);
void write_mesh(std::ostream& out, const Triangulation& mesh);

/// Header lines then one row per triangle: index, 28 B-tilde coefficients.
void write_spline(std::ostream& out, const GlobalSpline& s);
/// Throws ErrorKind::hash_mismatch if the file was written for another mesh.
GlobalSpline read_spline(std::istream& in, const SplineSpace& space);

/// Either nodal Hermite records or `mds k value` records.
struct HermiteInput {
  bool is_mds = false;
  GlobalHermiteData nodal;
  std::vector<double> mds;
};

/// Throws ErrorKind::parse for malformed lines and ErrorKind::dimension_mismatch
/// when the records do not cover the required set exactly once.
HermiteInput read_hermite(std::istream& in, const Triangulation& mesh);
void write_hermite(std::ostream& out, const Triangulation& mesh, const GlobalHermiteData& data);

void write_split_vertices_csv(std::ostream& out, const WsSplit& split);
void write_split_cells_csv(std::ostream& out, const WsSplit& split);
void write_split_svg(std::ostream& out, const std::vector<const WsSplit*>& splits);

}  // namespace wsspline::io
