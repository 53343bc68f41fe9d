#include "wsspline/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "wsspline/error.hpp"

namespace wsspline::io {

namespace {

std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::string cleaned = line.substr(0, line.find('#'));
  std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
  std::istringstream ss(cleaned);
  std::string t;
  while (ss >> t) out.push_back(t);
  return out;
}

[[noreturn]] void parse_error(int line, const std::string& what) {
  fail(ErrorKind::parse, "line " + std::to_string(line) + ": " + what);
}

double to_double(const std::string& s, int line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) parse_error(line, "bad number '" + s + "'");
  return v;
}

long to_int(const std::string& s, int line) {
  long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) parse_error(line, "bad integer '" + s + "'");
  return v;
}

int to_id(const std::string& s, int line, int count, const char* what) {
  const long v = to_int(s, line);
  if (v < 1 || v > count) parse_error(line, std::string(what) + " id out of range");
  return static_cast<int>(v - 1);
}

}  // namespace

std::string format_shortest(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

std::string format_17g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

Triangulation read_mesh(std::istream& in) {
  std::vector<Point> v;
  std::vector<std::array<int, 3>> t;
  std::vector<std::pair<std::array<long, 3>, int>> raw;
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    const auto tk = tokens(line);
    if (tk.empty()) continue;
    if (tk[0] == "v" && tk.size() == 3) {
      v.push_back({to_double(tk[1], no), to_double(tk[2], no)});
    } else if (tk[0] == "t" && tk.size() == 4) {
      raw.push_back({{to_int(tk[1], no), to_int(tk[2], no), to_int(tk[3], no)}, no});
    } else {
      parse_error(no, "expected 'v x y' or 't i j k'");
    }
  }
  for (const auto& [ids, ln] : raw) {
    std::array<int, 3> tri{};
    for (int k = 0; k < 3; ++k) {
      if (ids[k] < 1 || ids[k] > static_cast<long>(v.size())) parse_error(ln, "vertex id out of range");
      tri[k] = static_cast<int>(ids[k] - 1);
    }
    t.push_back(tri);
  }
  if (t.empty()) fail(ErrorKind::parse, "mesh has no triangles");
  return Triangulation(std::move(v), std::move(t));
}

Triangulation read_mesh_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::parse, "cannot open " + path);
  return read_mesh(in);
}

void write_mesh(std::ostream& out, const Triangulation& mesh) {
  for (const Point& p : mesh.vertices()) out << "v " << format_shortest(p.x) << ' ' << format_shortest(p.y) << '\n';
  for (const auto& t : mesh.triangles()) out << "t " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
}

void write_spline(std::ostream& out, const GlobalSpline& s) {
  out << "# ws-spline\n";
  out << "mesh_hash," << hex64(s.space().mesh().hash()) << '\n';
  out << "basis,B-tilde\n";
  out << "triangles," << s.coeffs().size() << '\n';
  for (size_t t = 0; t < s.coeffs().size(); ++t) {
    out << t + 1;
    for (double c : s.coeffs()[t].values) out << ',' << format_shortest(c);
    out << '\n';
  }
}

GlobalSpline read_spline(std::istream& in, const SplineSpace& space) {
  std::string line;
  int no = 0;
  std::string hash;
  std::string basis;
  long count = -1;
  std::vector<LocalCoeffs> coeffs;
  std::vector<bool> seen;
  while (std::getline(in, line)) {
    ++no;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() == 2 && f[0] == "mesh_hash") {
      hash = f[1];
    } else if (f.size() == 2 && f[0] == "basis") {
      basis = f[1];
    } else if (f.size() == 2 && f[0] == "triangles") {
      count = to_int(f[1], no);
      if (count != space.mesh().n_triangles()) {
        fail(ErrorKind::hash_mismatch, "spline has " + f[1] + " triangles, mesh has " +
                                           std::to_string(space.mesh().n_triangles()));
      }
      coeffs.assign(static_cast<size_t>(count), LocalCoeffs{});
      seen.assign(static_cast<size_t>(count), false);
    } else if (f.size() == n_basis + 1 && count >= 0) {
      const int t = to_id(f[0], no, static_cast<int>(count), "triangle");
      if (seen[t]) parse_error(no, "duplicate triangle row");
      seen[t] = true;
      coeffs[t].tag = basis == "B" ? BasisTag::b : BasisTag::b_tilde;
      for (int i = 0; i < n_basis; ++i) coeffs[t].values[i] = to_double(f[i + 1], no);
    } else {
      parse_error(no, "unexpected spline record");
    }
  }
  if (hash.empty() || count < 0) fail(ErrorKind::parse, "spline header incomplete");
  if (basis != "B-tilde" && basis != "B") fail(ErrorKind::parse, "unknown basis tag '" + basis + "'");
  if (hash != hex64(space.mesh().hash())) fail(ErrorKind::hash_mismatch, "spline was written for a different mesh");
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) fail(ErrorKind::parse, "missing triangle rows");
  return GlobalSpline(space, std::move(coeffs));
}

HermiteInput read_hermite(std::istream& in, const Triangulation& mesh) {
  HermiteInput h;
  const int nv = mesh.n_vertices();
  const int ne = mesh.n_edges();
  const int nt = mesh.n_triangles();
  h.nodal.vertex.assign(nv, {});
  h.nodal.edge.assign(ne, {});
  h.nodal.triangle.assign(nt, 0.0);
  std::vector<int> vset(6 * nv, 0), eset(3 * ne, 0), tset(nt, 0);
  std::map<int, double> mds;
  int nodal_records = 0;
  std::string line;
  int no = 0;
  auto mark = [&](std::vector<int>& s, int idx) {
    if (s[idx]++) fail(ErrorKind::dimension_mismatch, "line " + std::to_string(no) + ": duplicate Hermite record");
  };
  while (std::getline(in, line)) {
    ++no;
    const auto tk = tokens(line);
    if (tk.empty()) continue;
    const std::string& kind = tk[0];
    if (kind == "mds" && tk.size() == 3) {
      const long k = to_int(tk[1], no);
      if (k < 1) parse_error(no, "mds id out of range");
      if (!mds.emplace(static_cast<int>(k - 1), to_double(tk[2], no)).second) {
        fail(ErrorKind::dimension_mismatch, "line " + std::to_string(no) + ": duplicate mds record");
      }
      continue;
    }
    ++nodal_records;
    if (kind == "vertex" && (tk.size() == 4 || tk.size() == 5)) {
      const int v = to_id(tk[1], no, nv, "vertex");
      int slot = -1;
      if (tk.size() == 4 && tk[2] == "value") slot = 0;
      if (tk.size() == 5 && tk[2] == "d1") slot = tk[3] == "x" ? 1 : (tk[3] == "y" ? 2 : -1);
      if (tk.size() == 5 && tk[2] == "d2") slot = tk[3] == "xx" ? 3 : (tk[3] == "xy" ? 4 : (tk[3] == "yy" ? 5 : -1));
      if (slot < 0) parse_error(no, "unknown vertex operator");
      mark(vset, 6 * v + slot);
      h.nodal.vertex[v][slot] = to_double(tk.back(), no);
    } else if (kind == "edge" && tk.size() == 5) {
      const int i = to_id(tk[1], no, nv, "vertex");
      const int j = to_id(tk[2], no, nv, "vertex");
      const int e = mesh.find_edge(i, j);
      if (e < 0) parse_error(no, "no such edge");
      const bool forward = mesh.edges()[e].a == i;
      const double value = to_double(tk[4], no);
      if (tk[3] == "normal-d1") {
        mark(eset, 3 * e);
        h.nodal.edge[e][0] = forward ? value : -value;
      } else if (tk[3] == "normal-d2") {
        const int slot = forward ? 1 : 2;
        mark(eset, 3 * e + slot);
        h.nodal.edge[e][slot] = value;
      } else {
        parse_error(no, "unknown edge operator");
      }
    } else if (kind == "triangle" && tk.size() == 4 && tk[2] == "value") {
      const int t = to_id(tk[1], no, nt, "triangle");
      mark(tset, t);
      h.nodal.triangle[t] = to_double(tk[3], no);
    } else {
      parse_error(no, "unknown Hermite record");
    }
  }
  const int64_t dim = dimension(mesh);
  if (!mds.empty()) {
    if (nodal_records > 0) fail(ErrorKind::dimension_mismatch, "mixed nodal and mds records");
    if (static_cast<int64_t>(mds.size()) != dim || mds.rbegin()->first != dim - 1) {
      fail(ErrorKind::dimension_mismatch,
           "expected " + std::to_string(dim) + " mds records, got " + std::to_string(mds.size()));
    }
    h.is_mds = true;
    for (const auto& [k, v] : mds) h.mds.push_back(v);
    return h;
  }
  if (nodal_records != dim) {
    fail(ErrorKind::dimension_mismatch,
         "expected " + std::to_string(dim) + " Hermite records, got " + std::to_string(nodal_records));
  }
  return h;
}

void write_hermite(std::ostream& out, const Triangulation& mesh, const GlobalHermiteData& data) {
  static const char* names[6] = {"value", "d1 x", "d1 y", "d2 xx", "d2 xy", "d2 yy"};
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    for (int k = 0; k < 6; ++k) out << "vertex " << v + 1 << ' ' << names[k] << ' ' << format_shortest(data.vertex[v][k]) << '\n';
  }
  for (int e = 0; e < mesh.n_edges(); ++e) {
    const MeshEdge& me = mesh.edges()[e];
    out << "edge " << me.a + 1 << ' ' << me.b + 1 << " normal-d1 " << format_shortest(data.edge[e][0]) << '\n';
    out << "edge " << me.a + 1 << ' ' << me.b + 1 << " normal-d2 " << format_shortest(data.edge[e][1]) << '\n';
    out << "edge " << me.b + 1 << ' ' << me.a + 1 << " normal-d2 " << format_shortest(data.edge[e][2]) << '\n';
  }
  for (int t = 0; t < mesh.n_triangles(); ++t) out << "triangle " << t + 1 << " value " << format_shortest(data.triangle[t]) << '\n';
}

void write_split_vertices_csv(std::ostream& out, const WsSplit& split) {
  out << "id,x,y\n";
  for (size_t i = 0; i < split.vertices().size(); ++i) {
    out << i + 1 << ',' << format_shortest(split.vertices()[i].x) << ',' << format_shortest(split.vertices()[i].y) << '\n';
  }
}

void write_split_cells_csv(std::ostream& out, const WsSplit& split) {
  out << "id,vertices\n";
  for (size_t c = 0; c < split.cell_polygons().size(); ++c) {
    out << c + 1 << ',';
    const auto& loop = split.cell_polygons()[c];
    for (size_t k = 0; k < loop.size(); ++k) out << (k ? ";" : "") << loop[k] + 1;
    out << '\n';
  }
}

void write_split_svg(std::ostream& out, const std::vector<const WsSplit*>& splits) {
  double xmin = 1e300, ymin = 1e300, xmax = -1e300, ymax = -1e300;
  for (const WsSplit* s : splits) {
    for (const Point& p : s->vertices()) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
  }
  const double w = std::max(xmax - xmin, ymax - ymin);
  const double scale = 800.0 / (w > 0 ? w : 1.0);
  auto X = [&](double x) { return format_shortest(20.0 + (x - xmin) * scale); };
  auto Y = [&](double y) { return format_shortest(20.0 + (ymax - y) * scale); };
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_shortest(40.0 + (xmax - xmin) * scale)
      << "\" height=\"" << format_shortest(40.0 + (ymax - ymin) * scale) << "\">\n";
  for (const WsSplit* s : splits) {
    const Triangle& t = s->triangle();
    out << "<polygon fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
    for (int k = 0; k < 3; ++k) out << (k ? " " : "") << X(t[k].x) << ',' << Y(t[k].y);
    out << "\"/>\n";
    const auto& arr = s->arrangement();
    for (const auto& ends : arr.line_endpoints) {
      const Point a = s->boundary_points()[ends[0]];
      const Point b = s->boundary_points()[ends[1]];
      out << "<line x1=\"" << X(a.x) << "\" y1=\"" << Y(a.y) << "\" x2=\"" << X(b.x) << "\" y2=\"" << Y(b.y)
          << "\" stroke=\"steelblue\" stroke-width=\"0.6\"/>\n";
    }
  }
  out << "</svg>\n";
}

}  // namespace wsspline::io
