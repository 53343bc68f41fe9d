#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "test_util.hpp"
#include "wsspline/builtin_functions.hpp"
#include "wsspline/error.hpp"
#include "wsspline/io.hpp"
#include "wsspline/sampling.hpp"

using namespace wsspline;

namespace {

ErrorKind kind_of(const std::function<void()>& f, std::string* what = nullptr) {
  try {
    f();
  } catch (const Error& e) {
    if (what) *what = e.what();
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::invalid_argument;
}

const char* two_triangle_mesh =
    "# two triangles\n"
    "v 0 0\n"
    "v 1 0\n"
    "v 0.2 1\n"
    "v 1.1 0.9\n"
    "t 1 2 3\n"
    "t 2 4 3\n";

Triangulation parse_mesh(const std::string& text) {
  std::istringstream in(text);
  return io::read_mesh(in);
}

}  // namespace

TEST_CASE("number formatting") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int k = 0; k < 1000; ++k) {
    const double v = u(rng) * std::pow(10.0, static_cast<int>(u(rng)) % 20);
    CHECK(std::stod(io::format_shortest(v)) == v);
    CHECK(std::stod(io::format_17g(v)) == v);
  }
  CHECK(io::format_shortest(0.1) == "0.1");
  CHECK(io::format_shortest(1.0) == "1");
  CHECK(io::format_17g(0.1) == "0.10000000000000001");
  CHECK(io::hex64(0xabcULL) == "0000000000000abc");
}

TEST_CASE("mesh round trip") {
  const Triangulation m = parse_mesh(two_triangle_mesh);
  CHECK(m.n_vertices() == 4);
  CHECK(m.n_triangles() == 2);
  std::ostringstream out;
  io::write_mesh(out, m);
  const Triangulation back = parse_mesh(out.str());
  CHECK(back.hash() == m.hash());
  CHECK(back.vertices() == m.vertices());
  CHECK(back.triangles() == m.triangles());
}

TEST_CASE("mesh parse errors carry the line number") {
  std::string what;
  CHECK(kind_of([] { parse_mesh("v 0 0\nv 1 0\nv 0 1\nt 1 2 x\n"); }, &what) == ErrorKind::parse);
  CHECK(what.find("line 4") != std::string::npos);
  CHECK(kind_of([] { parse_mesh("v 0 0\nq 1 2\n"); }, &what) == ErrorKind::parse);
  CHECK(what.find("line 2") != std::string::npos);
  CHECK(kind_of([] { parse_mesh("v 0 0\nv 1 0\nv 0 1\nt 1 2 4\n"); }, &what) == ErrorKind::parse);
  CHECK(what.find("line 4") != std::string::npos);
  CHECK(kind_of([] { parse_mesh("v 0 0\n"); }) == ErrorKind::parse);
  CHECK(kind_of([] { parse_mesh("v 0 0\nv 1 0\nv 2 0\nt 1 2 3\n"); }) == ErrorKind::degenerate);
  CHECK(kind_of([] { io::read_mesh_file("/nonexistent/mesh.txt"); }) == ErrorKind::parse);
}

TEST_CASE("spline round trip is exact") {
  const SplineSpace sp(parse_mesh(two_triangle_mesh));
  const GlobalSpline s = sp.fit(builtin_function("franke"));
  std::ostringstream out;
  io::write_spline(out, s);
  std::istringstream in(out.str());
  const GlobalSpline back = io::read_spline(in, sp);
  for (int t = 0; t < 2; ++t) CHECK(back.coeffs()[t].values == s.coeffs()[t].values);
  const auto a = sample_grid(s, 40);
  const auto b = sample_grid(back, 40);
  REQUIRE(a.size() == b.size());
  bool same = true;
  for (size_t i = 0; i < a.size(); ++i) same = same && a[i].value == b[i].value;
  CHECK(same);
}

TEST_CASE("spline read errors") {
  const SplineSpace sp(parse_mesh(two_triangle_mesh));
  const GlobalSpline s = sp.propagate(std::vector<double>(41, 1.0));
  std::ostringstream out;
  io::write_spline(out, s);
  SUBCASE("other mesh") {
    const SplineSpace other(structured_square_mesh(1));
    std::istringstream in(out.str());
    CHECK(kind_of([&] { io::read_spline(in, other); }) == ErrorKind::hash_mismatch);
  }
  SUBCASE("moved vertex") {
    std::string text = two_triangle_mesh;
    text.replace(text.find("v 1.1 0.9"), 9, "v 1.1 0.8");
    const SplineSpace other(parse_mesh(text));
    std::istringstream in(out.str());
    CHECK(kind_of([&] { io::read_spline(in, other); }) == ErrorKind::hash_mismatch);
  }
  SUBCASE("truncated") {
    std::string text = out.str();
    text = text.substr(0, text.rfind("\n2,"));
    std::istringstream in(text + "\n");
    CHECK(kind_of([&] { io::read_spline(in, sp); }) == ErrorKind::parse);
  }
  SUBCASE("bad number") {
    std::string text = out.str();
    text.replace(text.rfind(",1"), 2, ",z");
    std::istringstream in(text);
    std::string what;
    CHECK(kind_of([&] { io::read_spline(in, sp); }, &what) == ErrorKind::parse);
    CHECK(what.find("line") != std::string::npos);
  }
}

TEST_CASE("hermite round trip") {
  const Triangulation m = parse_mesh(two_triangle_mesh);
  const SplineSpace sp(m);
  const GlobalHermiteData d = sp.sample_hermite(random_cubic(4));
  std::ostringstream out;
  io::write_hermite(out, m, d);
  std::istringstream in(out.str());
  const io::HermiteInput h = io::read_hermite(in, m);
  CHECK(!h.is_mds);
  CHECK(h.nodal.vertex == d.vertex);
  CHECK(h.nodal.edge == d.edge);
  CHECK(h.nodal.triangle == d.triangle);
}

TEST_CASE("hermite edge records in either direction") {
  const Triangulation m = parse_mesh(two_triangle_mesh);
  const SplineSpace sp(m);
  const GlobalHermiteData d = sp.sample_hermite(random_cubic(5));
  std::ostringstream out;
  io::write_hermite(out, m, d);
  // Writing the first-derivative record as b a flips the normal.
  std::istringstream lines(out.str());
  std::ostringstream flipped;
  std::string line;
  while (std::getline(lines, line)) {
    std::istringstream tk(line);
    std::string kind, a, b, op, v;
    tk >> kind >> a >> b >> op >> v;
    if (kind == "edge" && op == "normal-d1") {
      flipped << "edge " << b << ' ' << a << " normal-d1 " << io::format_shortest(-std::stod(v)) << '\n';
    } else {
      flipped << line << '\n';
    }
  }
  std::istringstream in(flipped.str());
  CHECK(io::read_hermite(in, m).nodal.edge == d.edge);
}

TEST_CASE("hermite mds records") {
  const Triangulation m = parse_mesh(two_triangle_mesh);
  std::ostringstream out;
  for (int k = 1; k <= 41; ++k) out << "mds " << k << ' ' << 0.5 * k << '\n';
  std::istringstream in(out.str());
  const io::HermiteInput h = io::read_hermite(in, m);
  CHECK(h.is_mds);
  REQUIRE(h.mds.size() == 41);
  CHECK(h.mds[40] == 20.5);
}

TEST_CASE("hermite errors") {
  const Triangulation m = parse_mesh(two_triangle_mesh);
  const SplineSpace sp(m);
  std::ostringstream out;
  io::write_hermite(out, m, sp.sample_hermite(builtin_function("one")));
  const std::string full = out.str();
  SUBCASE("missing record") {
    std::istringstream in(full.substr(0, full.rfind("triangle")));
    CHECK(kind_of([&] { io::read_hermite(in, m); }) == ErrorKind::dimension_mismatch);
  }
  SUBCASE("duplicate record") {
    std::istringstream in(full + "vertex 1 value 1\n");
    CHECK(kind_of([&] { io::read_hermite(in, m); }) == ErrorKind::dimension_mismatch);
  }
  SUBCASE("too few mds values") {
    std::istringstream in("mds 1 0\nmds 2 0\n");
    CHECK(kind_of([&] { io::read_hermite(in, m); }) == ErrorKind::dimension_mismatch);
  }
  SUBCASE("unknown operator") {
    std::string what;
    std::istringstream in("vertex 1 d3 x 0\n");
    CHECK(kind_of([&] { io::read_hermite(in, m); }, &what) == ErrorKind::parse);
    CHECK(what.find("line 1") != std::string::npos);
  }
  SUBCASE("edge not in mesh") {
    std::istringstream in("edge 1 4 normal-d1 0\n");
    CHECK(kind_of([&] { io::read_hermite(in, m); }) == ErrorKind::parse);
  }
}

TEST_CASE("split csv") {
  const WsSplit split(test_util::reference_triangle(), 3);
  std::ostringstream v, c;
  io::write_split_vertices_csv(v, split);
  io::write_split_cells_csv(c, split);
  auto lines = [](const std::string& s) { return std::count(s.begin(), s.end(), '\n'); };
  CHECK(v.str().rfind("id,x,y\n", 0) == 0);
  CHECK(c.str().rfind("id,vertices\n", 0) == 0);
  CHECK(lines(v.str()) == 1 + 58);
  CHECK(lines(c.str()) == 1 + 75);
  std::ostringstream svg;
  io::write_split_svg(svg, {&split});
  CHECK(svg.str().find("<svg") == 0);
}
