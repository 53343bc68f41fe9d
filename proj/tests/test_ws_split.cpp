#include <doctest.h>

#include <set>

#include "test_util.hpp"
#include "wsspline/error.hpp"
#include "wsspline/ws_split.hpp"

using namespace wsspline;

namespace {

double polygon_area(const WsSplit& s, const std::vector<int>& loop) {
  double a = 0.0;
  for (size_t k = 0; k < loop.size(); ++k) {
    const Point& p = s.vertices()[loop[k]];
    const Point& q = s.vertices()[loop[(k + 1) % loop.size()]];
    a += cross(p, q);
  }
  return 0.5 * a;
}

}  // namespace

TEST_CASE("interior line and vertex counts for d = 1..8") {
  const int vertices[] = {3, 10, 58, 178, 558, 1255, 2532, 4786};
  const int max_concurrence[] = {0, 3, 3, 4, 5, 6, 7, 6};
  std::mt19937_64 rng(1);
  const Triangle t = test_util::random_triangle(rng);
  for (int d = 1; d <= 8; ++d) {
    CAPTURE(d);
    const WsSplit s(t, d);
    CHECK(s.interior_lines().size() == static_cast<size_t>(3 * d * (d - 1)));
    CHECK(s.boundary_points().size() == static_cast<size_t>(3 * d));
    CHECK(s.vertices().size() == static_cast<size_t>(vertices[d - 1]));
    int m = 0;
    for (const auto& v : s.crosscut_stats().interior_vertices) m = std::max(m, v.multiplicity);
    CHECK(m == max_concurrence[d - 1]);
  }
}

TEST_CASE("d = 1 is a single cell") {
  const WsSplit s(test_util::reference_triangle(), 1);
  CHECK(s.cell_count() == 1);
  CHECK(s.locate({0.2, 0.2}) == 0);
}

TEST_CASE("WS3 has 75 cells") { CHECK(WsSplit(test_util::reference_triangle(), 3).cell_count() == 75); }

TEST_CASE("cell keys are unique and polygons partition the triangle") {
  std::mt19937_64 rng(2);
  const Triangle t = test_util::random_triangle(rng);
  for (int d = 2; d <= 5; ++d) {
    const WsSplit s(t, d);
    std::set<SignKey> keys(s.cell_keys().begin(), s.cell_keys().end());
    CHECK(keys.size() == static_cast<size_t>(s.cell_count()));
    double total = 0.0;
    for (int c = 0; c < s.cell_count(); ++c) {
      const auto& loop = s.cell_polygons()[c];
      const double a = polygon_area(s, loop);
      CHECK(a > 0.0);
      total += a;
      // Convexity: every turn is a left turn.
      for (size_t k = 0; k < loop.size(); ++k) {
        const Point& p = s.vertices()[loop[k]];
        const Point& q = s.vertices()[loop[(k + 1) % loop.size()]];
        const Point& r = s.vertices()[loop[(k + 2) % loop.size()]];
        CHECK(orient2d(p, q, r) > -1e-12 * t.diameter() * t.diameter());
      }
      // The vertex centroid lies in the cell.
      Point m{0, 0};
      for (int v : loop) m = m + s.vertices()[v];
      m = (1.0 / loop.size()) * m;
      CHECK(s.locate(m) == c);
      CHECK(s.sign_key(s.cell_interior_points()[c]) == s.cell_keys()[c]);
    }
    CHECK(total == doctest::Approx(t.area()).epsilon(1e-9));
  }
}

TEST_CASE("every WS3 interior line holds exactly two of the nine knot points") {
  const Triangle t = test_util::reference_triangle();
  const WsSplit s(t, 3);
  std::vector<Point> knots = {t[0], t[1], t[2]};
  for (const Point& p : s.boundary_points()) {
    bool vertex = false;
    for (int k = 0; k < 3; ++k) vertex |= norm(p - t[k]) < 1e-14;
    if (!vertex) knots.push_back(p);
  }
  REQUIRE(knots.size() == 9);
  for (const LineEq& l : s.interior_lines()) {
    int on = 0;
    for (const Point& k : knots) on += std::abs(l(k)) < 1e-12 ? 1 : 0;
    CHECK(on == 2);
  }
}

TEST_CASE("locate agrees with brute-force signs at random points") {
  std::mt19937_64 rng(7);
  const Triangle t = test_util::random_triangle(rng);
  const WsSplit s(t, 3);
  for (int k = 0; k < 10000; ++k) {
    const Point p = test_util::random_point_in(t, rng);
    SignKey key{0, 0, 0};
    for (size_t l = 0; l < s.interior_lines().size(); ++l) {
      if (s.interior_lines()[l](p) >= -s.tie_tolerance()) key[l / 64] |= uint64_t{1} << (l % 64);
    }
    const int brute = s.cell_of_key(key);
    if (brute >= 0) CHECK(s.locate(p) == brute);
  }
}

TEST_CASE("centroid of WS3 resolves to a cell around it") {
  const Triangle t = test_util::reference_triangle();
  const WsSplit s(t, 3);
  const int c = s.locate(t.centroid());
  // Three medians cross at the centroid, so it is a vertex of the chosen cell.
  bool has_centroid_vertex = false;
  for (int v : s.cell_polygons()[c]) has_centroid_vertex |= norm(s.vertices()[v] - t.centroid()) < 1e-14;
  CHECK(has_centroid_vertex);
}

TEST_CASE("points outside the triangle are rejected") {
  const WsSplit s(test_util::reference_triangle(), 3);
  try {
    s.locate({1.0, 1.0});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::out_of_domain);
  }
}

TEST_CASE("dimension formulas") {
  CHECK(ws_dimension(1) == 3);
  CHECK(ws_dimension(2) == 12);
  CHECK(ws_dimension(3) == 28);
  CHECK(crosscut_dimension(1, 0, CrossCutStats{}) == 3);
  const Triangle t = test_util::reference_triangle();
  for (int d = 2; d <= 8; ++d) {
    CAPTURE(d);
    CHECK(crosscut_dimension(d, d - 1, WsSplit(t, d).crosscut_stats()) == ws_dimension(d));
  }
  CHECK(crosscut_dimension(3, 2, WsSplit(t, 3).crosscut_stats()) == 28);
  CHECK(crosscut_dimension(2, 1, WsSplit(t, 2).crosscut_stats()) == 12);
  CHECK_THROWS_AS(crosscut_dimension(3, 3, CrossCutStats{}), Error);
}
