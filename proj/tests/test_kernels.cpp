#include <doctest.h>

#include <cstring>
#include <random>
#include <vector>

#include "test_util.hpp"
#include "wsspline/builtin_functions.hpp"
#include "wsspline/kernels.hpp"
#include "wsspline/sampling.hpp"

using namespace wsspline;
namespace k = wsspline::kernels;
using test_util::random_point_in;

namespace {

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

// Odd lengths exercise the scalar tails of the vector loops.
constexpr size_t n_points = 1003;

}  // namespace

TEST_CASE("dispatch") {
  const k::Isa isa = k::active_isa();
  if (!k::avx2_available()) CHECK(isa == k::Isa::scalar);
  CHECK(std::string(k::isa_name(k::Isa::scalar)) == "scalar");
  CHECK(std::string(k::isa_name(k::Isa::avx2)) == "avx2");
}

TEST_CASE("sign keys agree bit for bit") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int count : {1, 5, 9, 37, 64}) {
    std::vector<double> a(count), b(count), c(count);
    for (int l = 0; l < count; ++l) {
      a[l] = u(rng);
      b[l] = u(rng);
      c[l] = u(rng);
    }
    std::vector<double> xs(n_points), ys(n_points);
    for (size_t i = 0; i < n_points; ++i) {
      xs[i] = u(rng);
      ys[i] = u(rng);
    }
    // Points on line 0 exactly.
    for (size_t i = 0; i < 20; ++i) {
      ys[i] = 0.0;
      xs[i] = a[0] != 0.0 ? -c[0] / a[0] : 0.0;
    }
    const k::LineBatch lines{a.data(), b.data(), c.data(), count};
    std::vector<uint64_t> s(n_points), v(n_points);
    k::sign_keys(lines, 1e-12, xs.data(), ys.data(), n_points, s.data(), k::Isa::scalar);
    k::sign_keys(lines, 1e-12, xs.data(), ys.data(), n_points, v.data(), k::Isa::avx2);
    CHECK(s == v);
    for (size_t i = 0; i < n_points; ++i) {
      uint64_t want = 0;
      for (int l = 0; l < count; ++l) {
        if (a[l] * xs[i] + b[l] * ys[i] + c[l] >= -1e-12) want |= uint64_t{1} << l;
      }
      CHECK(s[i] == want);
    }
  }
}

TEST_CASE("barycentric coordinates agree bit for bit") {
  std::mt19937_64 rng(2);
  for (int rep = 0; rep < 5; ++rep) {
    const Triangle tri = test_util::random_triangle(rng);
    const k::BaryAffine af = k::bary_affine(tri);
    std::vector<double> xs(n_points), ys(n_points);
    for (size_t i = 0; i < n_points; ++i) {
      const Point p = random_point_in(tri, rng);
      xs[i] = p.x;
      ys[i] = p.y;
    }
    std::vector<double> s1(n_points), s2(n_points), s3(n_points), v1(n_points), v2(n_points), v3(n_points);
    k::bary_coords(af, xs.data(), ys.data(), n_points, s1.data(), s2.data(), s3.data(), k::Isa::scalar);
    k::bary_coords(af, xs.data(), ys.data(), n_points, v1.data(), v2.data(), v3.data(), k::Isa::avx2);
    CHECK(same_bits(s1, v1));
    CHECK(same_bits(s2, v2));
    CHECK(same_bits(s3, v3));
    for (size_t i = 0; i < n_points; i += 97) {
      const Bary b = tri.to_bary({xs[i], ys[i]});
      CHECK(s1[i] == doctest::Approx(b.b1).epsilon(1e-12));
      CHECK(s2[i] == doctest::Approx(b.b2).epsilon(1e-12));
      CHECK(s3[i] == doctest::Approx(b.b3).epsilon(1e-12));
    }
  }
}

TEST_CASE("cubic evaluation agrees bit for bit") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0), w(0.0, 1.0);
  std::vector<BaryCubic> pieces(75);
  for (auto& p : pieces) {
    for (double& c : p.c) c = u(rng);
  }
  std::uniform_int_distribution<int32_t> pick(0, 74);
  std::vector<int32_t> cell(n_points);
  std::vector<double> b1(n_points), b2(n_points), b3(n_points);
  for (size_t i = 0; i < n_points; ++i) {
    cell[i] = pick(rng);
    b1[i] = w(rng);
    b2[i] = w(rng) * (1 - b1[i]);
    b3[i] = 1 - b1[i] - b2[i];
  }
  std::vector<double> s(n_points), v(n_points);
  k::eval_cubics(pieces.data(), cell.data(), b1.data(), b2.data(), b3.data(), n_points, s.data(), k::Isa::scalar);
  k::eval_cubics(pieces.data(), cell.data(), b1.data(), b2.data(), b3.data(), n_points, v.data(), k::Isa::avx2);
  CHECK(same_bits(s, v));
  for (size_t i = 0; i < n_points; i += 31) {
    CHECK(s[i] == doctest::Approx(pieces[cell[i]].eval({b1[i], b2[i], b3[i]})).epsilon(1e-13));
  }
}

TEST_CASE("batched locate matches single point locate") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> w(0.0, 1.0);
  for (int rep = 0; rep < 5; ++rep) {
    const Triangle tri = rep == 0 ? test_util::reference_triangle() : test_util::random_triangle(rng);
    const WsSplit split(tri, 3);
    std::vector<double> xs, ys;
    for (size_t i = 0; i < n_points; ++i) {
      const Point p = random_point_in(tri, rng);
      xs.push_back(p.x);
      ys.push_back(p.y);
    }
    // Points on knot lines and at arrangement vertices.
    for (const Point& v : split.vertices()) {
      xs.push_back(v.x);
      ys.push_back(v.y);
    }
    const auto& bp = split.boundary_points();
    for (size_t i = 0; i < bp.size(); ++i) {
      for (size_t j = i + 1; j < bp.size(); ++j) {
        const double t = w(rng);
        const Point p = (1 - t) * bp[i] + t * bp[j];
        if (!tri.contains(p)) continue;
        xs.push_back(p.x);
        ys.push_back(p.y);
      }
    }
    const size_t n = xs.size();
    std::vector<int32_t> s(n), v(n);
    k::locate_batch(split, xs.data(), ys.data(), n, s.data(), k::Isa::scalar);
    k::locate_batch(split, xs.data(), ys.data(), n, v.data(), k::Isa::avx2);
    CHECK(s == v);
    for (size_t i = 0; i < n; ++i) CHECK(s[i] == split.locate({xs[i], ys[i]}));
  }
}

TEST_CASE("batched spline evaluation") {
  const SplineSpace sp(structured_square_mesh(2));
  const GlobalSpline s = sp.fit(builtin_function("franke"));
  std::mt19937_64 rng(5);
  for (int t = 0; t < sp.mesh().n_triangles(); ++t) {
    std::vector<double> xs(101), ys(101);
    for (size_t i = 0; i < xs.size(); ++i) {
      const Point p = random_point_in(sp.mesh().geometry(t), rng);
      xs[i] = p.x;
      ys[i] = p.y;
    }
    std::vector<double> a(xs.size()), b(xs.size());
    eval_batch(s, t, xs.data(), ys.data(), xs.size(), a.data(), k::Isa::scalar);
    eval_batch(s, t, xs.data(), ys.data(), xs.size(), b.data(), k::Isa::avx2);
    CHECK(same_bits(a, b));
    for (size_t i = 0; i < xs.size(); ++i) {
      CHECK(a[i] == doctest::Approx(s.eval_in(t, {xs[i], ys[i]})).epsilon(1e-12));
    }
  }
}

TEST_CASE("grid sampling") {
  const SplineSpace sp(structured_square_mesh(2));
  const GlobalSpline s = sp.fit(builtin_function("x3"));
  const auto one = sample_grid(s, 33, 1, k::Isa::scalar);
  const auto many = sample_grid(s, 33, 4, k::Isa::avx2);
  REQUIRE(one.size() == 33u * 33u);
  REQUIRE(many.size() == one.size());
  for (size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].x == many[i].x);
    CHECK(one[i].y == many[i].y);
    CHECK(one[i].value == many[i].value);
    CHECK(one[i].triangle == many[i].triangle);
    CHECK(one[i].value == doctest::Approx(one[i].x * one[i].x * one[i].x).epsilon(1e-12).scale(1.0));
  }
  CHECK(one.front().x == 0.0);
  CHECK(one.back().x == 1.0);
}
