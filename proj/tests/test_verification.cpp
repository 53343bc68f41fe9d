#include <doctest.h>

#include <random>

#include "test_util.hpp"
#include "wsspline/verification.hpp"

using namespace wsspline;

namespace {

bool all_pass(const std::vector<SuiteResult>& r) {
  for (const auto& s : r) {
    if (!s.pass) return false;
  }
  return true;
}

const SuiteResult& find(const std::vector<SuiteResult>& r, const std::string& name) {
  for (const auto& s : r) {
    if (s.name == name) return s;
  }
  FAIL("missing suite " << name);
  return r.front();
}

}  // namespace

TEST_CASE("cox de boor") {
  // Uniform cubic: N_0 at its center is 2/3.
  const std::vector<double> u{0, 1, 2, 3, 4};
  CHECK(cox_de_boor(u, 0, 3, 2.0) == doctest::Approx(2.0 / 3));
  CHECK(cox_de_boor(u, 0, 3, 1.0) == doctest::Approx(1.0 / 6));
  CHECK(cox_de_boor(u, 0, 3, 4.5) == 0.0);
  // Bernstein knots: partition of unity including the last knot.
  const std::vector<double> b{0, 0, 0, 0, 1, 1, 1, 1};
  for (double t : {0.0, 0.3, 1.0}) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i) s += cox_de_boor(b, i, 3, t);
    CHECK(s == doctest::Approx(1.0));
  }
  CHECK(cox_de_boor(b, 3, 3, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("edge restriction indices") {
  const std::array<int, 6> e01{0, 3, 9, 12, 6, 1}, e02{0, 4, 10, 13, 7, 2}, e12{1, 5, 11, 14, 8, 2};
  CHECK(edge_restriction_indices(0, 1) == e01);
  CHECK(edge_restriction_indices(0, 2) == e02);
  CHECK(edge_restriction_indices(1, 2) == e12);
}

TEST_CASE("all suites pass on single triangles") {
  std::mt19937_64 rng(1);
  VerifyOptions opt;
  opt.points = 300;
  const Triangle sliver({0, 0}, {1, 0}, {0.5, 0.001});
  for (const Triangle& t : {test_util::reference_triangle(), test_util::random_triangle(rng), sliver}) {
    const auto r = run_verification(single_triangle_mesh(t), opt);
    CHECK(r.size() == 6);
    CHECK(all_pass(r));
    const auto& c = find(r, "condition");
    CHECK(c.residual < 37.0);
  }
}

TEST_CASE("mesh verification and the negative control") {
  VerifyOptions opt;
  opt.points = 200;
  const Triangulation mesh = structured_square_mesh(2);
  CHECK(all_pass(run_verification(mesh, opt)));
  opt.break_coefficient = true;
  const auto broken = run_verification(mesh, opt);
  CHECK(!find(broken, "c2-edges").pass);
  CHECK(find(broken, "partition-of-unity").pass);
  CHECK(find(broken, "condition").pass);
  const auto single = run_verification(single_triangle_mesh(test_util::reference_triangle()), opt);
  CHECK(!find(single, "c2-edges").pass);
  CHECK(find(single, "c2-edges").note.find("no interior edge") != std::string::npos);
}
