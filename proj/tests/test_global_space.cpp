#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "test_util.hpp"
#include "wsspline/builtin_functions.hpp"
#include "wsspline/error.hpp"
#include "wsspline/global_space.hpp"

using namespace wsspline;
using test_util::random_point_in;

namespace {

Triangulation two_triangles() {
  return Triangulation({{0, 0}, {1, 0}, {0.2, 1}, {1.1, 0.9}}, {{0, 1, 2}, {1, 3, 2}});
}

// Interior vertex 0 surrounded by n perturbed ring vertices.
Triangulation fan(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> jitter(-0.15, 0.15);
  std::vector<Point> v{{jitter(rng), jitter(rng)}};
  std::vector<std::array<int, 3>> t;
  for (int k = 0; k < n; ++k) {
    const double a = 2 * std::numbers::pi * (k + 0.3 * jitter(rng)) / n;
    const double r = 1.0 + jitter(rng);
    v.push_back({r * std::cos(a), r * std::sin(a)});
    t.push_back({0, 1 + k, 1 + (k + 1) % n});
  }
  return Triangulation(v, t);
}

bool is_zero(const LocalCoeffs& c) {
  for (double v : c.values) {
    if (v != 0.0) return false;
  }
  return true;
}

Point random_point_in_mesh(const Triangulation& m, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, m.n_triangles() - 1);
  return random_point_in(m.geometry(pick(rng)), rng);
}

}  // namespace

TEST_CASE("dimension formula") {
  CHECK(dimension(single_triangle_mesh(test_util::reference_triangle())) == 28);
  CHECK(dimension(two_triangles()) == 41);
  const Triangulation sq = structured_square_mesh(2);
  CHECK(sq.n_vertices() == 9);
  CHECK(sq.n_edges() == 16);
  CHECK(sq.n_triangles() == 8);
  CHECK(dimension(sq) == 110);
}

TEST_CASE("minimal determining sets") {
  SUBCASE("single triangle takes all alt points") {
    const auto m = build_mds(single_triangle_mesh(test_util::reference_triangle()));
    CHECK(m.size() == 28);
    std::set<int> idx;
    for (const auto& e : m.entries) idx.insert(e.index);
    CHECK(idx.size() == 28);
  }
  SUBCASE("two triangles") {
    const auto m = build_mds(two_triangles());
    CHECK(m.size() == 41);
    int counts[3] = {0, 0, 0};
    for (const auto& e : m.entries) ++counts[static_cast<int>(e.kind)];
    CHECK(counts[0] == 24);
    CHECK(counts[1] == 15);
    CHECK(counts[2] == 2);
  }
  SUBCASE("index classes") {
    const std::array<int, 6> v{0, 3, 4, 9, 10, 15};
    CHECK(vertex_class() == v);
    const std::array<int, 3> e{18, 21, 24};
    CHECK(edge_class() == e);
  }
  SUBCASE("classes partition the local indices") {
    std::set<int> all;
    for (int k = 0; k < 3; ++k) {
      for (int i : vertex_class_of(k)) all.insert(i);
      for (int i : edge_class_of(k, (k + 1) % 3)) all.insert(i);
    }
    all.insert(27);
    CHECK(all.size() == 28);
  }
  SUBCASE("vertex class points sit near their vertex") {
    const LocalBasis lb(test_util::reference_triangle());
    for (int k = 0; k < 3; ++k) {
      for (int i : vertex_class_of(k)) {
        const Bary b = lb.triangle().to_bary(lb.alt_domain_points()[i]);
        const double bk[3] = {b.b1, b.b2, b.b3};
        CHECK(bk[k] >= 2.0 / 3 - 1e-12);
      }
    }
  }
}

TEST_CASE("propagation reproduces polynomials") {
  std::mt19937_64 rng(11);
  const std::vector<Triangulation> meshes{two_triangles(), structured_square_mesh(2), fan(5, rng), fan(7, rng)};
  for (const auto& mesh : meshes) {
    const SplineSpace sp(mesh);
    SUBCASE("zero") {
      const GlobalSpline s = sp.propagate(std::vector<double>(sp.dimension(), 0.0));
      for (const auto& c : s.coeffs()) CHECK(is_zero(c));
    }
    SUBCASE("affine") {
      auto f = [](Point p) { return 0.3 - 1.7 * p.x + 2.1 * p.y; };
      std::vector<double> values;
      for (const auto& e : sp.mds().entries) values.push_back(f(sp.basis(e.triangle).alt_domain_points()[e.index]));
      const GlobalSpline s = sp.propagate(values);
      for (int t = 0; t < mesh.n_triangles(); ++t) {
        for (int i = 0; i < n_basis; ++i) {
          CHECK(std::abs(s.coeffs()[t].values[i] - f(sp.basis(t).alt_domain_points()[i])) <= 1e-12);
        }
      }
      for (int k = 0; k < 200; ++k) {
        const Point p = random_point_in_mesh(mesh, rng);
        CHECK(std::abs(s.eval(p) - f(p)) <= 1e-12);
      }
    }
    SUBCASE("cubic") {
      const Cubic2 f = random_cubic(3);
      const GlobalSpline s = sp.fit(f);
      for (int t = 0; t < mesh.n_triangles(); ++t) {
        const LocalBasis& lb = sp.basis(t);
        const LocalCoeffs local = with_tag(lb.hermite_interpolate(lb.hermite_data(f)), BasisTag::b_tilde);
        for (int i = 0; i < n_basis; ++i) {
          CHECK(std::abs(s.coeffs()[t].values[i] - local.values[i]) <= 1e-9 * std::max(1.0, std::abs(local.values[i])));
        }
      }
      CHECK(sp.max_smoothness_residual(s) <= 1e-8);
    }
  }
}

TEST_CASE("random MDS values give C2 splines") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const SplineSpace sp(fan(6, rng));
  std::vector<double> values(sp.dimension());
  for (double& v : values) v = u(rng);
  const GlobalSpline s = sp.propagate(values);
  CHECK(sp.max_smoothness_residual(s) <= 1e-8);
  CHECK(sp.mds_values(s.coeffs()) == values);
}

TEST_CASE("basis function support") {
  std::mt19937_64 rng(13);
  const Triangulation mesh = structured_square_mesh(3);
  const SplineSpace sp(mesh);
  const auto& m = sp.mds();
  for (int k = 0; k < m.size(); ++k) {
    const MdsEntry& e = m.entries[k];
    std::set<int> allowed;
    switch (e.kind) {
      case MdsKind::triangle: allowed.insert(e.element); break;
      case MdsKind::edge:
        for (int t : mesh.edges()[e.element].triangles) allowed.insert(t);
        break;
      case MdsKind::vertex:
        for (int t : mesh.vertex_triangles(e.element)) allowed.insert(t);
        break;
    }
    const GlobalSpline b = sp.basis_function(k);
    for (int t = 0; t < mesh.n_triangles(); ++t) {
      if (!allowed.count(t)) CHECK(is_zero(b.coeffs()[t]));
    }
    CHECK(!is_zero(b.coeffs()[e.triangle]));
    if (e.kind == MdsKind::triangle) CHECK(e.triangle == e.element);
  }
}

TEST_CASE("global basis is a partition of unity") {
  std::mt19937_64 rng(14);
  const Triangulation mesh = fan(5, rng);
  const SplineSpace sp(mesh);
  std::vector<GlobalSpline> basis;
  for (int k = 0; k < sp.dimension(); ++k) basis.push_back(sp.basis_function(k));
  for (int n = 0; n < 1000; ++n) {
    const Point p = random_point_in_mesh(mesh, rng);
    double s = 0.0;
    for (const auto& b : basis) s += b.eval(p);
    CHECK(std::abs(s - 1.0) <= 1e-9);
  }
  const GlobalSpline one = sp.propagate(std::vector<double>(sp.dimension(), 1.0));
  CHECK(one.eval({0.0, 0.0}) == doctest::Approx(1.0));
}

TEST_CASE("propagation is a bijection onto the smooth space") {
  std::mt19937_64 rng(15);
  const std::vector<Triangulation> meshes{two_triangles(), structured_square_mesh(2), fan(6, rng),
                                          Triangulation({{0, 0}, {1, 0}, {2, 0.1}, {0.4, 1}, {1.5, 1.2}, {1, 2}},
                                                        {{0, 1, 3}, {1, 4, 3}, {1, 2, 4}, {3, 4, 5}})};
  for (const auto& mesh : meshes) {
    const SplineSpace sp(mesh);
    const Eigen::MatrixXd a = sp.constraint_matrix();
    const Eigen::MatrixXd p = sp.propagation_matrix();
    const int full = 28 * mesh.n_triangles();
    CHECK(p.rows() == full);
    CHECK(p.cols() == sp.dimension());
    CHECK(numerical_rank(p) == sp.dimension());
    CHECK(numerical_rank(a) == full - sp.dimension());
    CHECK((a * p).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("stability probe") {
  SUBCASE("single triangle") {
    const SplineSpace sp(single_triangle_mesh(test_util::reference_triangle()));
    const StabilityReport r = sp.stability_probe(200, 12, 1);
    CHECK(r.b_ratio_min >= 1.0 / 37);
    CHECK(r.b_ratio_min <= 1.0 + 1e-12);
    CHECK(r.alt_ratio_max <= 3.0);
  }
  SUBCASE("refinement") {
    // Starts with an interior vertex; coarser meshes lack the interior vertex stars
    // that set the upper constant.
    Triangulation mesh = structured_square_mesh(2);
    std::vector<StabilityReport> reps;
    for (int level = 0; level < 3; ++level) {
      reps.push_back(SplineSpace(mesh).stability_probe(20, 6, 2));
      CHECK(reps.back().alt_ratio_max <= 3.0);
      CHECK(reps.back().k_minus > 0.0);
      mesh = uniform_refine(mesh);
    }
    for (size_t k = 1; k < reps.size(); ++k) {
      CHECK(reps[k].k_minus / reps[0].k_minus <= 2.0);
      CHECK(reps[k].k_minus / reps[0].k_minus >= 0.5);
      CHECK(reps[k].k_plus / reps[0].k_plus <= 2.0);
      CHECK(reps[k].k_plus / reps[0].k_plus >= 0.5);
    }
  }
}

TEST_CASE("errors") {
  SUBCASE("T-junction") {
    try {
      Triangulation({{0, 0}, {2, 0}, {2, 2}, {1, 1}, {0, 2}}, {{0, 1, 2}, {0, 3, 4}, {3, 2, 4}});
      FAIL("expected nonconforming");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::nonconforming);
    }
  }
  SUBCASE("edge with three triangles") {
    try {
      Triangulation({{0, 0}, {1, 0}, {0.5, 1}, {0.5, -1}, {0.5, 2}}, {{0, 1, 2}, {0, 3, 1}, {0, 1, 4}});
      FAIL("expected nonconforming");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::nonconforming);
    }
  }
  SUBCASE("wrong value count") {
    const SplineSpace sp(two_triangles());
    try {
      sp.propagate(std::vector<double>(40, 0.0));
      FAIL("expected dimension mismatch");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::dimension_mismatch);
    }
  }
  SUBCASE("outside the mesh") {
    const SplineSpace sp(two_triangles());
    const GlobalSpline s = sp.propagate(std::vector<double>(41, 1.0));
    try {
      s.eval({5.0, 5.0});
      FAIL("expected out of domain");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::out_of_domain);
    }
  }
}

TEST_CASE("shared edge points evaluate consistently") {
  const SplineSpace sp(two_triangles());
  const GlobalSpline s = sp.fit(builtin_function("franke"));
  for (int k = 1; k < 20; ++k) {
    const double t = k / 20.0;
    const Point p{1.0 - 0.8 * t, t};
    CHECK(s.eval_in(0, p) == doctest::Approx(s.eval_in(1, p)).epsilon(1e-10));
  }
}
