#include "wsspline/verification.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "wsspline/edge_smoothness.hpp"
#include "wsspline/error.hpp"
#include "wsspline/global_space.hpp"
#include "wsspline/local_basis.hpp"
#include "wsspline/reference_tables.hpp"

namespace wsspline {

namespace {

Point random_point(const Triangle& tri, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double s = u(rng), t = u(rng);
  if (s + t > 1.0) {
    s = 1.0 - s;
    t = 1.0 - t;
  }
  return tri.from_bary({1.0 - s - t, s, t});
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

SuiteResult partition_of_unity(const SplineSpace& space, const VerifyOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  double err = 0.0, min_b = 0.0;
  for (int t = 0; t < space.mesh().n_triangles(); ++t) {
    const LocalBasis& lb = space.basis(t);
    for (int k = 0; k < opt.points; ++k) {
      const BasisValues v = lb.eval(random_point(lb.triangle(), rng));
      double s = 0.0;
      for (double x : v) {
        s += x;
        min_b = std::min(min_b, x);
      }
      err = std::max(err, std::abs(s - 1.0));
    }
  }
  SuiteResult r{"partition-of-unity", err <= 1e-10 && min_b >= -1e-12, err, 1e-10, "min B " + fmt(min_b)};
  return r;
}

SuiteResult marsden(const SplineSpace& space, const VerifyOptions& opt) {
  std::mt19937_64 rng(opt.seed + 1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double err = 0.0;
  for (int t = 0; t < space.mesh().n_triangles(); ++t) {
    const LocalBasis& lb = space.basis(t);
    const double h = lb.triangle().diameter();
    for (int k = 0; k < opt.points / 2; ++k) {
      const Vec2 y{u(rng) / h, u(rng) / h};
      const Point x = random_point(lb.triangle(), rng);
      const BasisValues psi = lb.marsden_duals(y);
      const BasisValues b = lb.eval(x);
      double s = 0.0, mag = 0.0;
      for (int i = 0; i < n_basis; ++i) {
        s += psi[i] * b[i];
        mag += std::abs(psi[i] * b[i]);
      }
      const double lhs = std::pow(1.0 + dot(y, x), 3);
      err = std::max(err, std::abs(lhs - s) / std::max(1.0, mag));
    }
  }
  return {"marsden", err <= 1e-10, err, 1e-10, ""};
}

SuiteResult hermite_tables(const SplineSpace& space) {
  Eigen::MatrixXd expect_b = Eigen::MatrixXd::Zero(n_basis, 34);
  Eigen::MatrixXd expect_t = Eigen::MatrixXd::Zero(n_basis, 34);
  for (const auto& e : hermite_table_main()) {
    if (!e.tilde) {
      expect_b(e.basis - 1, e.rho - 1) = e.value();
      if (e.basis <= 21) expect_t(e.basis - 1, e.rho - 1) = e.value();
    } else {
      expect_t(e.basis - 1, e.rho - 1) = e.value();
    }
  }
  for (const auto& e : hermite_table_extra()) expect_t(e.basis - 1, e.rho - 1) = e.value();
  double err = 0.0;
  for (int t = 0; t < space.mesh().n_triangles(); ++t) {
    const LocalBasis& lb = space.basis(t);
    const Eigen::MatrixXd hb = lb.hermite_matrix(BasisTag::b);
    const Eigen::MatrixXd ht = lb.hermite_matrix(BasisTag::b_tilde);
    err = std::max(err, (hb.leftCols(n_basis) - expect_b.leftCols(n_basis)).cwiseAbs().maxCoeff());
    err = std::max(err, (ht - expect_t).cwiseAbs().maxCoeff());
  }
  return {"hermite-tables", err <= 1e-9, err, 1e-9, ""};
}

SuiteResult edge_restriction(const SplineSpace& space) {
  const std::vector<double> knots{0, 0, 0, 0, 1.0 / 3, 2.0 / 3, 1, 1, 1, 1};
  double err = 0.0;
  const int samples = 50;
  for (int t = 0; t < space.mesh().n_triangles(); ++t) {
    const LocalBasis& lb = space.basis(t);
    const Triangle& tri = lb.triangle();
    for (int k = 0; k < 3; ++k) {
      for (int l = k + 1; l < 3; ++l) {
        const auto& idx = edge_restriction_indices(k, l);
        for (int s = 0; s <= samples - 1; ++s) {
          const double u = s / (samples - 1.0);
          const BasisValues v = lb.eval((1.0 - u) * tri[k] + u * tri[l]);
          BasisValues expect{};
          for (int j = 0; j < 6; ++j) expect[idx[j]] = cox_de_boor(knots, j, 3, u);
          for (int i = 0; i < n_basis; ++i) err = std::max(err, std::abs(v[i] - expect[i]));
        }
      }
    }
  }
  return {"edge-restriction", err <= 1e-10, err, 1e-10, ""};
}

SuiteResult condition(const SplineSpace& space) {
  double worst = 0.0;
  for (int t = 0; t < space.mesh().n_triangles(); ++t) worst = std::max(worst, space.basis(t).collocation_condition());
  const Rational nc = inf_norm(conversion_matrix_exact());
  const Rational ni = inf_norm(conversion_inverse_exact());
  const bool exact = nc == Rational(3) && ni == Rational(3);
  std::ostringstream note;
  note << "|C| " << nc.numerator() << "/" << nc.denominator() << ", |C^-1| " << ni.numerator() << "/"
       << ni.denominator();
  return {"condition", worst < 37.0 && exact, worst, 37.0, note.str()};
}

SuiteResult c2_edges(const SplineSpace& space, const VerifyOptions& opt) {
  const Triangulation& mesh = space.mesh();
  std::mt19937_64 rng(opt.seed + 2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> values(space.dimension());
  for (double& v : values) v = u(rng);
  GlobalSpline s = space.propagate(values);
  std::string note;
  if (opt.break_coefficient) {
    int broken = -1;
    for (int e = 0; e < mesh.n_edges() && broken < 0; ++e) {
      const MeshEdge& me = mesh.edges()[e];
      if (me.triangles.size() != 2) continue;
      const int l = me.triangles[0], r = me.triangles[1];
      const SharedEdge se = canonicalize_edge(mesh.triangles()[l], mesh.geometry(l), mesh.triangles()[r],
                                              mesh.geometry(r), me.a, me.b);
      const auto c2 = c2_constraints(se);
      const int stored = se.right_index[c2.back().target.index];
      s.mutable_coeffs()[r].values[stored] += 1.0;
      broken = e;
    }
    note = broken < 0 ? "no interior edge to break" : "broke a C2 target on edge " + std::to_string(broken);
    if (broken < 0) return {"c2-edges", false, 0.0, 1e-8, note};
  }
  const double res = space.max_smoothness_residual(s);
  return {"c2-edges", res <= 1e-8, res, 1e-8, note};
}

}  // namespace

double cox_de_boor(const std::vector<double>& knots, int i, int deg, double t) {
  if (deg == 0) {
    const double a = knots[i], b = knots[i + 1];
    if (a == b) return 0.0;
    const double last = knots.back();
    if (t == last) return b == last ? 1.0 : 0.0;
    return a <= t && t < b ? 1.0 : 0.0;
  }
  double v = 0.0;
  const double d1 = knots[i + deg] - knots[i];
  const double d2 = knots[i + deg + 1] - knots[i + 1];
  if (d1 > 0.0) v += (t - knots[i]) / d1 * cox_de_boor(knots, i, deg - 1, t);
  if (d2 > 0.0) v += (knots[i + deg + 1] - t) / d2 * cox_de_boor(knots, i + 1, deg - 1, t);
  return v;
}

const std::array<int, 6>& edge_restriction_indices(int k, int l) {
  static const std::array<int, 6> e01{0, 3, 9, 12, 6, 1};
  static const std::array<int, 6> e02{0, 4, 10, 13, 7, 2};
  static const std::array<int, 6> e12{1, 5, 11, 14, 8, 2};
  if (k > l) std::swap(k, l);
  if (k == 0 && l == 1) return e01;
  if (k == 0 && l == 2) return e02;
  if (k == 1 && l == 2) return e12;
  fail(ErrorKind::invalid_argument, "edge needs two distinct local vertices");
}

std::vector<SuiteResult> run_verification(const Triangulation& mesh, const VerifyOptions& opt) {
  const SplineSpace space(mesh);
  return {partition_of_unity(space, opt), marsden(space, opt), hermite_tables(space),
          edge_restriction(space),        condition(space),     c2_edges(space, opt)};
}

}  // namespace wsspline
