#include "wsspline/local_basis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "wsspline/error.hpp"

namespace wsspline {

namespace {

Point knot_point(const Triangle& tri, int id) {
  const auto& b = knot_point_bary3()[id];
  return tri.from_bary({b[0] / 3.0, b[1] / 3.0, b[2] / 3.0});
}

std::vector<Point> cartesian_knots(const Triangle& tri, int i) {
  std::vector<Point> k;
  for (int id : knot_sets()[i]) k.push_back(knot_point(tri, id));
  return k;
}

// The reference pieces have small rational coefficients; snapping removes
// the rounding left by the lattice fit.
double snap_rational(double x) {
  if (x == 0.0) return 0.0;
  long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int it = 0; it < 40; ++it) {
    const double a = std::floor(r);
    const long long ai = static_cast<long long>(a);
    const long long h2 = ai * h1 + h0, k2 = ai * k1 + k0;
    if (k2 > 1000000) break;
    h0 = h1, h1 = h2, k0 = k1, k1 = k2;
    const double q = static_cast<double>(h1) / static_cast<double>(k1);
    if (std::abs(q - x) <= 1e-12 * std::max(1.0, std::abs(x))) return q;
    if (r - a < 1e-300) break;
    r = 1.0 / (r - a);
  }
  return x;
}

PieceTable build_piece_table() {
  const Triangle ref({0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0});
  const WsSplit split(ref, 3);
  std::array<Point, 10> lattice;
  for (int m = 0; m < 10; ++m) {
    const auto& e = cubic_exponents[m];
    lattice[m] = ref.from_bary({e[0] / 3.0, e[1] / 3.0, e[2] / 3.0});
  }
  PieceTable table;
  table.cells.resize(split.cell_count());
  for (int i = 0; i < n_basis; ++i) {
    const KnotMultiset knots(cartesian_knots(ref, i));
    const double w = weight_factors()[i] * ref.area() / 15.0;
    for (int cell = 0; cell < split.cell_count(); ++cell) {
      const Point r = split.cell_interior_points()[cell];
      std::array<double, 10> values{};
      bool nonzero = false;
      for (int m = 0; m < 10; ++m) {
        values[m] = w * eval_m_piece(knots, r, lattice[m]);
        nonzero |= values[m] != 0.0;
      }
      if (!nonzero) continue;
      BaryCubic c = fit_cubic_on_lattice(values);
      for (double& v : c.c) v = snap_rational(v);
      table.cells[cell].emplace_back(i, c);
    }
  }
  return table;
}

RationalMatrix28 zero_rational() {
  RationalMatrix28 m;
  for (auto& row : m) row.fill(Rational(0));
  return m;
}

// Pairs (22,23), (24,25), (26,27) and 28, 0-based.
constexpr int pair_index[3][2] = {{21, 22}, {23, 24}, {25, 26}};

Matrix28 to_double(const RationalMatrix28& r) {
  Matrix28 m;
  for (int i = 0; i < n_basis; ++i) {
    for (int j = 0; j < n_basis; ++j) m(i, j) = boost::rational_cast<double>(r[i][j]);
  }
  return m;
}

}  // namespace

double HermiteOp::apply(const Jet& j) const {
  switch (order) {
    case 0: return j.value;
    case 1: return dot(j.grad, u);
    default: return j.hess.apply(u, v);
  }
}

const PieceTable& piece_table() {
  static const PieceTable table = build_piece_table();
  return table;
}

const RationalMatrix28& alt_basis_matrix_exact() {
  static const RationalMatrix28 g = [] {
    RationalMatrix28 m = zero_rational();
    for (int i = 0; i < 21; ++i) m[i][i] = 1;
    for (const auto& p : pair_index) {
      for (int s = 0; s < 2; ++s) {
        const int a = p[s];
        const int b = p[1 - s];
        m[a][a] = 2;
        m[a][b] = -1;
        m[a][27] = Rational(1, 3);
      }
    }
    m[27][27] = -1;
    return m;
  }();
  return g;
}

const RationalMatrix28& conversion_matrix_exact() {
  static const RationalMatrix28 c = [] {
    RationalMatrix28 m = zero_rational();
    for (int i = 0; i < 21; ++i) m[i][i] = 1;
    for (const auto& p : pair_index) {
      for (int s = 0; s < 2; ++s) {
        m[p[s]][p[s]] = Rational(2, 3);
        m[p[s]][p[1 - s]] = Rational(1, 3);
        m[27][p[s]] = Rational(1, 3);
      }
    }
    m[27][27] = -1;
    return m;
  }();
  return c;
}

const RationalMatrix28& conversion_inverse_exact() {
  // b = G^T btilde.
  static const RationalMatrix28 inv = [] {
    const RationalMatrix28& g = alt_basis_matrix_exact();
    RationalMatrix28 m = zero_rational();
    for (int i = 0; i < n_basis; ++i) {
      for (int j = 0; j < n_basis; ++j) m[i][j] = g[j][i];
    }
    return m;
  }();
  return inv;
}

const Matrix28& conversion_matrix() {
  static const Matrix28 m = to_double(conversion_matrix_exact());
  return m;
}

const Matrix28& conversion_inverse() {
  static const Matrix28 m = to_double(conversion_inverse_exact());
  return m;
}

Rational inf_norm(const RationalMatrix28& m) {
  Rational best(0);
  for (const auto& row : m) {
    Rational s(0);
    for (const Rational& x : row) s += boost::abs(x);
    if (s > best) best = s;
  }
  return best;
}

LocalCoeffs convert(const LocalCoeffs& coeffs) {
  const Matrix28& m = coeffs.tag == BasisTag::b ? conversion_matrix() : conversion_inverse();
  LocalCoeffs out;
  out.tag = coeffs.tag == BasisTag::b ? BasisTag::b_tilde : BasisTag::b;
  for (int i = 0; i < n_basis; ++i) {
    double s = 0.0;
    for (int j = 0; j < n_basis; ++j) s += m(i, j) * coeffs.values[j];
    out.values[i] = s;
  }
  return out;
}

LocalCoeffs with_tag(const LocalCoeffs& coeffs, BasisTag tag) {
  return coeffs.tag == tag ? coeffs : convert(coeffs);
}

const std::vector<std::vector<int>>& control_net_faces() {
  static const std::vector<std::vector<int>> faces = [] {
    // 1-based, converted below.
    std::vector<std::vector<int>> f{
        {1, 4, 5}, {2, 7, 6}, {3, 8, 9},
        {4, 10, 16}, {10, 13, 19}, {13, 7, 17},
        {5, 11, 16}, {11, 14, 21}, {14, 8, 18},
        {6, 12, 17}, {12, 15, 20}, {15, 9, 18},
        {4, 16, 5}, {7, 6, 17}, {8, 18, 9},
        {10, 16, 22}, {10, 22, 19}, {13, 19, 25}, {13, 25, 17},
        {11, 16, 23}, {11, 23, 21}, {14, 21, 26}, {14, 26, 18},
        {12, 17, 24}, {12, 24, 20}, {15, 20, 27}, {15, 27, 18},
        {23, 16, 22, 28}, {22, 19, 25, 28}, {25, 17, 24, 28},
        {24, 20, 27, 28}, {27, 18, 26, 28}, {26, 21, 23, 28},
    };
    const auto& dp = domain_points_135();
    std::vector<std::vector<int>> out;
    for (auto face : f) {
      for (int& x : face) --x;
      // Orient counterclockwise in barycentric (b2, b3) coordinates.
      int64_t area = 0;
      for (size_t k = 0; k < face.size(); ++k) {
        const auto& u = dp[face[k]];
        const auto& v = dp[face[(k + 1) % face.size()]];
        area += static_cast<int64_t>(u[1]) * v[2] - static_cast<int64_t>(u[2]) * v[1];
      }
      if (area < 0) std::reverse(face.begin() + 1, face.end());
      out.push_back(face);
    }
    return out;
  }();
  return faces;
}

LocalBasis::LocalBasis(const Triangle& tri) : split_(tri, 3) {
  for (int i = 0; i < n_basis; ++i) {
    weights_[i] = weight_factors()[i] * tri.area() / 15.0;
    domain_points_[i] = tri.from_bary(domain_points_bary()[i]);
    alt_domain_points_[i] = tri.from_bary(alt_domain_points_bary()[i]);
  }
}

std::array<Point, n_knot_points> LocalBasis::knot_points() const {
  std::array<Point, n_knot_points> out;
  for (int k = 0; k < n_knot_points; ++k) out[k] = knot_point(triangle(), k);
  return out;
}

KnotMultiset LocalBasis::knots(int i) const { return KnotMultiset(cartesian_knots(triangle(), i)); }

BasisValues LocalBasis::eval_in_cell(int cell, const Bary& b) const {
  BasisValues out{};
  for (const auto& [i, cubic] : piece_table().cells[cell]) out[i] = cubic.eval(b);
  return out;
}

namespace {

template <class T>
std::array<T, n_basis> apply_alt(const std::array<T, n_basis>& v);

template <>
BasisValues apply_alt(const BasisValues& v) {
  BasisValues out = v;
  for (const auto& p : pair_index) {
    for (int s = 0; s < 2; ++s) out[p[s]] = 2.0 * v[p[s]] - v[p[1 - s]] + v[27] / 3.0;
  }
  out[27] = -v[27];
  return out;
}

Jet combine(double a, const Jet& x, double b, const Jet& y, double c, const Jet& z) {
  Jet j;
  j.value = a * x.value + b * y.value + c * z.value;
  j.grad = {a * x.grad.x + b * y.grad.x + c * z.grad.x, a * x.grad.y + b * y.grad.y + c * z.grad.y};
  j.hess.xx = a * x.hess.xx + b * y.hess.xx + c * z.hess.xx;
  j.hess.xy = a * x.hess.xy + b * y.hess.xy + c * z.hess.xy;
  j.hess.yy = a * x.hess.yy + b * y.hess.yy + c * z.hess.yy;
  return j;
}

template <>
BasisJets apply_alt(const BasisJets& v) {
  BasisJets out = v;
  for (const auto& p : pair_index) {
    for (int s = 0; s < 2; ++s) out[p[s]] = combine(2.0, v[p[s]], -1.0, v[p[1 - s]], 1.0 / 3.0, v[27]);
  }
  out[27] = combine(-1.0, v[27], 0.0, v[27], 0.0, v[27]);
  return out;
}

}  // namespace

BasisValues LocalBasis::eval(Point p, BasisTag tag) const {
  const int cell = split_.locate(p);
  const BasisValues v = eval_in_cell(cell, triangle().to_bary(p));
  return tag == BasisTag::b ? v : apply_alt(v);
}

BasisJets LocalBasis::eval_jets(Point p, BasisTag tag) const {
  const int cell = split_.locate(p);
  const Bary b = triangle().to_bary(p);
  BasisJets out{};
  for (const auto& [i, cubic] : piece_table().cells[cell]) {
    out[i] = cartesian_jet(cubic, b, triangle().bary_gradients());
  }
  return tag == BasisTag::b ? out : apply_alt(out);
}

double LocalBasis::eval(const LocalCoeffs& coeffs, Point p) const {
  const BasisValues v = eval(p, coeffs.tag);
  double s = 0.0;
  for (int i = 0; i < n_basis; ++i) s += coeffs.values[i] * v[i];
  return s;
}

Jet LocalBasis::eval_jet(const LocalCoeffs& coeffs, Point p) const {
  const BasisJets v = eval_jets(p, coeffs.tag);
  Jet j;
  for (int i = 0; i < n_basis; ++i) {
    const double c = coeffs.values[i];
    j.value += c * v[i].value;
    j.grad.x += c * v[i].grad.x;
    j.grad.y += c * v[i].grad.y;
    j.hess.xx += c * v[i].hess.xx;
    j.hess.xy += c * v[i].hess.xy;
    j.hess.yy += c * v[i].hess.yy;
  }
  return j;
}

double LocalBasis::eval_recurrence(int i, Point p, OnLinePolicy policy) const {
  return weights_[i] * eval_m(knots(i), p, policy);
}

std::array<HermiteOp, 34> LocalBasis::hermite_ops() const {
  const Triangle& t = triangle();
  const auto kp = knot_points();
  const Point p[3] = {t[0], t[1], t[2]};
  auto mid = [&](int a, int b) { return 0.5 * (p[a] + p[b]); };
  std::array<HermiteOp, 34> r;
  for (int k = 0; k < 3; ++k) r[k] = {p[k], 0, {}, {}};
  // Directions at each vertex: p1 -> (p2, p3), p2 -> (p3, p1), p3 -> (p1, p2).
  for (int k = 0; k < 3; ++k) {
    const Vec2 a = p[(k + 1) % 3] - p[k];
    const Vec2 b = p[(k + 2) % 3] - p[k];
    r[3 + 2 * k] = {p[k], 1, a, {}};
    r[4 + 2 * k] = {p[k], 1, b, {}};
    r[9 + 2 * k] = {p[k], 2, a, a};
    r[10 + 2 * k] = {p[k], 2, b, b};
    r[15 + k] = {p[k], 2, a, b};
  }
  // Edge midpoints toward the opposite vertex: q3, q1, q2.
  const int opp[3] = {2, 0, 1};
  for (int s = 0; s < 3; ++s) {
    const int k = opp[s];
    const Point q = mid((k + 1) % 3, (k + 2) % 3);
    r[18 + s] = {q, 1, p[k] - q, {}};
  }
  // Second derivatives at the edge knots toward the opposite vertex.
  const int second[6][2] = {{2, 0}, {1, 0}, {0, 1}, {2, 1}, {1, 2}, {0, 2}};
  for (int s = 0; s < 6; ++s) {
    const int k = second[s][0];
    const int l = second[s][1];
    const Point site = kp[edge_knot_id(k, l)];
    const Vec2 d = p[k] - site;
    r[21 + s] = {site, 2, d, d};
  }
  r[27] = {t.centroid(), 0, {}, {}};
  const Vec2 d12 = p[1] - p[0];
  const Vec2 d13 = p[2] - p[0];
  for (int s = 0; s < 2; ++s) {
    const Point site = kp[s == 0 ? kp31 : kp32];
    r[28 + 3 * s] = {site, 2, d12, d12};
    r[29 + 3 * s] = {site, 2, d13, d13};
    r[30 + 3 * s] = {site, 2, d13, d12};
  }
  return r;
}

std::array<HermiteOp, n_basis> LocalBasis::hermite_problem_ops() const {
  const Triangle& t = triangle();
  const auto kp = knot_points();
  const Vec2 ex{1.0, 0.0};
  const Vec2 ey{0.0, 1.0};
  std::array<HermiteOp, n_basis> r;
  for (int k = 0; k < 3; ++k) {
    r[6 * k + 0] = {t[k], 0, {}, {}};
    r[6 * k + 1] = {t[k], 1, ex, {}};
    r[6 * k + 2] = {t[k], 1, ey, {}};
    r[6 * k + 3] = {t[k], 2, ex, ex};
    r[6 * k + 4] = {t[k], 2, ex, ey};
    r[6 * k + 5] = {t[k], 2, ey, ey};
  }
  for (int k = 0; k < 3; ++k) {
    const Point q = 0.5 * (t[(k + 1) % 3] + t[(k + 2) % 3]);
    r[18 + k] = {q, 1, t.inward_normal(k), {}};
  }
  int s = 21;
  for (int k = 0; k < 3; ++k) {
    for (int l = 0; l < 3; ++l) {
      if (l == k) continue;
      const Vec2 n = t.inward_normal(k);
      r[s++] = {kp[edge_knot_id(k, l)], 2, n, n};
    }
  }
  r[27] = {t.centroid(), 0, {}, {}};
  return r;
}

Eigen::MatrixXd LocalBasis::hermite_matrix(BasisTag tag) const {
  const auto ops = hermite_ops();
  Eigen::MatrixXd m(n_basis, static_cast<int>(ops.size()));
  for (size_t j = 0; j < ops.size(); ++j) {
    const BasisJets jets = eval_jets(ops[j].site, tag);
    for (int i = 0; i < n_basis; ++i) m(i, static_cast<int>(j)) = ops[j].apply(jets[i]);
  }
  return m;
}

BasisValues LocalBasis::hermite_data(const std::function<Jet(Point)>& f) const {
  const auto ops = hermite_problem_ops();
  BasisValues out{};
  for (int j = 0; j < n_basis; ++j) out[j] = ops[j].apply(f(ops[j].site));
  return out;
}

LocalCoeffs LocalBasis::hermite_interpolate(const BasisValues& data) const {
  const auto ops = hermite_problem_ops();
  Matrix28 k;  // k(j, i) = lambda_j(B_i)
  for (int j = 0; j < n_basis; ++j) {
    const BasisJets jets = eval_jets(ops[j].site);
    for (int i = 0; i < n_basis; ++i) k(j, i) = ops[j].apply(jets[i]);
  }
  Eigen::Matrix<double, n_basis, 1> rhs;
  for (int j = 0; j < n_basis; ++j) rhs(j) = data[j];
  const Eigen::FullPivLU<Matrix28> lu(k);
  if (!lu.isInvertible()) fail(ErrorKind::numerical_singularity, "Hermite system is singular");
  const Eigen::Matrix<double, n_basis, 1> sol = lu.solve(rhs);
  LocalCoeffs out;
  for (int i = 0; i < n_basis; ++i) out.values[i] = sol(i);
  return out;
}

BasisValues LocalBasis::marsden_duals(Vec2 y) const {
  const auto kp = knot_points();
  auto f = [&](Point p) { return 1.0 + dot(y, p); };
  const Triangle& t = triangle();
  const double v1 = f(t[0]), v2 = f(t[1]), v3 = f(t[2]);
  const double p12 = f(kp[kp12]), p13 = f(kp[kp13]), p21 = f(kp[kp21]);
  const double p23 = f(kp[kp23]), p31 = f(kp[kp31]), p32 = f(kp[kp32]);
  const double m1 = f(t.from_bary({0.4, 0.4, 0.2}));
  const double m2 = f(t.from_bary({0.2, 0.4, 0.4}));
  const double m3 = f(t.from_bary({0.4, 0.2, 0.4}));
  const double q = f(t.centroid());
  return {
      v1 * v1 * v1, v2 * v2 * v2, v3 * v3 * v3,
      v1 * v1 * p31, v1 * v1 * p21, v2 * v2 * p12, v2 * v2 * p32, v3 * v3 * p23, v3 * v3 * p13,
      v1 * p31 * p32, v1 * p23 * p21, v2 * p12 * p13, v2 * p31 * p32, v3 * p23 * p21, v3 * p12 * p13,
      v1 * p31 * p21, v2 * p32 * p12, v3 * p13 * p23,
      p31 * p32 * m1, p12 * p13 * m2, p23 * p21 * m3,
      p31 * p32 * p21, p31 * p23 * p21, p32 * p12 * p13,
      p31 * p32 * p12, p13 * p23 * p21, p12 * p13 * p23,
      q * (2.0 * q * q - (p13 * p23 + p32 * p12 + p31 * p21) / 3.0),
  };
}

double LocalBasis::collocation_condition() const {
  Matrix28 a;
  for (int j = 0; j < n_basis; ++j) {
    const BasisValues v = eval(domain_points_[j]);
    for (int i = 0; i < n_basis; ++i) a(j, i) = v[i];
  }
  const Eigen::FullPivLU<Matrix28> lu(a);
  if (!lu.isInvertible()) fail(ErrorKind::numerical_singularity, "collocation matrix is singular");
  const Matrix28 inv = lu.inverse();
  return inv.cwiseAbs().rowwise().sum().maxCoeff();
}

ControlNet LocalBasis::control_net(const LocalCoeffs& coeffs) const {
  const LocalCoeffs b = with_tag(coeffs, BasisTag::b);
  ControlNet net;
  net.sites = domain_points_;
  net.heights = b.values;
  net.faces = &control_net_faces();
  return net;
}

std::vector<BaryCubic> LocalBasis::combined_pieces(const LocalCoeffs& coeffs) const {
  const LocalCoeffs b = with_tag(coeffs, BasisTag::b);
  const PieceTable& table = piece_table();
  std::vector<BaryCubic> out(table.cells.size());
  for (size_t cell = 0; cell < table.cells.size(); ++cell) {
    for (const auto& [i, cubic] : table.cells[cell]) out[cell].axpy(b.values[i], cubic);
  }
  return out;
}

}  // namespace wsspline
