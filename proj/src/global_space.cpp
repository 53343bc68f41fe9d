#include "wsspline/global_space.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "wsspline/error.hpp"

namespace wsspline {

namespace {

VertexPerm rotation_to(int k) { return {k, (k + 1) % 3, (k + 2) % 3}; }

int local_position(const std::array<int, 3>& tri, int v) {
  for (int k = 0; k < 3; ++k) {
    if (tri[k] == v) return k;
  }
  fail(ErrorKind::invalid_argument, "vertex not in triangle");
}

bool contains(const std::array<int, 6>& a, int x) { return std::find(a.begin(), a.end(), x) != a.end(); }
bool contains(const std::array<int, 3>& a, int x) { return std::find(a.begin(), a.end(), x) != a.end(); }

Vec2 unit_left_normal(Point a, Point b) {
  const Vec2 d = b - a;
  const double n = norm(d);
  return {-d.y / n, d.x / n};
}

}  // namespace

const std::array<int, 6>& vertex_class() {
  static constexpr std::array<int, 6> c{0, 3, 4, 9, 10, 15};
  return c;
}

const std::array<int, 3>& edge_class() {
  static constexpr std::array<int, 3> c{18, 21, 24};
  return c;
}

std::array<int, 6> vertex_class_of(int k) {
  const auto pi = basis_permutation(rotation_to(k));
  std::array<int, 6> out{};
  for (int i = 0; i < 6; ++i) out[i] = pi[vertex_class()[i]];
  return out;
}

std::array<int, 3> edge_class_of(int k, int l) {
  if (k == l) fail(ErrorKind::invalid_argument, "edge needs two distinct vertices");
  const auto pi = basis_permutation({k, l, 3 - k - l});
  std::array<int, 3> out{};
  for (int i = 0; i < 3; ++i) out[i] = pi[edge_class()[i]];
  return out;
}

int64_t dimension(const Triangulation& mesh) {
  return 6 * static_cast<int64_t>(mesh.n_vertices()) + 3 * static_cast<int64_t>(mesh.n_edges()) + mesh.n_triangles();
}

MinimalDeterminingSet build_mds(const Triangulation& mesh) {
  MinimalDeterminingSet mds;
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    const int t = mesh.vertex_triangles(v).front();
    mds.vertex_owner.push_back(t);
    for (int idx : vertex_class_of(local_position(mesh.triangles()[t], v))) {
      mds.entries.push_back({t, idx, MdsKind::vertex, v});
    }
  }
  for (int e = 0; e < mesh.n_edges(); ++e) {
    const MeshEdge& me = mesh.edges()[e];
    const int t = me.triangles.front();
    mds.edge_owner.push_back(t);
    const auto& tri = mesh.triangles()[t];
    for (int idx : edge_class_of(local_position(tri, me.a), local_position(tri, me.b))) {
      mds.entries.push_back({t, idx, MdsKind::edge, e});
    }
  }
  for (int t = 0; t < mesh.n_triangles(); ++t) mds.entries.push_back({t, 27, MdsKind::triangle, t});
  return mds;
}

SplineSpace::SplineSpace(Triangulation mesh) {
  auto d = std::make_shared<Data>(Data{std::move(mesh), {}, {}});
  d->bases.reserve(d->mesh.n_triangles());
  for (int t = 0; t < d->mesh.n_triangles(); ++t) d->bases.emplace_back(d->mesh.geometry(t));
  d->mds = build_mds(d->mesh);
  data_ = std::move(d);
}

namespace {

SharedEdge edge_between(const Triangulation& mesh, int left, int right, int a, int b) {
  SharedEdge se = canonicalize_edge(mesh.triangles()[left], mesh.geometry(left), mesh.triangles()[right],
                                    mesh.geometry(right), a, b);
  se.left = left;
  se.right = right;
  return se;
}

}  // namespace

GlobalSpline SplineSpace::propagate(const std::vector<double>& values) const {
  const Triangulation& mesh = this->mesh();
  const MinimalDeterminingSet& m = mds();
  if (static_cast<int64_t>(values.size()) != m.size()) {
    fail(ErrorKind::dimension_mismatch, "expected " + std::to_string(m.size()) + " MDS values, got " +
                                            std::to_string(values.size()));
  }
  std::vector<LocalCoeffs> c(mesh.n_triangles());
  for (auto& x : c) x.tag = BasisTag::b_tilde;
  for (int k = 0; k < m.size(); ++k) c[m.entries[k].triangle].values[m.entries[k].index] = values[k];

  // Vertex rings, breadth first from the owner.
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    std::vector<int> seen{m.vertex_owner[v]};
    for (size_t q = 0; q < seen.size(); ++q) {
      const int t = seen[q];
      for (int e : mesh.triangle_edges(t)) {
        const MeshEdge& me = mesh.edges()[e];
        if (me.triangles.size() != 2 || (me.a != v && me.b != v)) continue;
        const int other = me.triangles[0] == t ? me.triangles[1] : me.triangles[0];
        if (std::find(seen.begin(), seen.end(), other) != seen.end()) continue;
        const SharedEdge se = edge_between(mesh, t, other, v, me.a == v ? me.b : me.a);
        for (const auto& con : all_constraints(se)) {
          if (!contains(vertex_class(), con.target.index)) continue;
          c[other].values[se.right_index[con.target.index]] = constraint_value(se, con, c[t], c[other]);
        }
        seen.push_back(other);
      }
    }
  }
  // Edge fills from the owner to the other triangle.
  for (int e = 0; e < mesh.n_edges(); ++e) {
    const MeshEdge& me = mesh.edges()[e];
    if (me.triangles.size() != 2) continue;
    const int t = m.edge_owner[e];
    const int other = me.triangles[0] == t ? me.triangles[1] : me.triangles[0];
    const SharedEdge se = edge_between(mesh, t, other, me.a, me.b);
    for (const auto& con : all_constraints(se)) {
      if (!contains(edge_class(), con.target.index)) continue;
      c[other].values[se.right_index[con.target.index]] = constraint_value(se, con, c[t], c[other]);
    }
  }
  // Every constraint must now hold.
  double scale = 1.0;
  for (const auto& x : c) {
    for (double v : x.values) scale = std::max(scale, std::abs(v));
  }
  for (int e = 0; e < mesh.n_edges(); ++e) {
    const MeshEdge& me = mesh.edges()[e];
    if (me.triangles.size() != 2) continue;
    const SharedEdge se = edge_between(mesh, me.triangles[0], me.triangles[1], me.a, me.b);
    for (const auto& con : all_constraints(se)) {
      const double lhs = coefficient(se, c[se.left], c[se.right], con.target);
      const double rhs = constraint_value(se, con, c[se.left], c[se.right]);
      if (std::abs(lhs - rhs) > 1e-8 * scale) {
        fail(ErrorKind::propagation_conflict,
             "constraint on edge " + std::to_string(me.a + 1) + "-" + std::to_string(me.b + 1) + " violated by " +
                 std::to_string(std::abs(lhs - rhs)));
      }
    }
  }
  return GlobalSpline(*this, std::move(c));
}

GlobalSpline SplineSpace::basis_function(int entry) const {
  if (entry < 0 || entry >= mds().size()) fail(ErrorKind::invalid_argument, "MDS entry out of range");
  std::vector<double> values(mds().size(), 0.0);
  values[entry] = 1.0;
  return propagate(values);
}

std::vector<double> SplineSpace::mds_values(const std::vector<LocalCoeffs>& coeffs) const {
  if (static_cast<int>(coeffs.size()) != mesh().n_triangles()) {
    fail(ErrorKind::dimension_mismatch, "one coefficient vector per triangle expected");
  }
  std::vector<double> out;
  out.reserve(mds().size());
  for (const MdsEntry& e : mds().entries) out.push_back(with_tag(coeffs[e.triangle], BasisTag::b_tilde).values[e.index]);
  return out;
}

BasisValues SplineSpace::local_hermite_data(int t, const GlobalHermiteData& data) const {
  const Triangulation& m = mesh();
  if (static_cast<int>(data.vertex.size()) != m.n_vertices() || static_cast<int>(data.edge.size()) != m.n_edges() ||
      static_cast<int>(data.triangle.size()) != m.n_triangles()) {
    fail(ErrorKind::dimension_mismatch, "Hermite data does not match the mesh");
  }
  const auto& ids = m.triangles()[t];
  const Triangle& g = m.geometry(t);
  BasisValues out{};
  for (int k = 0; k < 3; ++k) {
    for (int j = 0; j < 6; ++j) out[6 * k + j] = data.vertex[ids[k]][j];
  }
  for (int k = 0; k < 3; ++k) {
    const MeshEdge& me = m.edges()[m.triangle_edges(t)[k]];
    const Vec2 n = unit_left_normal(m.vertices()[me.a], m.vertices()[me.b]);
    const double sign = dot(n, g.inward_normal(k)) > 0.0 ? 1.0 : -1.0;
    out[18 + k] = sign * data.edge[m.triangle_edges(t)[k]][0];
  }
  int s = 21;
  for (int k = 0; k < 3; ++k) {
    const MeshEdge& me = m.edges()[m.triangle_edges(t)[k]];
    for (int l = 0; l < 3; ++l) {
      if (l == k) continue;
      out[s++] = data.edge[m.triangle_edges(t)[k]][ids[l] == me.a ? 1 : 2];
    }
  }
  out[27] = data.triangle[t];
  return out;
}

GlobalHermiteData SplineSpace::sample_hermite(const std::function<Jet(Point)>& f) const {
  const Triangulation& m = mesh();
  GlobalHermiteData d;
  for (const Point& p : m.vertices()) {
    const Jet j = f(p);
    d.vertex.push_back({j.value, j.grad.x, j.grad.y, j.hess.xx, j.hess.xy, j.hess.yy});
  }
  for (const MeshEdge& me : m.edges()) {
    const Point a = m.vertices()[me.a];
    const Point b = m.vertices()[me.b];
    const Vec2 n = unit_left_normal(a, b);
    d.edge.push_back({dot(f(0.5 * (a + b)).grad, n), f((2.0 / 3) * a + (1.0 / 3) * b).hess.apply(n, n),
                      f((1.0 / 3) * a + (2.0 / 3) * b).hess.apply(n, n)});
  }
  for (int t = 0; t < m.n_triangles(); ++t) d.triangle.push_back(f(m.geometry(t).centroid()).value);
  return d;
}

GlobalSpline SplineSpace::fit(const GlobalHermiteData& data) const {
  std::vector<LocalCoeffs> local;
  for (int t = 0; t < mesh().n_triangles(); ++t) local.push_back(basis(t).hermite_interpolate(local_hermite_data(t, data)));
  return propagate(mds_values(local));
}

GlobalSpline SplineSpace::fit(const std::function<Jet(Point)>& f) const { return fit(sample_hermite(f)); }

double SplineSpace::max_smoothness_residual(const GlobalSpline& s, int samples) const {
  double worst = 0.0;
  for (const MeshEdge& me : mesh().edges()) {
    if (me.triangles.size() != 2) continue;
    const int l = me.triangles[0];
    const int r = me.triangles[1];
    const SmoothnessReport rep = verify_smoothness(basis(l), s.coeffs()[l], basis(r), s.coeffs()[r],
                                                   mesh().vertices()[me.a], mesh().vertices()[me.b], samples);
    worst = std::max(worst, rep.up_to(2));
  }
  return worst;
}

Eigen::MatrixXd SplineSpace::constraint_matrix() const {
  const Triangulation& m = mesh();
  std::vector<std::pair<SharedEdge, SmoothnessConstraint>> rows;
  for (const MeshEdge& me : m.edges()) {
    if (me.triangles.size() != 2) continue;
    const SharedEdge se = edge_between(m, me.triangles[0], me.triangles[1], me.a, me.b);
    for (auto& c : all_constraints(se)) rows.emplace_back(se, std::move(c));
  }
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()), n_basis * m.n_triangles());
  const Matrix28& g_t = conversion_inverse();
  for (size_t r = 0; r < rows.size(); ++r) {
    const auto& [se, con] = rows[r];
    auto add = [&](const CoeffRef& ref, double w) {
      const int tri = ref.side == Side::left ? se.left : se.right;
      const int stored = (ref.side == Side::left ? se.left_index : se.right_index)[ref.index];
      if (ref.tag == BasisTag::b_tilde || stored < 21) {
        a(static_cast<Eigen::Index>(r), n_basis * tri + stored) += w;
      } else {
        for (int k = 0; k < n_basis; ++k) a(static_cast<Eigen::Index>(r), n_basis * tri + k) += w * g_t(stored, k);
      }
    };
    add(con.target, 1.0);
    for (const auto& [ref, w] : con.sources) add(ref, -w);
  }
  return a;
}

Eigen::MatrixXd SplineSpace::propagation_matrix() const {
  const int n = static_cast<int>(dimension());
  Eigen::MatrixXd p(n_basis * mesh().n_triangles(), n);
  for (int k = 0; k < n; ++k) {
    const GlobalSpline s = basis_function(k);
    for (int t = 0; t < mesh().n_triangles(); ++t) {
      for (int i = 0; i < n_basis; ++i) p(n_basis * t + i, k) = s.coeffs()[t].values[i];
    }
  }
  return p;
}

StabilityReport SplineSpace::stability_probe(int trials, int lattice, uint64_t seed) const {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  StabilityReport rep;
  rep.k_minus = std::numeric_limits<double>::infinity();
  rep.b_ratio_min = std::numeric_limits<double>::infinity();
  std::vector<Bary> sites;
  for (int i = 0; i <= lattice; ++i) {
    for (int j = 0; i + j <= lattice; ++j) {
      sites.push_back({static_cast<double>(lattice - i - j) / lattice, static_cast<double>(i) / lattice,
                       static_cast<double>(j) / lattice});
    }
  }
  for (const Bary& b : alt_domain_points_bary()) sites.push_back(b);
  for (const Bary& b : domain_points_bary()) sites.push_back(b);
  for (int trial = 0; trial < trials; ++trial) {
    // Odd trials only excite the entries owned by one triangle, so the lower
    // constant is not swamped by the max over many random entries.
    std::vector<double> values(mds().size(), 0.0);
    const int focus = trial % 2 ? std::uniform_int_distribution<int>(0, mesh().n_triangles() - 1)(rng) : -1;
    double cmax = 0.0;
    for (int k = 0; k < mds().size(); ++k) {
      if (focus >= 0 && mds().entries[k].triangle != focus) continue;
      values[k] = dist(rng);
      cmax = std::max(cmax, std::abs(values[k]));
    }
    const GlobalSpline s = propagate(values);
    double smax = 0.0;
    for (int t = 0; t < mesh().n_triangles(); ++t) {
      const LocalBasis& lb = basis(t);
      const LocalCoeffs b = with_tag(s.coeffs()[t], BasisTag::b);
      const auto pieces = lb.combined_pieces(b);
      double tmax = 0.0;
      for (const Bary& site : sites) {
        const Point p = lb.triangle().from_bary(site);
        tmax = std::max(tmax, std::abs(pieces[lb.split().locate(p)].eval(site)));
      }
      double bt = 0.0;
      double bb = 0.0;
      for (int i = 0; i < n_basis; ++i) {
        bt = std::max(bt, std::abs(s.coeffs()[t].values[i]));
        bb = std::max(bb, std::abs(b.values[i]));
      }
      if (bt > 0.0) rep.alt_ratio_max = std::max(rep.alt_ratio_max, tmax / bt);
      if (bb > 0.0) rep.b_ratio_min = std::min(rep.b_ratio_min, tmax / bb);
      smax = std::max(smax, tmax);
    }
    rep.k_minus = std::min(rep.k_minus, smax / cmax);
    rep.k_plus = std::max(rep.k_plus, smax / cmax);
  }
  // The upper constant on the sites is max_x sum |B_gamma(x)|, reached by the
  // sign vector of the basis values at the maximizing x.
  std::vector<std::vector<LocalCoeffs>> local(mesh().n_triangles());
  for (int k = 0; k < mds().size(); ++k) {
    const GlobalSpline s = basis_function(k);
    for (int t = 0; t < mesh().n_triangles(); ++t) {
      const auto& v = s.coeffs()[t].values;
      if (std::any_of(v.begin(), v.end(), [](double x) { return x != 0.0; })) local[t].push_back(s.coeffs()[t]);
    }
  }
  for (int t = 0; t < mesh().n_triangles(); ++t) {
    const LocalBasis& lb = basis(t);
    for (const Bary& site : sites) {
      const BasisValues bt = lb.eval(lb.triangle().from_bary(site), BasisTag::b_tilde);
      double sum = 0.0;
      for (const LocalCoeffs& c : local[t]) {
        double v = 0.0;
        for (int i = 0; i < n_basis; ++i) v += c.values[i] * bt[i];
        sum += std::abs(v);
      }
      rep.k_plus = std::max(rep.k_plus, sum);
    }
  }
  return rep;
}

GlobalSpline::GlobalSpline(SplineSpace space, std::vector<LocalCoeffs> coeffs)
    : space_(std::move(space)), coeffs_(std::move(coeffs)) {
  if (static_cast<int>(coeffs_.size()) != space_.mesh().n_triangles()) {
    fail(ErrorKind::dimension_mismatch, "one coefficient vector per triangle expected");
  }
  for (auto& c : coeffs_) c = with_tag(c, BasisTag::b_tilde);
}

double GlobalSpline::eval_in(int t, Point p) const { return space_.basis(t).eval(coeffs_[t], p); }

double GlobalSpline::eval(Point p) const {
  const int t = space_.mesh().locate(p);
  if (t < 0) fail(ErrorKind::out_of_domain, "point outside the mesh");
  return eval_in(t, p);
}

Jet GlobalSpline::eval_jet(Point p) const {
  const int t = space_.mesh().locate(p);
  if (t < 0) fail(ErrorKind::out_of_domain, "point outside the mesh");
  return space_.basis(t).eval_jet(coeffs_[t], p);
}

int numerical_rank(const Eigen::MatrixXd& m, double rel_tol) {
  if (m.size() == 0) return 0;
  const Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) r += s(i) > rel_tol * s(0) ? 1 : 0;
  return r;
}

}  // namespace wsspline
