#include "wsspline/edge_smoothness.hpp"

#include <algorithm>
#include <cmath>

#include "wsspline/error.hpp"

namespace wsspline {

namespace {

int position(const std::array<int, 3>& ids, int v) {
  for (int k = 0; k < 3; ++k) {
    if (ids[k] == v) return k;
  }
  return -1;
}

VertexPerm labeling(const std::array<int, 3>& ids, int a, int b) {
  const int pa = position(ids, a);
  const int pb = position(ids, b);
  if (pa < 0 || pb < 0 || pa == pb) fail(ErrorKind::not_shared, "edge is not shared by both triangles");
  return {pa, pb, 3 - pa - pb};
}

CoeffRef L(int one_based, BasisTag tag = BasisTag::b) { return {Side::left, tag, one_based - 1}; }
CoeffRef R(int one_based, BasisTag tag = BasisTag::b) { return {Side::right, tag, one_based - 1}; }

SmoothnessConstraint make(int order, CoeffRef target, std::vector<std::pair<CoeffRef, double>> sources) {
  return {order, target, std::move(sources)};
}

}  // namespace

SharedEdge canonicalize_edge(const std::array<int, 3>& left_ids, const Triangle& left_tri,
                             const std::array<int, 3>& right_ids, const Triangle& right_tri, int a, int b) {
  SharedEdge e;
  e.left_perm = labeling(left_ids, a, b);
  e.right_perm = labeling(right_ids, a, b);
  if (left_ids[e.left_perm[2]] == right_ids[e.right_perm[2]]) {
    fail(ErrorKind::not_shared, "triangles coincide");
  }
  e.left_index = basis_permutation(e.left_perm);
  e.right_index = basis_permutation(e.right_perm);
  const Point p1 = left_tri[e.left_perm[0]];
  const Point p2 = left_tri[e.left_perm[1]];
  const Point p3 = left_tri[e.left_perm[2]];
  const Point p4 = right_tri[e.right_perm[2]];
  const Bary eta = bary_coords(p1, p2, p3, p4);
  e.eta = {eta.b1, eta.b2, eta.b3};
  return e;
}

std::vector<SmoothnessConstraint> c0_constraints(const SharedEdge&) {
  std::vector<SmoothnessConstraint> out;
  for (int i : {1, 2, 4, 7, 10, 13}) out.push_back(make(0, R(i), {{L(i), 1.0}}));
  return out;
}

std::vector<SmoothnessConstraint> c1_constraints(const SharedEdge& edge) {
  const double e1 = edge.eta[0], e2 = edge.eta[1], e3 = edge.eta[2];
  return {
      make(1, R(5), {{L(1), e1}, {L(4), e2}, {L(5), e3}}),
      make(1, R(16), {{L(4), e1 + e2 / 2}, {L(10), e2 / 2}, {L(16), e3}}),
      make(1, R(19), {{L(10), 0.6 * e1 + 0.4 * e2}, {L(13), 0.4 * e1 + 0.6 * e2}, {L(19), e3}}),
      make(1, R(17), {{L(7), e1 / 2 + e2}, {L(13), e1 / 2}, {L(17), e3}}),
      make(1, R(6), {{L(7), e1}, {L(2), e2}, {L(6), e3}}),
  };
}

std::vector<SmoothnessConstraint> c2_constraints(const SharedEdge& edge) {
  const double e1 = edge.eta[0], e2 = edge.eta[1], e3 = edge.eta[2];
  const BasisTag t = BasisTag::b_tilde;
  return {
      make(2, R(11),
           {{L(1), e1 * (e1 - e2 - e3)},
            {L(4), e2 * (3 * e1 - e3)},
            {L(5), e3 * (3 * e1 - e2)},
            {L(10), e2 * e2},
            {L(11), e3 * e3},
            {L(16), 4 * e2 * e3}}),
      make(2, R(12),
           {{L(2), e2 * (e2 - e1 - e3)},
            {L(7), e1 * (3 * e2 - e3)},
            {L(6), e3 * (3 * e2 - e1)},
            {L(13), e1 * e1},
            {L(12), e3 * e3},
            {L(17), 4 * e1 * e3}}),
      make(2, R(22, t),
           {{L(4, t), (e1 - e3) * (2 * e1 + e2) / 6},
            {L(10, t), 5.0 / 18 * e2 + 7.0 / 18 * e2 * e2 + 2.0 / 3 * e1 + 2.0 / 3 * e2 * e1},
            {L(13, t), (2 * e1 + 3 * e2) * (e2 - 2 * e3) / 9},
            {L(16, t), e3 * (3 * e1 + e2) / 3},
            {L(19, t), 10.0 / 9 * e3 * (2 * e2 + e1)},
            {L(22, t), e3 * e3}}),
      make(2, R(25, t),
           {{L(7, t), (e2 - e3) * (2 * e2 + e1) / 6},
            {L(13, t), 5.0 / 18 * e1 + 7.0 / 18 * e1 * e1 + 2.0 / 3 * e2 + 2.0 / 3 * e2 * e1},
            {L(10, t), (3 * e1 + 2 * e2) * (e1 - 2 * e3) / 9},
            {L(17, t), e3 * (3 * e2 + e1) / 3},
            {L(19, t), 10.0 / 9 * e3 * (2 * e1 + e2)},
            {L(25, t), e3 * e3}}),
  };
}

std::vector<SmoothnessConstraint> all_constraints(const SharedEdge& edge) {
  auto out = c0_constraints(edge);
  for (auto& c : c1_constraints(edge)) out.push_back(std::move(c));
  for (auto& c : c2_constraints(edge)) out.push_back(std::move(c));
  return out;
}

double coefficient(const SharedEdge& edge, const LocalCoeffs& left, const LocalCoeffs& right, const CoeffRef& ref) {
  const LocalCoeffs& src = ref.side == Side::left ? left : right;
  const auto& idx = ref.side == Side::left ? edge.left_index : edge.right_index;
  const int stored = idx[ref.index];
  if (ref.index < 21 && stored < 21) return src.values[stored];
  return with_tag(src, ref.tag).values[stored];
}

double constraint_value(const SharedEdge& edge, const SmoothnessConstraint& c, const LocalCoeffs& left,
                        const LocalCoeffs& right) {
  double s = 0.0;
  for (const auto& [ref, w] : c.sources) s += w * coefficient(edge, left, right, ref);
  return s;
}

LocalCoeffs propagate_across(const SharedEdge& edge, const LocalCoeffs& left, const LocalCoeffs& right_free) {
  LocalCoeffs right = with_tag(right_free, BasisTag::b_tilde);
  for (const auto& c : all_constraints(edge)) {
    // Targets 11, 12 carry a B tag but sit below index 21, where B and B-tilde agree.
    right.values[edge.right_index[c.target.index]] = constraint_value(edge, c, left, right);
  }
  return right;
}

double SmoothnessReport::up_to(int order) const {
  double m = 0.0;
  for (int k = 0; k <= std::min(order, 2); ++k) m = std::max(m, by_order[k]);
  return m;
}

SmoothnessReport verify_smoothness(const LocalBasis& lb, const LocalCoeffs& sl, const LocalBasis& rb,
                                   const LocalCoeffs& sr, Point a, Point b, int samples) {
  double scale = 1.0;
  for (double v : with_tag(sl, BasisTag::b).values) scale = std::max(scale, std::abs(v));
  for (double v : with_tag(sr, BasisTag::b).values) scale = std::max(scale, std::abs(v));
  const double h = norm(b - a);
  SmoothnessReport rep;
  for (int k = 0; k < samples; ++k) {
    const double t = (k + 1.0) / (samples + 1.0);
    const Point p = (1.0 - t) * a + t * b;
    const Jet jl = lb.eval_jet(sl, p);
    const Jet jr = rb.eval_jet(sr, p);
    const double d0 = std::abs(jl.value - jr.value);
    const double d1 = h * std::max(std::abs(jl.grad.x - jr.grad.x), std::abs(jl.grad.y - jr.grad.y));
    const double d2 = h * h *
                      std::max({std::abs(jl.hess.xx - jr.hess.xx), std::abs(jl.hess.xy - jr.hess.xy),
                                std::abs(jl.hess.yy - jr.hess.yy)});
    rep.by_order[0] = std::max(rep.by_order[0], d0 / scale);
    rep.by_order[1] = std::max(rep.by_order[1], d1 / scale);
    rep.by_order[2] = std::max(rep.by_order[2], d2 / scale);
  }
  return rep;
}

}  // namespace wsspline
