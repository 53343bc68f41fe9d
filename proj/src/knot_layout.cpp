#include "wsspline/knot_layout.hpp"

#include <algorithm>

#include "wsspline/error.hpp"

namespace wsspline {

namespace {

constexpr int P1 = kp1, P2 = kp2, P3 = kp3;
constexpr int P12 = kp12, P13 = kp13, P21 = kp21, P23 = kp23, P31 = kp31, P32 = kp32;

constexpr std::array<std::array<int, 6>, n_basis> sets{{
    {P1, P1, P1, P1, P31, P21},
    {P2, P2, P2, P2, P32, P12},
    {P3, P3, P3, P3, P13, P23},
    {P1, P1, P1, P31, P32, P21},
    {P1, P1, P1, P21, P23, P31},
    {P2, P2, P2, P12, P13, P32},
    {P2, P2, P2, P32, P31, P12},
    {P3, P3, P3, P23, P21, P13},
    {P3, P3, P3, P13, P12, P23},
    {P1, P1, P31, P32, P2, P21},
    {P1, P1, P21, P23, P3, P31},
    {P2, P2, P12, P13, P3, P32},
    {P2, P2, P32, P31, P1, P12},
    {P3, P3, P23, P21, P1, P13},
    {P3, P3, P13, P12, P2, P23},
    {P1, P1, P31, P32, P21, P23},
    {P2, P2, P32, P31, P12, P13},
    {P3, P3, P13, P12, P23, P21},
    {P1, P2, P31, P32, P12, P21},
    {P2, P3, P12, P13, P23, P32},
    {P3, P1, P23, P21, P31, P13},
    {P1, P31, P32, P12, P23, P21},
    {P1, P21, P23, P13, P32, P31},
    {P2, P12, P13, P23, P31, P32},
    {P2, P32, P31, P21, P13, P12},
    {P3, P23, P21, P31, P12, P13},
    {P3, P13, P12, P32, P21, P23},
    {P31, P32, P12, P13, P23, P21},
}};

constexpr std::array<std::array<int, 3>, n_basis> dp135{{
    {135, 0, 0}, {0, 135, 0}, {0, 0, 135},
    {120, 15, 0}, {120, 0, 15}, {0, 120, 15}, {15, 120, 0}, {15, 0, 120}, {0, 15, 120},
    {90, 45, 0}, {90, 0, 45}, {0, 90, 45}, {45, 90, 0}, {45, 0, 90}, {0, 45, 90},
    {105, 15, 15}, {15, 105, 15}, {15, 15, 105},
    {63, 63, 9}, {9, 63, 63}, {63, 9, 63},
    {75, 45, 15}, {75, 15, 45}, {15, 75, 45}, {45, 75, 15}, {45, 15, 75}, {15, 45, 75},
    {45, 45, 45},
}};

std::array<std::array<int, 3>, n_basis> make_alt() {
  auto a = dp135;
  a[21] = {75, 35, 25};
  a[22] = {75, 25, 35};
  a[23] = {25, 75, 35};
  a[24] = {35, 75, 25};
  a[25] = {35, 25, 75};
  a[26] = {25, 35, 75};
  return a;
}

std::array<Bary, n_basis> to_bary(const std::array<std::array<int, 3>, n_basis>& v) {
  std::array<Bary, n_basis> out;
  for (int i = 0; i < n_basis; ++i) out[i] = {v[i][0] / 135.0, v[i][1] / 135.0, v[i][2] / 135.0};
  return out;
}

std::array<int, 6> sorted(std::array<int, 6> s) {
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

int edge_knot_id(int k, int l) {
  if (k == l || k < 0 || k > 2 || l < 0 || l > 2) fail(ErrorKind::invalid_argument, "bad edge knot label");
  switch (k * 3 + l) {
    case 1: return P12;
    case 2: return P13;
    case 3: return P21;
    case 5: return P23;
    case 6: return P31;
    default: return P32;
  }
}

const std::array<std::array<int, 3>, n_knot_points>& knot_point_bary3() {
  static const auto pts = [] {
    std::array<std::array<int, 3>, n_knot_points> p{};
    for (int k = 0; k < 3; ++k) {
      p[k] = {0, 0, 0};
      p[k][k] = 3;
      for (int l = 0; l < 3; ++l) {
        if (l == k) continue;
        const int m = 3 - k - l;
        std::array<int, 3> q{0, 0, 0};
        q[l] = 2;
        q[m] = 1;
        p[edge_knot_id(k, l)] = q;
      }
    }
    return p;
  }();
  return pts;
}

const std::array<std::array<int, 6>, n_basis>& knot_sets() { return sets; }

const std::array<double, n_basis>& weight_factors() {
  static const std::array<double, n_basis> w = [] {
    std::array<double, n_basis> f{};
    for (int i = 0; i < n_basis; ++i) {
      if (i < 3) f[i] = 1.0 / 6;
      else if (i < 9) f[i] = 1.0 / 3;
      else if (i < 15) f[i] = 1.0 / 2;
      else if (i < 18) f[i] = 2.0 / 3;
      else if (i < 21) f[i] = 5.0 / 6;
      else if (i < 27) f[i] = 2.0 / 3;
      else f[i] = 1.0;
    }
    return f;
  }();
  return w;
}

int permute_knot_point(int id, const VertexPerm& sigma) {
  if (id < 3) return sigma[id];
  for (int k = 0; k < 3; ++k) {
    for (int l = 0; l < 3; ++l) {
      if (k != l && edge_knot_id(k, l) == id) return edge_knot_id(sigma[k], sigma[l]);
    }
  }
  fail(ErrorKind::invalid_argument, "bad knot point id");
}

namespace {

std::array<int, n_basis> compute_basis_permutation(const VertexPerm& sigma) {
  std::array<int, n_basis> pi{};
  for (int i = 0; i < n_basis; ++i) {
    std::array<int, 6> image{};
    for (int k = 0; k < 6; ++k) image[k] = permute_knot_point(sets[i][k], sigma);
    image = sorted(image);
    int match = -1;
    for (int j = 0; j < n_basis; ++j) {
      if (sorted(sets[j]) == image) match = j;
    }
    if (match < 0) fail(ErrorKind::invalid_argument, "knot sets not closed under relabeling");
    pi[i] = match;
  }
  return pi;
}

}  // namespace

std::array<int, n_basis> basis_permutation(const VertexPerm& sigma) {
  static const auto table = [] {
    std::array<std::array<int, n_basis>, 6> t{};
    for (int k = 0; k < 6; ++k) t[k] = compute_basis_permutation(all_vertex_perms()[k]);
    return t;
  }();
  for (int k = 0; k < 6; ++k) {
    if (all_vertex_perms()[k] == sigma) return table[k];
  }
  fail(ErrorKind::invalid_argument, "not a vertex permutation");
}

const std::array<VertexPerm, 6>& all_vertex_perms() {
  static constexpr std::array<VertexPerm, 6> perms{{
      {0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2},
  }};
  return perms;
}

const std::array<std::array<int, 3>, n_basis>& domain_points_135() { return dp135; }

const std::array<std::array<int, 3>, n_basis>& alt_domain_points_135() {
  static const auto a = make_alt();
  return a;
}

const std::array<Bary, n_basis>& domain_points_bary() {
  static const auto b = to_bary(dp135);
  return b;
}

const std::array<Bary, n_basis>& alt_domain_points_bary() {
  static const auto b = to_bary(alt_domain_points_135());
  return b;
}

}  // namespace wsspline
