#pragma once

#include <array>

#include "wsspline/geometry.hpp"

namespace wsspline {

inline constexpr int n_basis = 28;
inline constexpr int n_knot_points = 9;

/// The nine knot points of a macro-triangle: three vertices and the
/// edge points p_{k,l} = (2/3) p_l + (1/3) p_m, {k,l,m} = {1,2,3}.
enum KnotPoint : int { kp1, kp2, kp3, kp12, kp13, kp21, kp23, kp31, kp32 };

/// Id of p_{k,l} for 0-based vertex labels k != l.
int edge_knot_id(int k, int l);

/// Barycentric coordinates of each knot point, scaled by 3.
const std::array<std::array<int, 3>, n_knot_points>& knot_point_bary3();

/// The six knots of each basis function (ids into the nine knot points,
/// repeated for multiplicity). Index i holds basis function i+1.
const std::array<std::array<int, 6>, n_basis>& knot_sets();

/// Scaling factor of each basis function as a multiple of |triangle| / 15.
const std::array<double, n_basis>& weight_factors();

/// Vertex relabeling: the relabeled triangle has vertex k equal to the
/// original vertex sigma[k] (0-based).
using VertexPerm = std::array<int, 3>;

int permute_knot_point(int id, const VertexPerm& sigma);

/// Basis index map pi with B'_i = B_{pi[i]} on the relabeled triangle.
/// Coefficients transform the same way: b'_i = b_{pi[i]}.
std::array<int, n_basis> basis_permutation(const VertexPerm& sigma);

/// All six vertex permutations.
const std::array<VertexPerm, 6>& all_vertex_perms();

/// Domain points xi_i and alternative domain points, as barycentric triples.
const std::array<Bary, n_basis>& domain_points_bary();
const std::array<Bary, n_basis>& alt_domain_points_bary();

/// Numerators over 135 of the domain points (exact form).
const std::array<std::array<int, 3>, n_basis>& domain_points_135();
const std::array<std::array<int, 3>, n_basis>& alt_domain_points_135();

}  // namespace wsspline
