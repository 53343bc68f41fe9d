#include "wsspline/ws_split.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <string>

#include "wsspline/error.hpp"

namespace wsspline {

namespace {

BaryInt cross3(const BaryInt& u, const BaryInt& v) {
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

int64_t dot3(const BaryInt& u, const BaryInt& v) {
  return u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
}

int64_t gcd3(const BaryInt& v) {
  return std::gcd(std::gcd(std::abs(v[0]), std::abs(v[1])), std::abs(v[2]));
}

// Scale to gcd 1 with positive coordinate sum (points).
BaryInt normalize_point(BaryInt v) {
  const int64_t g = gcd3(v);
  const int64_t s = v[0] + v[1] + v[2];
  const int64_t f = s < 0 ? -g : g;
  for (auto& x : v) x /= f;
  return v;
}

// Scale to gcd 1 with first nonzero coefficient positive (lines).
BaryInt normalize_line(BaryInt c) {
  const int64_t g = gcd3(c);
  int64_t first = c[0] != 0 ? c[0] : (c[1] != 0 ? c[1] : c[2]);
  const int64_t f = first < 0 ? -g : g;
  for (auto& x : c) x /= f;
  return c;
}

// Strict ordering by real barycentric coordinates, descending.
bool bary_greater(const BaryInt& u, const BaryInt& v) {
  const int64_t su = u[0] + u[1] + u[2];
  const int64_t sv = v[0] + v[1] + v[2];
  for (int k = 0; k < 3; ++k) {
    const int64_t l = u[k] * sv;
    const int64_t r = v[k] * su;
    if (l != r) return l > r;
  }
  return false;
}

void set_bit(SignKey& key, int bit) { key[bit >> 6] |= uint64_t{1} << (bit & 63); }

SplitArrangement build_arrangement(int d) {
  SplitArrangement arr;
  arr.degree = d;
  for (int side = 0; side < 3; ++side) {
    const int a = side;
    const int b = (side + 1) % 3;
    for (int k = 0; k < d; ++k) {
      BaryInt p{0, 0, 0};
      p[a] = d - k;
      p[b] = k;
      arr.boundary_points.push_back(p);
    }
  }
  const int nb = static_cast<int>(arr.boundary_points.size());
  for (int i = 0; i < nb; ++i) {
    for (int j = i + 1; j < nb; ++j) {
      const BaryInt& p = arr.boundary_points[i];
      const BaryInt& q = arr.boundary_points[j];
      bool same_edge = false;
      for (int k = 0; k < 3; ++k) same_edge |= (p[k] == 0 && q[k] == 0);
      if (same_edge) continue;
      arr.lines.push_back(normalize_line(cross3(p, q)));
      arr.line_endpoints.push_back({i, j});
    }
  }
  if (static_cast<int>(arr.lines.size()) > max_split_lines) {
    fail(ErrorKind::invalid_argument, "split degree too large");
  }

  std::vector<BaryInt> all_lines = arr.lines;
  all_lines.push_back({1, 0, 0});
  all_lines.push_back({0, 1, 0});
  all_lines.push_back({0, 0, 1});
  std::vector<BaryInt> verts;
  for (size_t i = 0; i < all_lines.size(); ++i) {
    for (size_t j = i + 1; j < all_lines.size(); ++j) {
      const BaryInt x = cross3(all_lines[i], all_lines[j]);
      if (x[0] + x[1] + x[2] == 0) continue;
      const BaryInt v = normalize_point(x);
      if (v[0] < 0 || v[1] < 0 || v[2] < 0) continue;
      verts.push_back(v);
    }
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());

  // Boundary points first (in boundary order), then the rest by descending coordinates.
  std::vector<BaryInt> ordered;
  for (const BaryInt& p : arr.boundary_points) ordered.push_back(normalize_point(p));
  std::vector<BaryInt> rest;
  for (const BaryInt& v : verts) {
    if (std::find(ordered.begin(), ordered.end(), v) == ordered.end()) rest.push_back(v);
  }
  std::sort(rest.begin(), rest.end(), bary_greater);
  ordered.insert(ordered.end(), rest.begin(), rest.end());
  arr.vertices = std::move(ordered);

  std::map<BaryInt, int> vertex_id;
  for (size_t i = 0; i < arr.vertices.size(); ++i) vertex_id[arr.vertices[i]] = static_cast<int>(i);
  for (const BaryInt& v : arr.vertices) {
    int count = 0;
    for (const BaryInt& c : arr.lines) count += dot3(c, v) == 0 ? 1 : 0;
    arr.vertex_line_count.push_back(count);
  }

  std::vector<std::vector<BaryInt>> polys{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  for (const BaryInt& c : arr.lines) {
    std::vector<std::vector<BaryInt>> next;
    next.reserve(polys.size() * 2);
    for (auto& poly : polys) {
      const size_t n = poly.size();
      std::vector<int64_t> val(n);
      bool pos = false;
      bool neg = false;
      for (size_t k = 0; k < n; ++k) {
        val[k] = dot3(c, poly[k]);
        pos |= val[k] > 0;
        neg |= val[k] < 0;
      }
      if (!(pos && neg)) {
        next.push_back(std::move(poly));
        continue;
      }
      std::vector<BaryInt> lo;
      std::vector<BaryInt> hi;
      for (size_t k = 0; k < n; ++k) {
        const BaryInt& u = poly[k];
        const BaryInt& v = poly[(k + 1) % n];
        const int64_t lu = val[k];
        const int64_t lv = val[(k + 1) % n];
        if (lu >= 0) hi.push_back(u);
        if (lu <= 0) lo.push_back(u);
        if ((lu > 0 && lv < 0) || (lu < 0 && lv > 0)) {
          BaryInt w;
          for (int t = 0; t < 3; ++t) w[t] = lu * v[t] - lv * u[t];
          w = normalize_point(w);
          hi.push_back(w);
          lo.push_back(w);
        }
      }
      next.push_back(std::move(hi));
      next.push_back(std::move(lo));
    }
    polys = std::move(next);
  }

  for (const auto& poly : polys) {
    std::vector<int> loop;
    for (const BaryInt& v : poly) {
      auto it = vertex_id.find(v);
      if (it == vertex_id.end()) fail(ErrorKind::numerical_singularity, "cell vertex missing from arrangement");
      loop.push_back(it->second);
    }
    SignKey key{0, 0, 0};
    for (size_t l = 0; l < arr.lines.size(); ++l) {
      int64_t s = 0;
      for (const BaryInt& v : poly) {
        s = dot3(arr.lines[l], v);
        if (s != 0) break;
      }
      if (s > 0) set_bit(key, static_cast<int>(l));
    }
    arr.cells.push_back(std::move(loop));
    arr.cell_signs.push_back(key);
  }
  return arr;
}

Point to_point(const Triangle& tri, const BaryInt& v) {
  const double s = static_cast<double>(v[0] + v[1] + v[2]);
  return tri.from_bary({v[0] / s, v[1] / s, v[2] / s});
}

}  // namespace

size_t SignKeyHash::operator()(const SignKey& k) const noexcept {
  uint64_t h = k[0] * 0x9E3779B97F4A7C15ull;
  h ^= (k[1] + 0x632BE59BD9B4E019ull + (h << 6) + (h >> 2));
  h ^= (k[2] + 0x85EBCA77C2B2AE63ull + (h << 6) + (h >> 2));
  return static_cast<size_t>(h);
}

const SplitArrangement& split_arrangement(int d) {
  if (d < 1) fail(ErrorKind::invalid_argument, "split degree must be at least 1");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<SplitArrangement>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[d];
  if (!slot) slot = std::make_unique<SplitArrangement>(build_arrangement(d));
  return *slot;
}

WsSplit::WsSplit(const Triangle& tri, int d) : tri_(tri), arr_(&split_arrangement(d)) {
  tie_tol_ = 1e-12 * tri_.diameter();
  for (const BaryInt& p : arr_->boundary_points) boundary_points_.push_back(to_point(tri_, p));
  for (const BaryInt& v : arr_->vertices) vertices_.push_back(to_point(tri_, v));

  const auto& g = tri_.bary_gradients();
  for (const BaryInt& c : arr_->lines) {
    double a = 0.0;
    double b = 0.0;
    double cc = 0.0;
    for (int k = 0; k < 3; ++k) {
      const double ck = static_cast<double>(c[k]) / d;
      const Point& base = tri_[(k + 1) % 3];
      a += ck * g[k].x;
      b += ck * g[k].y;
      cc -= ck * (g[k].x * base.x + g[k].y * base.y);
    }
    const LineEq line = LineEq::normalized(a, b, cc);
    lines_.push_back(line);
    flips_.push_back(line.a * a + line.b * b > 0.0 ? 1 : -1);
  }

  for (size_t cell = 0; cell < arr_->cells.size(); ++cell) {
    SignKey key{0, 0, 0};
    for (size_t l = 0; l < lines_.size(); ++l) {
      const bool exact_pos = (arr_->cell_signs[cell][l >> 6] >> (l & 63)) & 1u;
      if (exact_pos == (flips_[l] > 0)) set_bit(key, static_cast<int>(l));
    }
    keys_.push_back(key);
    key_to_cell_.emplace(key, static_cast<int>(cell));
    double b1 = 0.0;
    double b2 = 0.0;
    double b3 = 0.0;
    for (int vid : arr_->cells[cell]) {
      const BaryInt& v = arr_->vertices[vid];
      const double s = static_cast<double>(v[0] + v[1] + v[2]);
      b1 += v[0] / s;
      b2 += v[1] / s;
      b3 += v[2] / s;
    }
    const double n = static_cast<double>(arr_->cells[cell].size());
    interior_points_.push_back(tri_.from_bary({b1 / n, b2 / n, b3 / n}));
  }
}

SignKey WsSplit::sign_key(Point p) const {
  SignKey key{0, 0, 0};
  for (size_t l = 0; l < lines_.size(); ++l) {
    if (lines_[l](p) >= -tie_tol_) set_bit(key, static_cast<int>(l));
  }
  return key;
}

int WsSplit::cell_of_key(const SignKey& key) const {
  auto it = key_to_cell_.find(key);
  return it == key_to_cell_.end() ? -1 : it->second;
}

int WsSplit::fallback_cell(Point p) const {
  for (size_t cell = 0; cell < keys_.size(); ++cell) {
    bool inside = true;
    for (size_t l = 0; l < lines_.size() && inside; ++l) {
      const bool pos = (keys_[cell][l >> 6] >> (l & 63)) & 1u;
      const double v = lines_[l](p);
      inside = pos ? v >= -tie_tol_ : v <= tie_tol_;
    }
    if (inside) return static_cast<int>(cell);
  }
  fail(ErrorKind::numerical_singularity, "no split cell contains the point");
}

int WsSplit::locate(Point p) const {
  if (!tri_.contains(p, 1e-12)) fail(ErrorKind::out_of_domain, "point outside macro-triangle");
  const int cell = cell_of_key(sign_key(p));
  return cell >= 0 ? cell : fallback_cell(p);
}

CrossCutStats WsSplit::crosscut_stats() const {
  CrossCutStats stats;
  stats.m = static_cast<int>(lines_.size());
  for (size_t i = 0; i < arr_->vertices.size(); ++i) {
    const BaryInt& v = arr_->vertices[i];
    if (v[0] == 0 || v[1] == 0 || v[2] == 0) continue;
    const int m = arr_->vertex_line_count[i];
    if (m >= 2) stats.interior_vertices.push_back({vertices_[i], m});
  }
  return stats;
}

int64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

int64_t crosscut_dimension(int d, int r, const CrossCutStats& stats) {
  if (d < 0 || r < 0 || (r > d - 1 && !(r == 0 && d == 0))) {
    fail(ErrorKind::invalid_argument,
         "crosscut_dimension requires 0 <= r <= d-1 (d=" + std::to_string(d) + ", r=" + std::to_string(r) + ")");
  }
  if (stats.m < 0) fail(ErrorKind::invalid_argument, "negative cross-cut count");
  int64_t dim = binomial(d + 2, 2) + stats.m * binomial(d - r + 1, 2);
  for (const auto& v : stats.interior_vertices) {
    const int l = v.multiplicity;
    if (l < 2) fail(ErrorKind::invalid_argument, "interior vertex multiplicity must be at least 2");
    const int64_t fl = (r + 1) / (l - 1);
    const int64_t first = std::max<int64_t>(0, d - r - fl);
    const int64_t second = static_cast<int64_t>(l - 1) * d - static_cast<int64_t>(l + 1) * r + (l - 3) + (l - 1) * fl;
    dim += first * second / 2;
  }
  return dim;
}

int64_t ws_dimension(int d) {
  if (d < 1) fail(ErrorKind::invalid_argument, "degree must be at least 1");
  return binomial(d + 2, 2) + 3 * static_cast<int64_t>(d) * (d - 1);
}

}  // namespace wsspline
