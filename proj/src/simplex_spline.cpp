#include "wsspline/simplex_spline.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <unordered_map>

#include "wsspline/error.hpp"

namespace wsspline {

namespace {

constexpr int max_distinct = 16;

// Recurrence state: multiplicities over the distinct knots of the top-level set.
struct Recursion {
  std::vector<Point> pts;
  Point ref;
  Point x;
  std::unordered_map<uint64_t, double> memo;

  uint64_t encode(const std::array<int, max_distinct>& mult) const {
    uint64_t key = 0;
    for (size_t i = 0; i < pts.size(); ++i) key = key * 8 + static_cast<uint64_t>(mult[i]);
    return key;
  }

  // First affinely independent triple in sequence order; false if none.
  bool triple(const std::array<int, max_distinct>& mult, std::array<int, 3>& t) const {
    std::vector<int> ids;
    for (size_t i = 0; i < pts.size(); ++i) {
      if (mult[i] > 0) ids.push_back(static_cast<int>(i));
    }
    if (ids.size() < 3) return false;
    const Point a = pts[ids[0]];
    const double h = norm(pts[ids[1]] - a);
    for (size_t j = 2; j < ids.size(); ++j) {
      const double o = orient2d(a, pts[ids[1]], pts[ids[j]]);
      if (std::abs(o) > 1e-14 * h * std::max(h, norm(pts[ids[j]] - a))) {
        t = {ids[0], ids[1], ids[static_cast<size_t>(j)]};
        return true;
      }
    }
    return false;
  }

  double leaf(const std::array<int, max_distinct>& mult) const {
    std::array<int, 3> t;
    if (!triple(mult, t)) return 0.0;
    const Point a = pts[t[0]];
    const Point b = pts[t[1]];
    const Point c = pts[t[2]];
    const Bary l = bary_coords(a, b, c, ref);
    if (l.b1 < 0.0 || l.b2 < 0.0 || l.b3 < 0.0) return 0.0;
    return 2.0 / std::abs(orient2d(a, b, c));
  }

  double value(std::array<int, max_distinct>& mult, int n) {
    // n = number of knots; degree n - 3.
    const uint64_t key = encode(mult);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    double result = 0.0;
    if (n == 3) {
      result = leaf(mult);
    } else {
      std::array<int, 3> t;
      if (triple(mult, t)) {
        const Bary b = bary_coords(pts[t[0]], pts[t[1]], pts[t[2]], x);
        const double f = static_cast<double>(n - 1) / static_cast<double>(n - 3);
        double acc = 0.0;
        for (int k = 0; k < 3; ++k) {
          if (b[k] == 0.0) continue;
          --mult[t[k]];
          acc += b[k] * value(mult, n - 1);
          ++mult[t[k]];
        }
        result = f * acc;
      }
    }
    memo.emplace(key, result);
    return result;
  }
};

struct Prepared {
  std::vector<Point> pts;
  std::array<int, max_distinct> mult{};
  int n = 0;
};

Prepared prepare(const KnotMultiset& knots) {
  Prepared pr;
  for (const Point& k : knots.knots()) {
    auto it = std::find(pr.pts.begin(), pr.pts.end(), k);
    if (it == pr.pts.end()) {
      if (pr.pts.size() == max_distinct) fail(ErrorKind::invalid_argument, "too many distinct knots");
      pr.pts.push_back(k);
      pr.mult[pr.pts.size() - 1] = 1;
    } else {
      if (++pr.mult[static_cast<size_t>(it - pr.pts.begin())] >= 8) {
        fail(ErrorKind::invalid_argument, "knot multiplicity above 7");
      }
    }
  }
  pr.n = static_cast<int>(knots.knots().size());
  // Lexicographic order makes the triple choice, hence rounding, independent of knot order.
  std::vector<size_t> order(pr.pts.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return pr.pts[a] < pr.pts[b]; });
  Prepared sorted;
  sorted.n = pr.n;
  for (size_t i = 0; i < order.size(); ++i) {
    sorted.pts.push_back(pr.pts[order[i]]);
    sorted.mult[i] = pr.mult[order[i]];
  }
  return sorted;
}

double piece_value(const Prepared& pr, std::array<int, max_distinct> mult, int n, Point ref, Point x) {
  Recursion r{pr.pts, ref, x, {}};
  return r.value(mult, n);
}

// Resolves the evaluation point under the on-line policy.
Point resolve(const KnotMultiset& knots, Point p, OnLinePolicy policy) {
  const double tol = 1e-12 * knots.scale();
  if (!on_knot_line(knots, p, tol)) return p;
  if (policy == OnLinePolicy::error) fail(ErrorKind::on_knot_line, "point lies on a knot line");
  // Move along (1, t) with t small enough that every line through p with
  // normal (a, b), a > 0 or (a = 0, b > 0), ends up on its positive side.
  const auto& k = knots.knots();
  double t = 0.5;
  for (size_t i = 0; i < k.size(); ++i) {
    for (size_t j = i + 1; j < k.size(); ++j) {
      if (k[i] == k[j]) continue;
      const LineEq line = LineEq::through(k[i], k[j]);
      if (std::abs(line(p)) > tol) continue;
      if (line.a > 0.0 && line.b < 0.0) t = std::min(t, 0.5 * line.a / -line.b);
    }
  }
  const double step = 1e-9 * knots.scale() / std::hypot(1.0, t);
  Point q{p.x + step, p.y + step * t};
  if (on_knot_line(knots, q, 0.0)) {
    fail(ErrorKind::on_knot_line, "perturbation did not leave the knot lines");
  }
  return q;
}

// Coefficients a with sum a_i xi_i = dir, sum a_i = 0 on the first triple.
bool direction_coeffs(const Recursion& r, const std::array<int, max_distinct>& mult, Vec2 dir,
                      std::array<int, 3>& t, Bary& a) {
  if (!r.triple(mult, t)) return false;
  const Point o = r.pts[t[0]];
  const Bary b = bary_coords(o, r.pts[t[1]], r.pts[t[2]], o + dir);
  a = {b.b1 - 1.0, b.b2, b.b3};
  return true;
}

}  // namespace

KnotMultiset::KnotMultiset(std::vector<Point> knots) : knots_(std::move(knots)) {
  if (knots_.size() < 3) fail(ErrorKind::invalid_argument, "a simplex spline needs at least 3 knots");
  for (const Point& p : knots_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) fail(ErrorKind::invalid_argument, "knot is not finite");
  }
  for (size_t i = 0; i < knots_.size(); ++i) {
    for (size_t j = i + 1; j < knots_.size(); ++j) scale_ = std::max(scale_, norm(knots_[i] - knots_[j]));
  }
  bool full = false;
  for (size_t i = 0; i < knots_.size() && !full; ++i) {
    for (size_t j = i + 1; j < knots_.size() && !full; ++j) {
      for (size_t k = j + 1; k < knots_.size() && !full; ++k) {
        full = std::abs(orient2d(knots_[i], knots_[j], knots_[k])) > 1e-14 * scale_ * scale_;
      }
    }
  }
  if (!full) fail(ErrorKind::degenerate, "knot hull has zero area");
}

bool on_knot_line(const KnotMultiset& knots, Point p, double tol) {
  const auto& k = knots.knots();
  for (size_t i = 0; i < k.size(); ++i) {
    for (size_t j = i + 1; j < k.size(); ++j) {
      if (k[i] == k[j]) continue;
      if (std::abs(LineEq::through(k[i], k[j])(p)) <= tol) return true;
    }
  }
  return false;
}

double eval_m_piece(const KnotMultiset& knots, Point ref, Point p) {
  const Prepared pr = prepare(knots);
  return piece_value(pr, pr.mult, pr.n, ref, p);
}

double eval_m(const KnotMultiset& knots, Point p, OnLinePolicy policy) {
  const Point q = resolve(knots, p, policy);
  return eval_m_piece(knots, q, q);
}

double eval_m_derivative(const KnotMultiset& knots, Point p, Vec2 dir, OnLinePolicy policy) {
  if (dir.x == 0.0 && dir.y == 0.0) return 0.0;
  const Point q = resolve(knots, p, policy);
  const Prepared pr = prepare(knots);
  Recursion r{pr.pts, q, q, {}};
  std::array<int, max_distinct> mult = pr.mult;
  std::array<int, 3> t;
  Bary a;
  if (!direction_coeffs(r, mult, dir, t, a)) return 0.0;
  double acc = 0.0;
  for (int k = 0; k < 3; ++k) {
    if (a[k] == 0.0) continue;
    --mult[t[k]];
    acc += a[k] * r.value(mult, pr.n - 1);
    ++mult[t[k]];
  }
  return (pr.n - 1) * acc;
}

double eval_m_second_derivative(const KnotMultiset& knots, Point p, Vec2 u, Vec2 v, OnLinePolicy policy) {
  if ((u.x == 0.0 && u.y == 0.0) || (v.x == 0.0 && v.y == 0.0)) return 0.0;
  if (knots.degree() < 2) return 0.0;
  const Point q = resolve(knots, p, policy);
  const Prepared pr = prepare(knots);
  Recursion r{pr.pts, q, q, {}};
  std::array<int, max_distinct> mult = pr.mult;
  std::array<int, 3> t;
  Bary a;
  if (!direction_coeffs(r, mult, u, t, a)) return 0.0;
  double acc = 0.0;
  for (int k = 0; k < 3; ++k) {
    if (a[k] == 0.0) continue;
    --mult[t[k]];
    std::array<int, 3> s;
    Bary c;
    if (direction_coeffs(r, mult, v, s, c)) {
      double inner = 0.0;
      for (int l = 0; l < 3; ++l) {
        if (c[l] == 0.0) continue;
        --mult[s[l]];
        inner += c[l] * r.value(mult, pr.n - 2);
        ++mult[s[l]];
      }
      acc += a[k] * (pr.n - 2) * inner;
    }
    ++mult[t[k]];
  }
  return (pr.n - 1) * acc;
}

std::vector<std::pair<double, KnotMultiset>> insert_knot(const KnotMultiset& knots, Point y) {
  const auto& k = knots.knots();
  std::array<size_t, 3> t{0, 0, 0};
  bool found = false;
  for (size_t j = 1; j < k.size() && !found; ++j) {
    if (k[j] == k[0]) continue;
    for (size_t l = j + 1; l < k.size() && !found; ++l) {
      if (std::abs(orient2d(k[0], k[j], k[l])) > 1e-14 * knots.scale() * knots.scale()) {
        t = {0, j, l};
        found = true;
      }
    }
  }
  if (!found) fail(ErrorKind::degenerate, "knot hull has zero area");
  const Bary c = bary_coords(k[t[0]], k[t[1]], k[t[2]], y);
  std::vector<std::pair<double, KnotMultiset>> out;
  for (int i = 0; i < 3; ++i) {
    if (c[i] == 0.0) continue;
    std::vector<Point> child = k;
    child[t[i]] = y;
    out.emplace_back(c[i], KnotMultiset(std::move(child)));
  }
  return out;
}

}  // namespace wsspline
