#include "subtraj/simplify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "subtraj/frechet.hpp"

namespace subtraj {

namespace {

PolygonalCurve range_curve(const PolygonalCurve& p, std::size_t lo,
                           std::size_t hi) {
  std::vector<double> coords;
  std::vector<double> params;
  coords.reserve((hi - lo + 1) * p.dim());
  for (std::size_t i = lo; i <= hi; ++i) {
    coords.insert(coords.end(), p.vertex(i).begin(), p.vertex(i).end());
    params.push_back(static_cast<double>(i - lo));
  }
  for (auto& s : params) s /= static_cast<double>(hi - lo);
  return PolygonalCurve::raw(std::move(coords), p.dim(), std::move(params));
}

PolygonalCurve two_point_curve(PointView a, PointView b) {
  std::vector<double> coords(a.begin(), a.end());
  coords.insert(coords.end(), b.begin(), b.end());
  return PolygonalCurve(std::move(coords), a.size());
}

bool shortcut_ok(const PolygonalCurve& p, std::size_t lo, std::size_t hi,
                 double eps) {
  if (hi == lo + 1) return true;
  const PolygonalCurve seg = two_point_curve(p.vertex(lo), p.vertex(hi));
  return decide_frechet(range_curve(p, lo, hi), seg, eps);
}

// ----- minimum enclosing ball (exact 1-simplification) -----

struct Ball {
  Point center;
  double radius2 = -1.0;
  bool contains(PointView q) const {
    if (radius2 < 0) return false;
    return dist2(center, q) <= radius2 * (1.0 + 1e-12) + 1e-24;
  }
};

// Circumball of up to d+1 affinely independent support points.
Ball ball_of_support(const std::vector<PointView>& support, std::size_t d) {
  Ball b;
  if (support.empty()) return b;
  const PointView q0 = support.front();
  const std::size_t k = support.size() - 1;
  if (k == 0) {
    b.center.assign(q0.begin(), q0.end());
    b.radius2 = 0.0;
    return b;
  }
  // center = q0 + V mu with V = rows (q_i - q0); solve (V V^T) mu = rhs,
  // rhs_i = ||q_i - q0||^2 / 2.
  std::vector<std::vector<double>> v(k, std::vector<double>(d));
  std::vector<double> rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    double n2 = 0.0;
    for (std::size_t c = 0; c < d; ++c) {
      v[i][c] = support[i + 1][c] - q0[c];
      n2 += v[i][c] * v[i][c];
    }
    rhs[i] = 0.5 * n2;
  }
  std::vector<std::vector<double>> g(k, std::vector<double>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      double s = 0.0;
      for (std::size_t c = 0; c < d; ++c) s += v[i][c] * v[j][c];
      g[i][j] = s;
    }
  // Gaussian elimination with partial pivoting.
  std::vector<double> mu(rhs);
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < k; ++r)
      if (std::abs(g[r][col]) > std::abs(g[piv][col])) piv = r;
    if (std::abs(g[piv][col]) < 1e-14) return b;  // degenerate support
    std::swap(g[piv], g[col]);
    std::swap(mu[piv], mu[col]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col) continue;
      const double f = g[r][col] / g[col][col];
      for (std::size_t c = col; c < k; ++c) g[r][c] -= f * g[col][c];
      mu[r] -= f * mu[col];
    }
  }
  for (std::size_t i = 0; i < k; ++i) mu[i] /= g[i][i];
  b.center.assign(q0.begin(), q0.end());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t c = 0; c < d; ++c) b.center[c] += mu[i] * v[i][c];
  b.radius2 = dist2(b.center, q0);
  return b;
}

Ball welzl(std::vector<PointView>& pts, std::size_t n,
           std::vector<PointView>& support, std::size_t d) {
  if (n == 0 || support.size() == d + 1) return ball_of_support(support, d);
  Ball b = welzl(pts, n - 1, support, d);
  const PointView q = pts[n - 1];
  if (b.contains(q)) return b;
  support.push_back(q);
  b = welzl(pts, n - 1, support, d);
  support.pop_back();
  return b;
}

Point enclosing_center(const PolygonalCurve& p) {
  std::vector<PointView> pts;
  pts.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) pts.push_back(p.vertex(i));
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
  std::shuffle(pts.begin(), pts.end(), rng);
  std::vector<PointView> support;
  const Ball b = welzl(pts, pts.size(), support, p.dim());
  return b.center;
}

}  // namespace

Simplification agarwal_simplify(const PolygonalCurve& p, double eps,
                                std::size_t max_vertices) {
  if (eps < 0) throw std::invalid_argument("eps must be non-negative");
  if (max_vertices != kUncapped && max_vertices < 2)
    throw std::invalid_argument("vertex cap must be at least 2");
  Simplification out;
  const std::size_t n = p.size();
  std::vector<std::size_t> picked{0};
  std::size_t cur = 0;
  while (cur + 1 < n) {
    if (max_vertices != kUncapped && picked.size() >= max_vertices) {
      out.completed = false;
      break;
    }
    const std::size_t rmax = n - 1 - cur;
    std::size_t lo = 1;  // an edge is always within eps of itself
    while (2 * lo <= rmax && shortcut_ok(p, cur, cur + 2 * lo, eps)) lo *= 2;
    // bracket: lo feasible; hi is the last candidate (2*lo failed, or the
    // curve end whose feasibility is unknown)
    const std::size_t hi0 = 2 * lo > rmax ? rmax : 2 * lo - 1;
    std::size_t hi = hi0;
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo + 1) / 2;
      if (shortcut_ok(p, cur, cur + mid, eps))
        lo = mid;
      else
        hi = mid - 1;
    }
    cur += lo;
    picked.push_back(cur);
  }
  std::vector<double> coords;
  coords.reserve(picked.size() * p.dim());
  out.anchors.reserve(picked.size());
  for (const std::size_t idx : picked) {
    coords.insert(coords.end(), p.vertex(idx).begin(), p.vertex(idx).end());
    out.anchors.push_back(p.param(idx));
  }
  std::vector<double> params;
  params.reserve(picked.size());
  if (picked.size() == 1) {
    params.push_back(0.0);
  } else {
    for (std::size_t k = 0; k < picked.size(); ++k)
      params.push_back(static_cast<double>(k) /
                       static_cast<double>(picked.size() - 1));
  }
  out.curve = PolygonalCurve::raw(std::move(coords), p.dim(), std::move(params));
  return out;
}

PolygonalCurve ell_simplification(const PolygonalCurve& p, std::size_t ell,
                                  double tol) {
  if (ell < 1) throw std::invalid_argument("ell must be at least 1");
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
  if (p.size() <= ell) return p;
  if (ell == 1) {
    return PolygonalCurve(enclosing_center(p), p.dim());
  }
  // At eps = vertex diameter every shortcut is feasible, so the capped
  // greedy completes with two vertices.
  double hi = p.max_vertex_distance(p);
  double lo = 0.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (agarwal_simplify(p, mid, ell).completed)
      hi = mid;
    else
      lo = mid;
  }
  Simplification s = agarwal_simplify(p, hi, ell);
  return s.curve;
}

namespace {

// Per-edge breakpoint ranges of a stored simplification. A breakpoint
// belongs to the first edge (in build orientation) whose far anchor
// reaches its parameter, which sends anchor ties to the earlier edge.
void fill_edge_breakpoints(FamilyEntry& entry, const BreakpointSet& bps) {
  const std::size_t edges = entry.simp.curve.num_edges();
  entry.edge_first_bp.assign(edges, 0);
  entry.edge_last_bp.assign(edges, 0);
  if (edges == 0) return;
  const double eps = geom_epsilon();
  const auto& anchors = entry.simp.anchors;
  const bool increasing = anchors.front() <= anchors.back();
  for (std::size_t w = 1; w <= bps.count(); ++w) {
    const double t = bps.value(w);
    const bool outside =
        increasing ? (t < anchors.front() - eps || t > anchors.back() + eps)
                   : (t > anchors.front() + eps || t < anchors.back() - eps);
    if (outside) continue;
    std::size_t e = 0;
    while (e + 1 < edges &&
           (increasing ? t > anchors[e + 1] + eps : t < anchors[e + 1] - eps))
      ++e;
    if (entry.edge_first_bp[e] == 0 || w < entry.edge_first_bp[e])
      entry.edge_first_bp[e] = w;
    if (w > entry.edge_last_bp[e]) entry.edge_last_bp[e] = w;
  }
}

}  // namespace

SigmaFamily build_sigma_family(const PolygonalCurve& p, const BreakpointSet& bps,
                               double delta, std::size_t ell) {
  if (!(delta > 0)) throw std::invalid_argument("delta must be positive");
  if (ell < 1) throw std::invalid_argument("ell must be at least 1");
  SigmaFamily fam;
  fam.delta = delta;
  fam.ell = ell;
  fam.bps = bps;
  const std::size_t m = bps.count();
  const double eps = geom_epsilon();
  const double four_delta = 4.0 * delta;
  const std::size_t cap = 2 * ell;
  fam.plus.resize(m);
  fam.minus.resize(m);
  fam.circ.resize(m - 1);
  fam.y_limit.assign(m, 0);
  fam.x_limit.assign(m, 0);

  parallel_for(m, [&](std::size_t idx) {
    const std::size_t z = idx + 1;
    const double tz = bps.value(z);
    // forward family on P[t_z, 1]
    {
      FamilyEntry& entry = fam.plus[idx];
      const PolygonalCurve src = p.subcurve(tz, 1.0);
      entry.simp = agarwal_simplify(src, four_delta, cap);
      // map vertex anchors (parameters of src) back to original parameters
      for (auto& a : entry.simp.anchors) a = tz + a * (1.0 - tz);
      if (!entry.simp.anchors.empty()) entry.simp.anchors.front() = tz;
      if (entry.simp.completed && !entry.simp.anchors.empty())
        entry.simp.anchors.back() = 1.0;
      if (entry.simp.completed) {
        fam.y_limit[idx] = m;
      } else {
        const double capped_at = entry.simp.anchors.back();
        std::size_t y = z;
        for (std::size_t w = z; w <= m; ++w)
          if (bps.value(w) <= capped_at + eps) y = w;
        fam.y_limit[idx] = y;
      }
      fill_edge_breakpoints(entry, bps);
    }
    // backward family on reversed P[0, t_z]
    {
      FamilyEntry& entry = fam.minus[idx];
      const PolygonalCurve src = p.subcurve(0.0, tz).reversed();
      entry.simp = agarwal_simplify(src, four_delta, cap);
      // src parameter u corresponds to original parameter t_z (1 - u)
      for (auto& a : entry.simp.anchors) a = tz * (1.0 - a);
      if (!entry.simp.anchors.empty()) entry.simp.anchors.front() = tz;
      if (entry.simp.completed && !entry.simp.anchors.empty())
        entry.simp.anchors.back() = 0.0;
      if (entry.simp.completed) {
        fam.x_limit[idx] = 1;
      } else {
        const double capped_at = entry.simp.anchors.back();
        std::size_t x = z;
        for (std::size_t w = z; w >= 1; --w) {
          if (bps.value(w) >= capped_at - eps) x = w;
          if (w == 1) break;
        }
        fam.x_limit[idx] = x;
      }
      fill_edge_breakpoints(entry, bps);
    }
    // piece simplification
    if (z < m) {
      const PolygonalCurve piece = p.subcurve(tz, bps.value(z + 1));
      Simplification s = agarwal_simplify(piece, four_delta, cap);
      if (s.completed) fam.circ[idx] = std::move(s.curve);
    }
  });
  return fam;
}

namespace {

// Prefix of a stored simplification up to the last point, on the edge
// corresponding to target_param, that meets the ball of radius 4*delta
// around p(target_param). Returns nullopt when no edge/ball intersection
// exists (numerically out of certificate range).
std::optional<PolygonalCurve> extract_prefix(const FamilyEntry& entry,
                                             const PolygonalCurve& p,
                                             double target_param,
                                             double four_delta,
                                             bool increasing) {
  const PolygonalCurve& c = entry.simp.curve;
  const auto& anchors = entry.simp.anchors;
  const double eps = geom_epsilon();
  const Point target = p.point_at(target_param);
  if (c.size() == 1 || std::abs(target_param - anchors.front()) <= eps) {
    return PolygonalCurve(Point(c.vertex(0).begin(), c.vertex(0).end()),
                          c.dim());
  }
  // binary search for the edge whose anchor span contains target_param,
  // ties to the earlier edge
  std::size_t lo = 0, hi = c.num_edges() - 1;
  auto after_edge = [&](std::size_t e) {
    // true when target lies strictly beyond edge e in build orientation
    return increasing ? target_param > anchors[e + 1] + eps
                      : target_param < anchors[e + 1] - eps;
  };
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (after_edge(mid))
      lo = mid + 1;
    else
      hi = mid;
  }
  const std::size_t e = lo;
  const Interval hit = ball_segment_intersection(target, c.vertex(e),
                                                 c.vertex(e + 1), four_delta);
  if (hit.empty()) return std::nullopt;
  const double cut = hit.hi;
  std::vector<double> coords;
  for (std::size_t k = 0; k <= e; ++k)
    coords.insert(coords.end(), c.vertex(k).begin(), c.vertex(k).end());
  PointView a = c.vertex(e);
  PointView b = c.vertex(e + 1);
  Point end(c.dim());
  for (std::size_t k = 0; k < c.dim(); ++k) end[k] = a[k] + cut * (b[k] - a[k]);
  coords.insert(coords.end(), end.begin(), end.end());
  return PolygonalCurve(std::move(coords), c.dim());
}

}  // namespace

std::optional<PolygonalCurve> extract_sigma_plus(const SigmaFamily& family,
                                                 const PolygonalCurve& p,
                                                 std::size_t i, std::size_t j) {
  if (i >= j) throw std::invalid_argument("extract_sigma_plus requires i < j");
  if (j > family.y_limit[i - 1]) return std::nullopt;
  return extract_prefix(family.plus[i - 1], p, family.bps.value(j),
                        4.0 * family.delta, /*increasing=*/true);
}

std::optional<PolygonalCurve> extract_sigma_minus(const SigmaFamily& family,
                                                  const PolygonalCurve& p,
                                                  std::size_t x, std::size_t z) {
  if (x > z) throw std::invalid_argument("extract_sigma_minus requires x <= z");
  if (x < family.x_limit[z - 1]) return std::nullopt;
  auto prefix = extract_prefix(family.minus[z - 1], p, family.bps.value(x),
                               4.0 * family.delta, /*increasing=*/false);
  if (!prefix) return std::nullopt;
  return prefix->reversed();
}

}  // namespace subtraj
