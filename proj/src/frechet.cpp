#include "subtraj/frechet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace subtraj {

namespace {

// Feasible interval {t in [0,1] : ||A + t (B - A) - c|| <= r}, with the
// global epsilon added to r so that tangent touching counts as feasible.
Interval point_segment_interval(PointView c, PointView a, PointView b,
                                double r) {
  const double reff = r + geom_epsilon();
  const std::size_t d = c.size();
  double qa = 0.0, qb = 0.0, qc = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    const double w = b[k] - a[k];
    const double e = a[k] - c[k];
    qa += w * w;
    qb += 2.0 * w * e;
    qc += e * e;
  }
  qc -= reff * reff;
  if (qa < 1e-300) {
    return qc <= 0.0 ? Interval::full() : Interval{};
  }
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc < 0.0) return Interval{};
  const double sq = std::sqrt(disc);
  double lo = (-qb - sq) / (2.0 * qa);
  double hi = (-qb + sq) / (2.0 * qa);
  lo = std::max(lo, 0.0);
  hi = std::min(hi, 1.0);
  if (lo > hi) return Interval{};
  return Interval{lo, hi};
}

bool within(PointView a, PointView b, double r) {
  const double reff = r + geom_epsilon();
  return dist2(a, b) <= reff * reff;
}

constexpr double kTouch = 1.0 - 1e-12;

// Max pointwise distance from a point to a curve; attained at vertices.
double point_curve_distance(PointView x, const PolygonalCurve& c) {
  double best = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i)
    best = std::max(best, dist2(x, c.vertex(i)));
  return std::sqrt(best);
}

}  // namespace

FreeSpaceDiagram::FreeSpaceDiagram(const PolygonalCurve& h,
                                   const PolygonalCurve& v, double delta)
    : nh_(h.size()), nv_(v.size()), delta_(delta) {
  if (h.empty() || v.empty())
    throw std::invalid_argument("free space needs non-empty curves");
  if (delta < 0) throw std::invalid_argument("delta must be non-negative");
  if (nv_ >= 2) {
    vert_.resize(nh_ * (nv_ - 1));
    for (std::size_t i = 0; i < nh_; ++i)
      for (std::size_t j = 0; j + 1 < nv_; ++j)
        vert_[i * (nv_ - 1) + j] = point_segment_interval(
            h.vertex(i), v.vertex(j), v.vertex(j + 1), delta);
  }
  if (nh_ >= 2) {
    horz_.resize((nh_ - 1) * nv_);
    for (std::size_t i = 0; i + 1 < nh_; ++i)
      for (std::size_t j = 0; j < nv_; ++j)
        horz_[i * nv_ + j] = point_segment_interval(
            v.vertex(j), h.vertex(i), h.vertex(i + 1), delta);
  }
}

FreeSpaceDiagram free_space(const PolygonalCurve& h, const PolygonalCurve& v,
                            double delta) {
  return FreeSpaceDiagram(h, v, delta);
}

Interval ball_segment_intersection(PointView center, PointView a, PointView b,
                                   double r) {
  return point_segment_interval(center, a, b, r);
}

ReachabilityFront sweep_reachability(const FreeSpaceDiagram& fd,
                                     std::size_t start_col) {
  const std::size_t nh = fd.h_vertices();
  const std::size_t nv = fd.v_vertices();
  if (nh < 2 || nv < 2) throw std::invalid_argument("degenerate diagram");
  const std::size_t cols = nh - 1;
  const std::size_t rows = nv - 1;

  ReachabilityFront out;
  out.top.assign(cols, Interval{});

  // Start corner (x_{start_col}, 0) must itself lie in free space.
  const bool corner_free =
      (start_col < cols && fd.horizontal(start_col, 0).contains(0.0)) ||
      (start_col > 0 && !fd.horizontal(start_col - 1, 0).empty() &&
       fd.horizontal(start_col - 1, 0).hi >= kTouch);
  if (!corner_free) return out;

  // Bottom boundary: walk right from the start corner while the bottom grid
  // line stays free through shared corners.
  std::vector<Interval> reach_h(cols, Interval{});
  for (std::size_t i = start_col; i < cols; ++i) {
    if (i > start_col &&
        (reach_h[i - 1].empty() || reach_h[i - 1].hi < kTouch))
      break;
    const Interval f = fd.horizontal(i, 0);
    if (!f.contains(0.0)) break;
    reach_h[i] = Interval{0.0, f.hi};
  }

  // Start column: climb the vertical line from the corner.
  std::vector<Interval> seed_v(rows, Interval{});
  {
    bool open = true;
    for (std::size_t j = 0; j < rows; ++j) {
      const Interval f = fd.vertical(start_col, j);
      if (!open || !f.contains(0.0)) break;
      seed_v[j] = Interval{0.0, f.hi};
      open = f.hi >= kTouch;
    }
  }
  out.start_top = !seed_v[rows - 1].empty() && seed_v[rows - 1].hi >= kTouch;

  // Row-by-row dynamic program over cells (i,j), i >= start_col. Per-cell
  // free space is convex, so reachable boundary portions stay intervals.
  std::vector<Interval> reach_v(nh, Interval{});
  for (std::size_t j = 0; j < rows; ++j) {
    std::vector<Interval> next_h(cols, Interval{});
    reach_v[start_col] = seed_v[j];
    for (std::size_t i = start_col; i < cols; ++i) {
      const Interval left = reach_v[i];
      const Interval bottom = reach_h[i];
      const Interval fr = fd.vertical(i + 1, j);
      Interval right{};
      if (!bottom.empty()) {
        right = fr;
      } else if (!left.empty() && !fr.empty()) {
        right = Interval{std::max(fr.lo, left.lo), fr.hi};
        if (right.lo > right.hi) right = Interval{};
      }
      const Interval ft = fd.horizontal(i, j + 1);
      Interval top{};
      if (!left.empty()) {
        top = ft;
      } else if (!bottom.empty() && !ft.empty()) {
        top = Interval{std::max(ft.lo, bottom.lo), ft.hi};
        if (top.lo > top.hi) top = Interval{};
      }
      reach_v[i + 1] = right;
      next_h[i] = top;
    }
    reach_h.swap(next_h);
  }

  out.top = reach_h;
  const Interval last_top = out.top[cols - 1];
  const Interval last_right = reach_v[nh - 1];
  out.top_right_corner = (!last_top.empty() && last_top.hi >= kTouch) ||
                         (!last_right.empty() && last_right.hi >= kTouch) ||
                         (start_col == cols && out.start_top);
  return out;
}

BottomSeededReach sweep_from_bottom(const FreeSpaceDiagram& fd,
                                    const std::vector<char>& seed_cols,
                                    bool seed_start_corner) {
  const std::size_t nh = fd.h_vertices();
  const std::size_t nv = fd.v_vertices();
  if (nh < 2 || nv < 2) throw std::invalid_argument("degenerate diagram");
  const std::size_t cols = nh - 1;
  const std::size_t rows = nv - 1;

  std::vector<Interval> reach_h(cols, Interval{});
  for (std::size_t i = 0; i < cols; ++i) {
    const Interval f = fd.horizontal(i, 0);
    if (!seed_cols.empty() && seed_cols[i]) {
      reach_h[i] = f;
      continue;
    }
    const bool from_left =
        i == 0 ? (seed_start_corner && f.contains(0.0))
               : (!reach_h[i - 1].empty() && reach_h[i - 1].hi >= kTouch &&
                  f.contains(0.0));
    if (from_left) reach_h[i] = Interval{0.0, f.hi};
  }

  // Climbing the leftmost vertical line is only possible from the corner
  // seed; interior column lines are reached through cell propagation.
  std::vector<Interval> seed_v(rows, Interval{});
  const bool corner_seeded =
      (seed_start_corner || (!seed_cols.empty() && seed_cols[0])) &&
      fd.horizontal(0, 0).contains(0.0);
  if (corner_seeded) {
    bool open = true;
    for (std::size_t j = 0; j < rows; ++j) {
      const Interval f = fd.vertical(0, j);
      if (!open || !f.contains(0.0)) break;
      seed_v[j] = Interval{0.0, f.hi};
      open = f.hi >= kTouch;
    }
  }

  std::vector<Interval> reach_v(nh, Interval{});
  for (std::size_t j = 0; j < rows; ++j) {
    std::vector<Interval> next_h(cols, Interval{});
    reach_v[0] = seed_v[j];
    for (std::size_t i = 0; i < cols; ++i) {
      const Interval left = reach_v[i];
      const Interval bottom = reach_h[i];
      const Interval fr = fd.vertical(i + 1, j);
      Interval right{};
      if (!bottom.empty()) {
        right = fr;
      } else if (!left.empty() && !fr.empty()) {
        right = Interval{std::max(fr.lo, left.lo), fr.hi};
        if (right.lo > right.hi) right = Interval{};
      }
      const Interval ft = fd.horizontal(i, j + 1);
      Interval top{};
      if (!left.empty()) {
        top = ft;
      } else if (!bottom.empty() && !ft.empty()) {
        top = Interval{std::max(ft.lo, bottom.lo), ft.hi};
        if (top.lo > top.hi) top = Interval{};
      }
      reach_v[i + 1] = right;
      next_h[i] = top;
    }
    reach_h.swap(next_h);
  }
  return BottomSeededReach{reach_h, reach_v[nh - 1]};
}

bool decide_frechet(const PolygonalCurve& p, const PolygonalCurve& q,
                    double delta) {
  if (p.empty() || q.empty())
    throw std::invalid_argument("decide_frechet needs non-empty curves");
  if (delta < 0) return false;
  if (p.size() == 1)
    return point_curve_distance(p.vertex(0), q) <= delta + geom_epsilon();
  if (q.size() == 1)
    return point_curve_distance(q.vertex(0), p) <= delta + geom_epsilon();
  if (!within(p.vertex(0), q.vertex(0), delta) ||
      !within(p.vertex(p.size() - 1), q.vertex(q.size() - 1), delta))
    return false;
  const FreeSpaceDiagram fd(p, q, delta);
  return sweep_reachability(fd, 0).top_right_corner;
}

double compute_frechet(const PolygonalCurve& p, const PolygonalCurve& q,
                       double tol) {
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
  double hi = p.max_vertex_distance(q);
  if (decide_frechet(p, q, 0.0)) return 0.0;
  double lo = 0.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (decide_frechet(p, q, mid))
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

double default_frechet_tol(const PolygonalCurve& p, const PolygonalCurve& q) {
  const double diag = PolygonalCurve::joint_bbox_diagonal(p, q);
  return std::max(1e-7 * diag, 1e-12);
}

BreakpointedCurve::BreakpointedCurve(const PolygonalCurve& p,
                                     const BreakpointSet& bps) {
  const double eps = geom_epsilon();
  const std::size_t d = p.dim();
  std::vector<double> coords;
  std::vector<double> params;
  bp_vertex.assign(bps.count(), 0);
  std::size_t bi = 1;  // next breakpoint (1-based)
  auto push_point = [&](PointView pt, double s) {
    coords.insert(coords.end(), pt.begin(), pt.end());
    params.push_back(s);
  };
  for (std::size_t vi = 0; vi < p.size(); ++vi) {
    const double s = p.param(vi);
    while (bi <= bps.count() && bps.value(bi) < s - eps) {
      const Point pt = p.point_at(bps.value(bi));
      push_point(pt, bps.value(bi));
      bp_vertex[bi - 1] = params.size() - 1;
      ++bi;
    }
    push_point(p.vertex(vi), s);
    while (bi <= bps.count() && std::abs(bps.value(bi) - s) <= eps) {
      bp_vertex[bi - 1] = params.size() - 1;
      ++bi;
    }
  }
  curve = PolygonalCurve::raw(std::move(coords), d, std::move(params));
}

namespace {

bool top_corner_reachable(const ReachabilityFront& front, std::size_t w,
                          std::size_t start_col) {
  if (w == start_col && front.start_top) return true;
  if (w > 0) {
    const Interval& left = front.top[w - 1];
    if (!left.empty() && left.hi >= kTouch) return true;
  }
  if (w < front.top.size()) {
    const Interval& right = front.top[w];
    if (right.contains(0.0)) return true;
  }
  return false;
}

}  // namespace

std::vector<std::size_t> max_reachable_breakpoints(const PolygonalCurve& mu,
                                                   const BreakpointedCurve& bc,
                                                   double delta) {
  const std::size_t m = bc.bp_vertex.size();
  std::vector<std::size_t> out(m, 0);
  const PolygonalCurve& aug = bc.curve;

  if (aug.size() == 1) {
    const bool ok =
        point_curve_distance(aug.vertex(0), mu) <= delta + geom_epsilon();
    for (std::size_t i = 1; i <= m; ++i) out[i - 1] = ok ? m : i - 1;
    return out;
  }
  if (mu.size() == 1) {
    // Point center: P[t_i', t_j'] must stay entirely within delta of the
    // point, so walk vertices right while they remain close.
    for (std::size_t i = 1; i <= m; ++i) {
      const std::size_t v0 = bc.bp_vertex[i - 1];
      if (!within(aug.vertex(v0), mu.vertex(0), delta)) {
        out[i - 1] = i - 1;
        continue;
      }
      std::size_t v = v0;
      while (v + 1 < aug.size() && within(aug.vertex(v + 1), mu.vertex(0), delta))
        ++v;
      std::size_t best = i;
      for (std::size_t j = i; j <= m && bc.bp_vertex[j - 1] <= v; ++j) best = j;
      out[i - 1] = best;
    }
    return out;
  }

  const FreeSpaceDiagram fd(aug, mu, delta);
  parallel_for(m, [&](std::size_t idx) {
    const std::size_t i = idx + 1;
    const std::size_t c0 = bc.bp_vertex[i - 1];
    const ReachabilityFront front = sweep_reachability(fd, c0);
    std::size_t best = i - 1;
    for (std::size_t j = m; j >= i; --j) {
      if (top_corner_reachable(front, bc.bp_vertex[j - 1], c0)) {
        best = j;
        break;
      }
      if (j == i) break;
    }
    out[idx] = best;
  });
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> max_reachable_breakpoints(
    const PolygonalCurve& mu, const PolygonalCurve& p, const BreakpointSet& bps,
    double delta) {
  const BreakpointedCurve bc(p, bps);
  const std::vector<std::size_t> reach = max_reachable_breakpoints(mu, bc, delta);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(reach.size());
  for (std::size_t i = 1; i <= reach.size(); ++i)
    out.emplace_back(i, reach[i - 1]);
  return out;
}

double segment_pair_minimax(PointView a, PointView b, PointView u, PointView v) {
  const std::size_t d = a.size();
  double ww = 0.0, wa = 0.0, wb = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    const double w = v[k] - u[k];
    ww += w * w;
    wa += w * (a[k] - u[k]);
    wb += w * (b[k] - u[k]);
  }
  auto at2 = [&](double lam, PointView c) {
    double s = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      const double e = u[k] + lam * (v[k] - u[k]) - c[k];
      s += e * e;
    }
    return s;
  };
  if (ww <= 1e-300) {
    return std::sqrt(std::max(dist2(a, u), dist2(b, u)));
  }
  const double la = std::clamp(wa / ww, 0.0, 1.0);
  const double lb = std::clamp(wb / ww, 0.0, 1.0);
  if (la <= lb) {
    return std::sqrt(std::max(at2(la, a), at2(lb, b)));
  }
  // Ordering constraint binds: lambda = lambda'. The max of two convex
  // distance functions is minimized at one of their minima or where they
  // cross; the crossing is linear in lambda.
  double best = std::numeric_limits<double>::infinity();
  auto eval = [&](double lam) {
    lam = std::clamp(lam, 0.0, 1.0);
    best = std::min(best, std::max(at2(lam, a), at2(lam, b)));
  };
  eval(la);
  eval(lb);
  double au = 0.0, bu = 0.0, abw = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    au += (a[k] - u[k]) * (a[k] - u[k]);
    bu += (b[k] - u[k]) * (b[k] - u[k]);
    abw += (a[k] - b[k]) * (v[k] - u[k]);
  }
  if (std::abs(abw) > 0.0) eval((au - bu) / (2.0 * abw));
  return std::sqrt(best);
}

bool segment_pair_test(PointView a, PointView b, PointView u, PointView v,
                       double bound) {
  if (bound < 0) return false;
  return segment_pair_minimax(a, b, u, v) <= bound + geom_epsilon();
}

}  // namespace subtraj
