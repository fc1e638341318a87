#ifndef SUBTRAJ_FRECHET_HPP
#define SUBTRAJ_FRECHET_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "subtraj/curve.hpp"

namespace subtraj {

/// A closed sub-interval of [0,1] in an edge-local coordinate. Empty when
/// lo > hi.
struct Interval {
  double lo = 1.0;
  double hi = 0.0;
  bool empty() const { return lo > hi; }
  bool contains(double x) const { return !empty() && lo <= x && x <= hi; }
  static Interval full() { return {0.0, 1.0}; }
};

/// Free-space diagram of two curves at threshold delta. The horizontal axis
/// carries H, the vertical axis V. Cell (i,j) spans H-edge i and V-edge j;
/// its left boundary interval is vertical(i,j) and its bottom boundary
/// interval is horizontal(i,j). Boundary intervals are the exact
/// intersections of the grid-line segments with the level set
/// { (x,y) : ||H(x) - V(y)|| <= delta }, so each one is convex.
class FreeSpaceDiagram {
 public:
  FreeSpaceDiagram(const PolygonalCurve& h, const PolygonalCurve& v,
                   double delta);

  std::size_t h_vertices() const { return nh_; }
  std::size_t v_vertices() const { return nv_; }
  double delta() const { return delta_; }

  /// Feasible local-y interval on the vertical grid line at H-vertex i
  /// crossing V-edge j. i in [0, nh), j in [0, nv-1).
  const Interval& vertical(std::size_t i, std::size_t j) const {
    return vert_[i * (nv_ - 1) + j];
  }
  /// Feasible local-x interval on the horizontal grid line at V-vertex j
  /// crossing H-edge i. i in [0, nh-1), j in [0, nv).
  const Interval& horizontal(std::size_t i, std::size_t j) const {
    return horz_[i * nv_ + j];
  }

  const Interval& cell_left(std::size_t i, std::size_t j) const {
    return vertical(i, j);
  }
  const Interval& cell_bottom(std::size_t i, std::size_t j) const {
    return horizontal(i, j);
  }

 private:
  std::size_t nh_;
  std::size_t nv_;
  double delta_;
  std::vector<Interval> vert_;
  std::vector<Interval> horz_;
};

FreeSpaceDiagram free_space(const PolygonalCurve& h, const PolygonalCurve& v,
                            double delta);

/// Feasible sub-interval {t : ||a + t (b - a) - center|| <= r} of [0,1],
/// with the global epsilon added to r (tangent touching counts).
Interval ball_segment_intersection(PointView center, PointView a, PointView b,
                                   double r);

/// Reachability data from one bottom-boundary corner of a free-space
/// diagram: the reachable portions of the top boundary, and whether the
/// top-right corner is reachable by a monotone path.
struct ReachabilityFront {
  std::vector<Interval> top;  // one interval per top H-edge, local coords
  bool top_right_corner = false;
  bool start_top = false;  // top corner of the start column, via the climb
};

/// Sweeps monotone reachability through fd starting at the bottom corner at
/// H-vertex start_col. Requires both curves to have at least 2 vertices.
ReachabilityFront sweep_reachability(const FreeSpaceDiagram& fd,
                                     std::size_t start_col);

/// Reachability when monotone paths may start anywhere on the feasible
/// bottom intervals of the flagged columns (plus, optionally, the
/// bottom-left corner). Returns the reachable top-boundary intervals and
/// the reachable part of the right boundary in the last row.
struct BottomSeededReach {
  std::vector<Interval> top;
  Interval last_right;
};
BottomSeededReach sweep_from_bottom(const FreeSpaceDiagram& fd,
                                    const std::vector<char>& seed_cols,
                                    bool seed_start_corner);

/// True iff the continuous Frechet distance of p and q is at most delta
/// (within the global epsilon).
bool decide_frechet(const PolygonalCurve& p, const PolygonalCurve& q,
                    double delta);

/// Frechet distance by bisection of decide_frechet, to absolute tolerance
/// tol. The paper-style algorithms only ever need decisions; the value is
/// for reporting.
double compute_frechet(const PolygonalCurve& p, const PolygonalCurve& q,
                       double tol);

/// Default bisection tolerance: 1e-7 of the joint bounding-box diagonal.
double default_frechet_tol(const PolygonalCurve& p, const PolygonalCurve& q);

/// A curve with breakpoint parameters materialized as vertices, plus the
/// map from 1-based breakpoint index to augmented vertex index. Inserting
/// vertices does not change the traced point set, so Frechet decisions and
/// monotone-path reachability are unaffected.
struct BreakpointedCurve {
  PolygonalCurve curve;
  std::vector<std::size_t> bp_vertex;  // [m], entry i-1 for breakpoint i

  BreakpointedCurve(const PolygonalCurve& p, const BreakpointSet& bps);
};

/// For each breakpoint i' of P, the largest j' >= i' such that a monotone
/// path runs from (t_i', 0) to (t_j', 1) in the delta-free space of
/// (P horizontal, mu vertical); j' = i'-1 marks that nothing is reachable.
/// Entry i'-1 of the result corresponds to breakpoint i'.
std::vector<std::pair<std::size_t, std::size_t>> max_reachable_breakpoints(
    const PolygonalCurve& mu, const PolygonalCurve& p, const BreakpointSet& bps,
    double delta);

/// Same, reusing a prebuilt breakpointed curve and returning just the j'
/// values (entry i'-1 for breakpoint i').
std::vector<std::size_t> max_reachable_breakpoints(
    const PolygonalCurve& mu, const BreakpointedCurve& bc, double delta);

/// Minimum over 0 <= lambda <= lambda' <= 1 of
///   max(||a - (u + lambda (v-u))||, ||b - (u + lambda' (v-u))||),
/// i.e. the best ordered placement of a and b on segment uv.
double segment_pair_minimax(PointView a, PointView b, PointView u, PointView v);

/// True iff segment_pair_minimax(a,b,u,v) <= bound (within the global
/// epsilon); the constant-time test behind the segment-oracle query.
bool segment_pair_test(PointView a, PointView b, PointView u, PointView v,
                       double bound);

}  // namespace subtraj

#endif  // SUBTRAJ_FRECHET_HPP
