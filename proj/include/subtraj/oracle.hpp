#ifndef SUBTRAJ_ORACLE_HPP
#define SUBTRAJ_ORACLE_HPP

#include <cstddef>
#include <vector>

#include "subtraj/curve.hpp"
#include "subtraj/simplify.hpp"

namespace subtraj {

/// First-hit index table: entry (i,j) is the first breakpoint w >= j with
/// ||P(t_i) - P(t_w)|| <= radius, or m+1 when none exists. Rows are
/// monotone non-decreasing in j.
class NearBreakpointMatrix {
 public:
  NearBreakpointMatrix() = default;
  NearBreakpointMatrix(const std::vector<Point>& bp_points, double radius);

  std::size_t size() const { return m_; }
  double radius() const { return radius_; }
  /// 1-based lookup; returns m+1 as the sentinel.
  std::size_t first_near(std::size_t i, std::size_t j) const {
    return table_[(i - 1) * m_ + (j - 1)];
  }
  /// True iff some breakpoint w in [lo, hi] satisfies
  /// ||P(t_i) - P(t_w)|| <= radius.
  bool any_near(std::size_t i, std::size_t lo, std::size_t hi) const {
    return lo <= hi && first_near(i, lo) <= hi;
  }

 private:
  std::size_t m_ = 0;
  double radius_ = 0.0;
  std::vector<std::size_t> table_;
};

/// Constant-time membership oracle for the segment set system (centers are
/// line segments between breakpoints). Holds the 4-delta scan limits, the
/// 2-delta first-hit matrix, and the breakpoint locations.
struct SegmentOracle {
  double delta = 0.0;
  BreakpointSet bps;
  std::vector<Point> bp_points;      // P(t_w), index w-1
  std::vector<std::size_t> x_limit;  // per z in 1..m-1: backward scan limit
  std::vector<std::size_t> y_limit;  // per z in 1..m-1: forward scan limit
  NearBreakpointMatrix near2;        // threshold 2*delta

  std::size_t m() const { return bps.count(); }
};

/// Builds the segment oracle: x_z by scanning backwards from z while
/// d_F(seg(t_x,t_z), P[t_x,t_z]) <= 4*delta holds, y_z by the symmetric
/// forward scan from z+1, and the first-hit matrix at 2*delta.
SegmentOracle build_segment_oracle(const PolygonalCurve& p,
                                   const BreakpointSet& bps, double delta);

/// Membership test "z in r_{i,j}" for the segment system: (a) some
/// breakpoint in [x_z, z] lies within 2*delta of P(t_i), (b) some breakpoint
/// in [z+1, y_z] lies within 2*delta of P(t_j), and (c) the ordered
/// placement of P(t_z), P(t_{z+1}) on the segment P(t_i)P(t_j) stays within
/// 2*delta. O(1) per query.
bool segment_query(const SegmentOracle& o, std::size_t z, std::size_t i,
                   std::size_t j);

/// Approximation oracle for the general-ell system: simplification family,
/// 18-delta first-hit matrix, and the underlying curve.
struct GeneralOracle {
  double delta = 0.0;
  std::size_t ell = 0;
  PolygonalCurve p;
  SigmaFamily family;
  NearBreakpointMatrix near18;  // threshold 18*delta
  std::vector<Point> bp_points;

  std::size_t m() const { return family.m(); }
  const BreakpointSet& bps() const { return family.bps; }
};

GeneralOracle build_general_oracle(const PolygonalCurve& p,
                                   const BreakpointSet& bps, double delta,
                                   std::size_t ell);

enum class OracleAnswer { Yes, No };

/// One-sided membership test for the general system. Yes implies some
/// x in [x_z, z], y in [z+1, y_{z+1}] with
/// d_F(kappa_z(x,y), sigma_plus(i,j)) <= 46*delta; No implies no witness at
/// 10*delta exists. O(ell^2) per query.
OracleAnswer general_query(const GeneralOracle& o, std::size_t z, std::size_t i,
                           std::size_t j);

}  // namespace subtraj

#endif  // SUBTRAJ_ORACLE_HPP
