#ifndef SUBTRAJ_SIMPLIFY_HPP
#define SUBTRAJ_SIMPLIFY_HPP

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "subtraj/curve.hpp"

namespace subtraj {

inline constexpr std::size_t kUncapped = std::numeric_limits<std::size_t>::max();

/// A vertex-restricted simplification: every vertex is a source vertex, in
/// source order. anchors[k] is the source parameter the k-th vertex was
/// taken from. completed is false when the vertex cap stopped the greedy
/// before the end of the source curve; the curve then covers the source
/// prefix up to anchors.back().
struct Simplification {
  PolygonalCurve curve;
  std::vector<double> anchors;
  bool completed = true;
};

/// Greedy vertex-restricted simplification: starting at the first vertex,
/// repeatedly take the furthest shortcut whose segment stays within eps
/// Frechet distance of the spanned subcurve (exponential then binary
/// search, largest feasible shortcut wins). Stops early at max_vertices.
Simplification agarwal_simplify(const PolygonalCurve& p, double eps,
                                std::size_t max_vertices = kUncapped);

/// A curve with at most ell vertices close to p in Frechet distance:
/// exact (minimum enclosing ball of the vertices) for ell = 1, otherwise a
/// bisection over eps of the capped greedy. The bisection converges to
/// within tol of the smallest eps at which the capped greedy completes.
PolygonalCurve ell_simplification(const PolygonalCurve& p, std::size_t ell,
                                  double tol);

/// One stored capped simplification plus, per edge, the first and last
/// breakpoint corresponding to it (1-based indices; 0 marks none). A
/// breakpoint corresponds to an edge when its parameter lies between the
/// edge endpoints' anchors, ties going to the earlier edge.
struct FamilyEntry {
  Simplification simp;
  std::vector<std::size_t> edge_first_bp;
  std::vector<std::size_t> edge_last_bp;
};

/// The directional simplification family at threshold 4*delta with vertex
/// cap 2*ell:
///   plus[z-1]   greedy on P[t_z, 1]          (anchors increase)
///   minus[z-1]  greedy on reversed P[0, t_z] (anchors decrease)
///   circ[z-1]   full simplification of the piece [t_z, t_{z+1}], or absent
/// y_limit[z-1] is the last breakpoint y reachable from z through plus
/// (m when uncapped); x_limit[z-1] the first breakpoint reachable backwards.
struct SigmaFamily {
  double delta = 0.0;
  std::size_t ell = 0;
  BreakpointSet bps;
  std::vector<FamilyEntry> plus;
  std::vector<FamilyEntry> minus;
  std::vector<std::optional<PolygonalCurve>> circ;
  std::vector<std::size_t> y_limit;
  std::vector<std::size_t> x_limit;

  std::size_t m() const { return bps.count(); }
};

SigmaFamily build_sigma_family(const PolygonalCurve& p, const BreakpointSet& bps,
                               double delta, std::size_t ell);

/// The forward simplification of P[t_i, t_j]: the prefix of plus[i-1]
/// ending at the last point of the edge corresponding to t_j that meets the
/// ball of radius 4*delta around P(t_j). Absent when j exceeds y_limit[i-1].
std::optional<PolygonalCurve> extract_sigma_plus(const SigmaFamily& family,
                                                 const PolygonalCurve& p,
                                                 std::size_t i, std::size_t j);

/// The backward counterpart on minus[z-1], returned in forward orientation
/// (running from near P(t_x) to P(t_z)). Absent when x < x_limit[z-1].
std::optional<PolygonalCurve> extract_sigma_minus(const SigmaFamily& family,
                                                  const PolygonalCurve& p,
                                                  std::size_t x, std::size_t z);

}  // namespace subtraj

#endif  // SUBTRAJ_SIMPLIFY_HPP
