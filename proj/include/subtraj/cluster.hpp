#ifndef SUBTRAJ_CLUSTER_HPP
#define SUBTRAJ_CLUSTER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "subtraj/cover.hpp"
#include "subtraj/curve.hpp"
#include "subtraj/set_system.hpp"

namespace subtraj {

enum class Algorithm { GreedyR0, GreedyR1, BgSegment, BgGeneral };

std::string algorithm_name(Algorithm a);
Algorithm algorithm_from_name(const std::string& name);

struct ClusteringConfig {
  double delta = 1.0;
  std::size_t ell = 2;
  Algorithm algorithm = Algorithm::BgGeneral;
  std::uint64_t seed = 0;
  double tol = 0.0;  // 0 = auto (1e-7 of the bounding-box diagonal)
};

/// One certified interval of the greedy cover: pieces i..j-1 are matched to
/// centers[center] within the verification radius.
struct CoverInterval {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t center = 0;
  double t_i = 0.0;
  double t_j = 0.0;
};

struct ClusteringResult {
  std::vector<PolygonalCurve> centers;
  std::vector<CoverInterval> intervals;
  std::vector<CandidatePair> selected_pairs;
  double labeled_radius = 0.0;
  std::string radius_label;
  double verified_radius = 0.0;
  bool passes_labeled = false;
  SolverStats stats;
  std::string algorithm;
};

/// Runs the selected pipeline: builds the set system, solves the cover,
/// derives centers, and independently verifies the clustering radius.
/// Throws InfeasibleError naming the first uncoverable piece.
ClusteringResult cluster(const PolygonalCurve& p, const BreakpointSet& bps,
                         const ClusteringConfig& cfg);

/// Greedy left-to-right certification that the centers cover every piece at
/// the given radius: for the frontier piece, the witness interval with the
/// furthest reach over all centers and all starts at or before the frontier
/// is taken. Returns the certificate intervals (empty on failure, with the
/// first uncoverable piece in .second of the last element slot unused).
struct VerifyOutcome {
  bool covered = false;
  std::vector<CoverInterval> intervals;
  std::size_t failed_piece = 0;  // 0 when covered
};
VerifyOutcome verify_cover(const PolygonalCurve& p, const BreakpointSet& bps,
                           const std::vector<PolygonalCurve>& centers,
                           double radius);

/// Smallest radius (within tol, by bisection over verify_cover) at which
/// the centers cover the curve.
double phi(const PolygonalCurve& p, const BreakpointSet& bps,
           const std::vector<PolygonalCurve>& centers, double tol);

}  // namespace subtraj

#endif  // SUBTRAJ_CLUSTER_HPP
