#ifndef SUBTRAJ_CURVE_HPP
#define SUBTRAJ_CURVE_HPP

#include <cstddef>
#include <vector>

#include "subtraj/common.hpp"

namespace subtraj {

/// A polygonal curve: an ordered vertex list in d dimensions together with a
/// parameterization s_1..s_n over [0,1]. Evaluation linearly interpolates on
/// the edge containing the query parameter. Immutable after construction.
class PolygonalCurve {
 public:
  PolygonalCurve() = default;

  /// Builds a curve from flat row-major coordinates (n x dim). If params is
  /// empty, chord-length parameters are assigned; otherwise params must be
  /// strictly increasing with endpoints 0 and 1. Consecutive duplicate
  /// points are removed.
  PolygonalCurve(std::vector<double> coords, std::size_t dim,
                 std::vector<double> params = {});

  /// Builds a curve without duplicate removal; params must already be
  /// strictly increasing. For internal use where vertex indices must stay
  /// aligned with the inputs (e.g. breakpoint-augmented curves).
  static PolygonalCurve raw(std::vector<double> coords, std::size_t dim,
                            std::vector<double> params);

  std::size_t size() const { return params_.size(); }
  std::size_t dim() const { return dim_; }
  std::size_t num_edges() const { return size() <= 1 ? 0 : size() - 1; }
  bool empty() const { return params_.empty(); }

  PointView vertex(std::size_t i) const {
    return PointView(coords_.data() + i * dim_, dim_);
  }
  double param(std::size_t i) const { return params_[i]; }
  const std::vector<double>& params() const { return params_; }
  const std::vector<double>& coords() const { return coords_; }

  /// Point on the curve at parameter t in [0,1].
  Point point_at(double t) const;

  /// Index of the edge containing t (last i with params_[i] <= t, capped at
  /// num_edges()-1) and the local ratio on that edge.
  std::pair<std::size_t, double> locate(double t) const;

  /// The subcurve traced on [a,b], reparameterized to [0,1]. a == b yields a
  /// single-point curve.
  PolygonalCurve subcurve(double a, double b) const;

  /// The same point set traversed in the opposite direction; parameters are
  /// mirrored (s -> 1-s).
  PolygonalCurve reversed() const;

  /// Largest pairwise vertex distance to another curve; an upper bound on
  /// the Frechet distance.
  double max_vertex_distance(const PolygonalCurve& other) const;

  /// Diagonal of the axis-aligned bounding box of both curves' vertices.
  static double joint_bbox_diagonal(const PolygonalCurve& a,
                                    const PolygonalCurve& b);

 private:
  std::vector<double> coords_;
  std::vector<double> params_;
  std::size_t dim_ = 0;
};

/// Builds a curve from a list of points. Empty param list selects
/// chord-length parameterization.
PolygonalCurve build_curve(const std::vector<Point>& points,
                           const std::vector<double>& params = {});

/// Concatenates two curves sharing an endpoint (b starts where a ends,
/// within the global epsilon). Parameters are chord-length over the result.
PolygonalCurve concat_curves(const PolygonalCurve& a, const PolygonalCurve& b);

/// Sorted breakpoint parameters t_1 < ... < t_m on a curve, t_1 = 0 and
/// t_m = 1. The ground set of the clustering set systems is {1..m-1}, where
/// element z names the piece [t_z, t_{z+1}]. Indices here are 1-based to
/// match that convention.
class BreakpointSet {
 public:
  BreakpointSet() = default;
  explicit BreakpointSet(std::vector<double> values);

  std::size_t count() const { return values_.size(); }       // m
  std::size_t ground_size() const { return values_.size() - 1; }  // m-1
  double value(std::size_t i) const { return values_[i - 1]; }    // 1-based
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

/// A candidate pair (i,j) of breakpoint indices, 1 <= i < j <= m.
struct CandidatePair {
  std::size_t i = 0;
  std::size_t j = 0;
  friend bool operator==(const CandidatePair&, const CandidatePair&) = default;
  friend auto operator<=>(const CandidatePair&, const CandidatePair&) = default;
};

}  // namespace subtraj

#endif  // SUBTRAJ_CURVE_HPP
