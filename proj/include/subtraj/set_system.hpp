#ifndef SUBTRAJ_SET_SYSTEM_HPP
#define SUBTRAJ_SET_SYSTEM_HPP

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "subtraj/curve.hpp"
#include "subtraj/simplify.hpp"

namespace subtraj {

/// Explicit incidence structure of a set system over candidate pairs. Row r
/// holds a bitset over the ground set {1..m-1}; bit z is set when piece z
/// belongs to the row's set. Rows are sorted lexicographically by pair.
class IncidenceMatrix {
 public:
  IncidenceMatrix() = default;
  IncidenceMatrix(std::vector<CandidatePair> rows, std::size_t ground_size,
                  double threshold);

  std::size_t row_count() const { return rows_.size(); }
  std::size_t ground_size() const { return ground_size_; }
  double threshold() const { return threshold_; }
  const std::vector<CandidatePair>& rows() const { return rows_; }
  const CandidatePair& row_pair(std::size_t r) const { return rows_[r]; }

  void set_bit(std::size_t r, std::size_t z);          // z is 1-based
  bool query(std::size_t r, std::size_t z) const;      // constant time
  std::optional<std::size_t> row_of(const CandidatePair& pair) const;

  /// The witness pair (i', j') recorded for a set bit, when the builder ran
  /// with witness recording on.
  std::optional<CandidatePair> witness(std::size_t r, std::size_t z) const;
  void record_witness(std::size_t r, std::size_t z, CandidatePair w);
  void enable_witnesses();
  bool has_witnesses() const { return !witnesses_.empty(); }

  std::size_t words_per_row() const { return words_; }
  const std::vector<std::uint64_t>& bit_words() const { return bits_; }

  void dump(std::ostream& out) const;
  static IncidenceMatrix load(std::istream& in);
  void dump_file(const std::string& path) const;
  static IncidenceMatrix load_file(const std::string& path);

 private:
  std::vector<CandidatePair> rows_;
  std::size_t ground_size_ = 0;
  std::size_t words_ = 0;
  double threshold_ = 0.0;
  std::vector<std::uint64_t> bits_;
  std::vector<CandidatePair> witnesses_;  // empty unless enabled
};

/// Approximate subcurve-distance query surface: distance(i', j', Q)
/// approximates the Frechet distance between P[t_i', t_j'] and Q with
/// d_F <= result <= c * d_F for the declared constant c >= 1.
class SubcurveDistanceOracle {
 public:
  virtual ~SubcurveDistanceOracle() = default;
  virtual double constant() const = 0;
  virtual double distance(std::size_t i, std::size_t j,
                          const PolygonalCurve& q) const = 0;
};

/// Shipping default: exact distances (c = 1) via free-space decisions and
/// bisection on the subcurve.
class ExactSubcurveOracle : public SubcurveDistanceOracle {
 public:
  ExactSubcurveOracle(const PolygonalCurve& p, const BreakpointSet& bps,
                      double tol = 0.0);
  double constant() const override { return 1.0; }
  double distance(std::size_t i, std::size_t j,
                  const PolygonalCurve& q) const override;

 private:
  const PolygonalCurve& p_;
  const BreakpointSet& bps_;
  double tol_;
};

/// The ell-simplification used for rows of the explicit systems (exact
/// enclosing-ball center for ell = 1, capped-greedy bisection otherwise).
PolygonalCurve mu_simplification(const PolygonalCurve& p,
                                 const BreakpointSet& bps, std::size_t i,
                                 std::size_t j, std::size_t ell, double tol);

struct BuildOptions {
  bool record_witnesses = false;
  double mu_tol = 0.0;  // 0 = auto from delta
};

/// Incidence matrix at radius 3*delta: bit (r=(i,j), z) set iff some
/// breakpoint pair (i', j') with i' <= z < j' satisfies
/// d_F(P[t_i', t_j'], mu_ell(P[t_i, t_j])) <= 3*delta. Built from
/// maximal-reach sweeps over the free space of each simplification.
IncidenceMatrix build_r0(const PolygonalCurve& p, const BreakpointSet& bps,
                         double delta, std::size_t ell,
                         const BuildOptions& opts = {});

/// Variant with a pluggable distance oracle at radius 3*c*delta, evaluated
/// by O(m^2) oracle queries per row.
IncidenceMatrix build_r1(const PolygonalCurve& p, const BreakpointSet& bps,
                         double delta, std::size_t ell,
                         const SubcurveDistanceOracle& oracle,
                         const BuildOptions& opts = {});

}  // namespace subtraj

#endif  // SUBTRAJ_SET_SYSTEM_HPP
