#ifndef SUBTRAJ_COVER_HPP
#define SUBTRAJ_COVER_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "subtraj/curve.hpp"

namespace subtraj {

/// Membership surface of a set system: does piece z (1-based) belong to the
/// set of the given row?
using MembershipFn =
    std::function<bool(std::size_t z, std::size_t row)>;

struct SolverStats {
  std::size_t iterations = 0;       // greedy picks / BG rounds
  std::size_t reweight_rounds = 0;  // case (ii) events
  std::size_t resample_rounds = 0;  // case (iii) events
  std::size_t k_guess = 0;
  std::size_t sample_size = 0;
};

/// A computed set cover: selected row indices, and for each ground element
/// the selected row that covers it.
struct CoverSolution {
  std::vector<std::size_t> selected;
  std::vector<std::size_t> witness;  // per z-1: index into selected
  SolverStats stats;
};

/// Chvatal greedy: repeatedly take the row with the most uncovered
/// elements, ties to the smallest row index (rows sorted by pair make that
/// the lexicographically smallest pair). Throws InfeasibleError naming the
/// first uncoverable element.
CoverSolution greedy_cover(std::size_t ground_size, std::size_t row_count,
                           const MembershipFn& member);

/// Multiplicative-weights weight table: exact power-of-two weights stored
/// as integer exponents with renormalization against the running maximum.
class WeightTable {
 public:
  explicit WeightTable(std::size_t n) : exps_(n, 0) {}
  std::size_t size() const { return exps_.size(); }
  void double_weight(std::size_t idx);
  std::int64_t exponent(std::size_t idx) const { return exps_[idx]; }
  double normalized(std::size_t idx) const;  // 2^(e - e_max)
  double total() const;
  /// Cumulative normalized weights for sampling.
  std::vector<double> cumulative() const;

 private:
  std::vector<std::int64_t> exps_;
  std::int64_t max_exp_ = 0;
};

struct BgResult {
  bool success = false;
  std::vector<std::size_t> hitting_set;  // row indices (the primal cover)
  SolverStats stats;
};

/// One round of the net-finder / extended-verifier loop at a fixed size
/// guess: samples s(k) rows i.i.d. proportional to weights, scans elements
/// in increasing order for one left unhit, doubles the weights of the rows
/// containing a light witness, resamples on a heavy one, and fails once the
/// reweighting budget 8 k log2(rows/k) is spent.
BgResult bg_hitting_set(std::size_t ground_size, std::size_t row_count,
                        const MembershipFn& member, std::size_t k_guess,
                        std::uint64_t seed);

/// Doubles k_guess = 1, 2, 4, ... until bg_hitting_set succeeds. Performs
/// the eager feasibility scan first and throws InfeasibleError when some
/// element belongs to no row.
CoverSolution bg_cover_search(std::size_t ground_size, std::size_t row_count,
                              const MembershipFn& member, std::uint64_t seed);

/// Sample size prescribed by the epsilon-net theorem at alpha = 1/2,
/// epsilon = 1/(2k), with delta the dual VC bound ceil(log2(ground_size)).
std::size_t bg_sample_size(std::size_t ground_size, std::size_t k_guess);

}  // namespace subtraj

#endif  // SUBTRAJ_COVER_HPP
