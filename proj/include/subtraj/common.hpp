#ifndef SUBTRAJ_COMMON_HPP
#define SUBTRAJ_COMMON_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace subtraj {

/// Global absolute tolerance used for point-equality and interval tests.
/// Default 1e-9; configurable once at startup (not thread-safe to change
/// while solvers are running).
double geom_epsilon();
void set_geom_epsilon(double eps);

/// Thrown when an instance admits no cover at the working radius.
/// Carries the index of the first ground-set element that no set contains.
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(std::size_t piece, const std::string& what)
      : std::runtime_error(what), piece_(piece) {}
  std::size_t piece() const { return piece_; }

 private:
  std::size_t piece_;
};

using Point = std::vector<double>;
using PointView = std::span<const double>;

double dist2(PointView a, PointView b);
double dist(PointView a, PointView b);

/// Worker count for parallel build phases. Reads SUBTRAJ_THREADS once
/// (0 or unset = hardware concurrency).
unsigned worker_count();

/// Runs fn(i) for i in [0, n). Falls back to a serial loop when n is small
/// or only one worker is available. fn must write to disjoint slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// Deterministic uniform double in [0,1) from a 64-bit generator state.
/// (std::uniform_real_distribution is implementation-defined, so sampling
/// paths that must reproduce byte-identical results use this instead.)
template <typename Rng>
double next_double(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace subtraj

#endif  // SUBTRAJ_COMMON_HPP
