#include "subtraj/common.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace subtraj {

namespace {
std::atomic<double> g_epsilon{1e-9};
}

double geom_epsilon() { return g_epsilon.load(std::memory_order_relaxed); }

void set_geom_epsilon(double eps) {
  if (!(eps > 0)) throw std::invalid_argument("geom epsilon must be positive");
  g_epsilon.store(eps, std::memory_order_relaxed);
}

double dist2(PointView a, PointView b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return s;
}

double dist(PointView a, PointView b) { return std::sqrt(dist2(a, b)); }

unsigned worker_count() {
  static const unsigned cached = [] {
    const char* env = std::getenv("SUBTRAJ_THREADS");
    long v = 0;
    if (env != nullptr) v = std::strtol(env, nullptr, 10);
    if (v <= 0) {
      const unsigned hw = std::thread::hardware_concurrency();
      return hw == 0 ? 1u : hw;
    }
    return static_cast<unsigned>(v);
  }();
  return cached;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const unsigned workers = worker_count();
  if (workers <= 1 || n < 4) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  const unsigned spawn = static_cast<unsigned>(
      std::min<std::size_t>(workers, n) - 1);
  pool.reserve(spawn);
  for (unsigned t = 0; t < spawn; ++t) pool.emplace_back(body);
  body();
  for (auto& th : pool) th.join();
}

}  // namespace subtraj
