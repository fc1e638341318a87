#include "subtraj/cover.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace subtraj {

CoverSolution greedy_cover(std::size_t ground_size, std::size_t row_count,
                           const MembershipFn& member) {
  std::vector<char> covered(ground_size + 1, 0);
  std::vector<std::size_t> uncovered_count(row_count, 0);
  for (std::size_t r = 0; r < row_count; ++r)
    for (std::size_t z = 1; z <= ground_size; ++z)
      if (member(z, r)) ++uncovered_count[r];

  CoverSolution sol;
  sol.witness.assign(ground_size, 0);
  std::size_t remaining = ground_size;
  while (remaining > 0) {
    std::size_t best = row_count;
    std::size_t best_count = 0;
    for (std::size_t r = 0; r < row_count; ++r) {
      if (uncovered_count[r] > best_count) {
        best = r;
        best_count = uncovered_count[r];
      }
    }
    if (best == row_count) {
      for (std::size_t z = 1; z <= ground_size; ++z)
        if (!covered[z])
          throw InfeasibleError(z, "piece " + std::to_string(z) +
                                       " belongs to no candidate set");
      break;
    }
    const std::size_t pick = sol.selected.size();
    sol.selected.push_back(best);
    ++sol.stats.iterations;
    for (std::size_t z = 1; z <= ground_size; ++z) {
      if (covered[z] || !member(z, best)) continue;
      covered[z] = 1;
      sol.witness[z - 1] = pick;
      --remaining;
      for (std::size_t r = 0; r < row_count; ++r)
        if (uncovered_count[r] > 0 && member(z, r)) --uncovered_count[r];
    }
  }
  return sol;
}

void WeightTable::double_weight(std::size_t idx) {
  ++exps_[idx];
  max_exp_ = std::max(max_exp_, exps_[idx]);
}

double WeightTable::normalized(std::size_t idx) const {
  return std::exp2(static_cast<double>(exps_[idx] - max_exp_));
}

double WeightTable::total() const {
  double s = 0.0;
  for (std::size_t i = 0; i < exps_.size(); ++i) s += normalized(i);
  return s;
}

std::vector<double> WeightTable::cumulative() const {
  std::vector<double> cum(exps_.size());
  double s = 0.0;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    s += normalized(i);
    cum[i] = s;
  }
  return cum;
}

std::size_t bg_sample_size(std::size_t ground_size, std::size_t k_guess) {
  const double delta =
      std::max(1.0, std::ceil(std::log2(static_cast<double>(
                        std::max<std::size_t>(ground_size, 2)))));
  const double alpha_term = std::ceil((4.0 / 3.0) * std::log(2.0 / 0.5));
  const double eps = 1.0 / (2.0 * static_cast<double>(k_guess));
  const double ratio = 8.0 * delta / eps;
  const double net_term = std::ceil(ratio * std::log2(ratio));
  return static_cast<std::size_t>(std::max(alpha_term, net_term));
}

BgResult bg_hitting_set(std::size_t ground_size, std::size_t row_count,
                        const MembershipFn& member, std::size_t k_guess,
                        std::uint64_t seed) {
  BgResult res;
  res.stats.k_guess = k_guess;
  if (k_guess < 1) throw std::invalid_argument("k_guess must be at least 1");
  const std::size_t s = bg_sample_size(ground_size, k_guess);
  res.stats.sample_size = s;
  const double eps = 1.0 / (2.0 * static_cast<double>(k_guess));

  const double ratio = static_cast<double>(row_count) /
                       static_cast<double>(std::max<std::size_t>(k_guess, 1));
  const std::size_t reweight_budget = static_cast<std::size_t>(
      std::ceil(8.0 * static_cast<double>(k_guess) *
                std::log2(std::max(2.0, ratio))));
  // Secondary safety cap: heavy witnesses only resample, and the expected
  // number of resamples per round is below two, so this cap is generous.
  const std::size_t total_budget = 16 * (reweight_budget + 4) + 64;

  WeightTable weights(row_count);
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> sampled;
  std::vector<char> in_sample(row_count, 0);

  for (std::size_t iter = 0; iter < total_budget; ++iter) {
    ++res.stats.iterations;
    // net finder: s i.i.d. draws proportional to weights
    const std::vector<double> cum = weights.cumulative();
    const double tot = cum.back();
    sampled.clear();
    std::fill(in_sample.begin(), in_sample.end(), 0);
    for (std::size_t t = 0; t < s; ++t) {
      const double u = next_double(rng) * tot;
      const std::size_t idx = static_cast<std::size_t>(
          std::lower_bound(cum.begin(), cum.end(), u) - cum.begin());
      const std::size_t row = std::min(idx, row_count - 1);
      if (!in_sample[row]) {
        in_sample[row] = 1;
        sampled.push_back(row);
      }
    }
    // extended verifier: first unhit element in increasing order
    std::size_t witness_z = 0;
    for (std::size_t z = 1; z <= ground_size; ++z) {
      bool hit = false;
      for (const std::size_t row : sampled) {
        if (member(z, row)) {
          hit = true;
          break;
        }
      }
      if (!hit) {
        witness_z = z;
        break;
      }
    }
    if (witness_z == 0) {
      std::sort(sampled.begin(), sampled.end());
      res.success = true;
      res.hitting_set = sampled;
      return res;
    }
    // witness weight, relative to the ground total
    double wz = 0.0;
    for (std::size_t row = 0; row < row_count; ++row)
      if (member(witness_z, row)) wz += weights.normalized(row);
    if (wz <= eps * tot) {
      for (std::size_t row = 0; row < row_count; ++row)
        if (member(witness_z, row)) weights.double_weight(row);
      ++res.stats.reweight_rounds;
      if (res.stats.reweight_rounds > reweight_budget) return res;  // Fail
    } else {
      ++res.stats.resample_rounds;
    }
  }
  return res;  // Fail: total budget exhausted
}

CoverSolution bg_cover_search(std::size_t ground_size, std::size_t row_count,
                              const MembershipFn& member, std::uint64_t seed) {
  // eager feasibility scan
  for (std::size_t z = 1; z <= ground_size; ++z) {
    bool any = false;
    for (std::size_t r = 0; r < row_count && !any; ++r) any = member(z, r);
    if (!any)
      throw InfeasibleError(z, "piece " + std::to_string(z) +
                                   " belongs to no candidate set");
  }
  CoverSolution sol;
  std::uint64_t round_seed = seed;
  for (std::size_t k = 1;; k *= 2) {
    const BgResult res =
        bg_hitting_set(ground_size, row_count, member, k, round_seed);
    sol.stats.iterations += res.stats.iterations;
    sol.stats.reweight_rounds += res.stats.reweight_rounds;
    sol.stats.resample_rounds += res.stats.resample_rounds;
    sol.stats.k_guess = k;
    sol.stats.sample_size = res.stats.sample_size;
    if (res.success) {
      sol.selected = res.hitting_set;
      break;
    }
    if (k >= row_count) {
      // Every element is hit by some row, so all rows form a valid cover.
      sol.selected.resize(row_count);
      for (std::size_t r = 0; r < row_count; ++r) sol.selected[r] = r;
      break;
    }
    round_seed = round_seed * 6364136223846793005ull + 1442695040888963407ull;
  }
  sol.witness.assign(ground_size, 0);
  for (std::size_t z = 1; z <= ground_size; ++z) {
    bool found = false;
    for (std::size_t s = 0; s < sol.selected.size() && !found; ++s) {
      if (member(z, sol.selected[s])) {
        sol.witness[z - 1] = s;
        found = true;
      }
    }
  }
  return sol;
}

}  // namespace subtraj
