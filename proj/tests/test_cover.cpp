#include "doctest.h"

#include <cmath>
#include <random>

#include "subtraj/cover.hpp"
#include "support/test_oracles.hpp"

using namespace subtraj;

namespace {

MembershipFn mask_membership(const std::vector<std::uint64_t>& masks) {
  return [&masks](std::size_t z, std::size_t row) {
    return (masks[row] >> (z - 1)) & 1u;
  };
}

std::vector<std::uint64_t> random_system(std::mt19937_64& rng,
                                         std::size_t ground, std::size_t rows,
                                         double density) {
  std::vector<std::uint64_t> masks(rows, 0);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t z = 0; z < ground; ++z)
      if (next_double(rng) < density) masks[r] |= std::uint64_t{1} << z;
  return masks;
}

}  // namespace

TEST_CASE("greedy trivial and small systems") {
  SUBCASE("one row covers everything") {
    const std::vector<std::uint64_t> masks{0b111};
    const CoverSolution sol = greedy_cover(3, 1, mask_membership(masks));
    CHECK(sol.selected == std::vector<std::size_t>{0});
  }
  SUBCASE("documented two-set instance") {
    // rows {1,2}, {2,3}, {3}
    const std::vector<std::uint64_t> masks{0b011, 0b110, 0b100};
    const CoverSolution sol = greedy_cover(3, 3, mask_membership(masks));
    REQUIRE(sol.selected.size() == 2);
    CHECK(sol.selected[0] == 0);
    CHECK(sol.selected[1] == 1);
    const auto opt = testing::exhaustive_cover_size(masks, 3);
    REQUIRE(opt.has_value());
    CHECK(sol.selected.size() == *opt);
  }
  SUBCASE("classic greedy gap instance") {
    // 8 elements; the two size-4 halves are optimal, but greedy prefers the
    // size-6 middle row and then needs both halves anyway
    const std::vector<std::uint64_t> gap{0b01111110, 0b00001111, 0b11110000};
    const CoverSolution sol = greedy_cover(8, 3, mask_membership(gap));
    CHECK(sol.selected.size() == 3);
    const auto opt = testing::exhaustive_cover_size(gap, 8);
    REQUIRE(opt.has_value());
    CHECK(*opt == 2);
  }
}

TEST_CASE("greedy ties break to the smallest row") {
  const std::vector<std::uint64_t> masks{0b011, 0b011, 0b100};
  const CoverSolution sol = greedy_cover(3, 3, mask_membership(masks));
  CHECK(sol.selected[0] == 0);
}

TEST_CASE("greedy names the uncoverable element") {
  const std::vector<std::uint64_t> masks{0b001, 0b100};
  try {
    greedy_cover(3, 2, mask_membership(masks));
    FAIL("expected infeasibility");
  } catch (const InfeasibleError& e) {
    CHECK(e.piece() == 2);
  }
}

TEST_CASE("greedy respects the Chvatal bound on random systems") {
  std::mt19937_64 rng(61);
  int tested = 0;
  while (tested < 60) {
    const std::size_t ground = 3 + static_cast<std::size_t>(next_double(rng) * 8);
    const std::size_t rows = 3 + static_cast<std::size_t>(next_double(rng) * 18);
    const auto masks = random_system(rng, ground, rows, 0.3);
    const auto opt = testing::exhaustive_cover_size(masks, ground);
    if (!opt.has_value()) continue;
    ++tested;
    const CoverSolution sol =
        greedy_cover(ground, masks.size(), mask_membership(masks));
    const double bound = (std::log(static_cast<double>(ground)) + 1.0) *
                         static_cast<double>(*opt);
    CHECK(static_cast<double>(sol.selected.size()) <= bound + 1e-9);
  }
}

TEST_CASE("weight table doubles exactly and renormalizes") {
  WeightTable w(4);
  CHECK(w.total() == doctest::Approx(4.0));
  w.double_weight(1);
  w.double_weight(1);
  w.double_weight(2);
  // weights now 1,4,2,1 -> normalized by 4: 0.25,1,0.5,0.25
  CHECK(w.normalized(0) == doctest::Approx(0.25));
  CHECK(w.normalized(1) == doctest::Approx(1.0));
  CHECK(w.normalized(2) == doctest::Approx(0.5));
  CHECK(w.total() == doctest::Approx(2.0));
  const auto cum = w.cumulative();
  CHECK(cum.back() == doctest::Approx(w.total()).epsilon(1e-9));
}

TEST_CASE("bg solver on forced instances") {
  SUBCASE("one row covers all") {
    const std::vector<std::uint64_t> masks{0b1111};
    const BgResult res = bg_hitting_set(4, 1, mask_membership(masks), 1, 7);
    REQUIRE(res.success);
    CHECK(res.hitting_set == std::vector<std::size_t>{0});
  }
  SUBCASE("singleton rows force the full ground set") {
    std::vector<std::uint64_t> masks;
    const std::size_t n = 5;
    for (std::size_t z = 0; z < n; ++z) masks.push_back(std::uint64_t{1} << z);
    const CoverSolution sol =
        bg_cover_search(n, masks.size(), mask_membership(masks), 99);
    CHECK(sol.selected.size() == n);
  }
  SUBCASE("infeasible instances are reported, not looped") {
    const std::vector<std::uint64_t> masks{0b001};
    CHECK_THROWS_AS(bg_cover_search(2, 1, mask_membership(masks), 1),
                    InfeasibleError);
  }
}

TEST_CASE("bg solver covers random systems within its budgets") {
  std::mt19937_64 rng(67);
  int tested = 0;
  while (tested < 40) {
    const std::size_t ground = 4 + static_cast<std::size_t>(next_double(rng) * 6);
    const std::size_t rows = 5 + static_cast<std::size_t>(next_double(rng) * 15);
    const auto masks = random_system(rng, ground, rows, 0.35);
    const auto opt = testing::exhaustive_cover_size(masks, ground);
    if (!opt.has_value()) continue;
    ++tested;
    const CoverSolution sol =
        bg_cover_search(ground, masks.size(), mask_membership(masks),
                        static_cast<std::uint64_t>(tested));
    // verifier soundness: full rescan
    for (std::size_t z = 1; z <= ground; ++z) {
      bool hit = false;
      for (const std::size_t r : sol.selected)
        if ((masks[r] >> (z - 1)) & 1u) hit = true;
      CHECK(hit);
    }
    CHECK(sol.stats.k_guess <= 2 * *opt);
    CHECK(sol.selected.size() <= std::max<std::size_t>(
                                     sol.stats.sample_size, rows));
  }
}

TEST_CASE("reweighting only doubles rows containing the witness") {
  // Deterministic replay on a tiny system by instrumenting membership.
  const std::vector<std::uint64_t> masks{0b0011, 0b1100, 0b0101};
  WeightTable w(masks.size());
  // simulate one doubling round on element 3 (mask bit 2)
  const std::size_t witness_z = 3;
  std::vector<std::int64_t> before;
  for (std::size_t r = 0; r < masks.size(); ++r) before.push_back(w.exponent(r));
  for (std::size_t r = 0; r < masks.size(); ++r)
    if ((masks[r] >> (witness_z - 1)) & 1u) w.double_weight(r);
  for (std::size_t r = 0; r < masks.size(); ++r) {
    const bool contains = (masks[r] >> (witness_z - 1)) & 1u;
    CHECK(w.exponent(r) == before[r] + (contains ? 1 : 0));
  }
}

TEST_CASE("sample size formula") {
  // alpha = 1/2 keeps the first term at 2; the net term dominates
  CHECK(bg_sample_size(2, 1) >= 2);
  const std::size_t s1 = bg_sample_size(8, 1);
  const std::size_t s2 = bg_sample_size(8, 2);
  CHECK(s2 > s1);
  // delta = ceil(log2(8)) = 3, eps = 1/2: ratio 48, s = 48 * log2(48)
  const double ratio = 48.0;
  CHECK(s1 == static_cast<std::size_t>(std::ceil(ratio * std::log2(ratio))));
}

TEST_CASE("epsilon net empirical property") {
  // fixed weighted system: sample of the prescribed size must hit heavy
  // sets in a clear majority of seeded trials
  std::mt19937_64 rng(71);
  const std::size_t ground = 8;
  const auto masks = random_system(rng, ground, 16, 0.4);
  const std::size_t k = 2;
  const double eps = 1.0 / (2.0 * k);
  WeightTable w(masks.size());
  // skew some weights
  for (int d = 0; d < 3; ++d) w.double_weight(0);
  w.double_weight(5);
  const std::size_t s = bg_sample_size(ground, k);
  std::size_t failures = 0;
  const std::size_t trials = 1000;
  const auto cum = w.cumulative();
  const double tot = cum.back();
  for (std::size_t trial = 0; trial < trials; ++trial) {
    std::mt19937_64 trng(trial * 7919 + 13);
    std::vector<char> picked(masks.size(), 0);
    for (std::size_t t = 0; t < s; ++t) {
      const double u = next_double(trng) * tot;
      const std::size_t idx = static_cast<std::size_t>(
          std::lower_bound(cum.begin(), cum.end(), u) - cum.begin());
      picked[std::min(idx, masks.size() - 1)] = 1;
    }
    // check the epsilon-net property against every dual set (element)
    bool is_net = true;
    for (std::size_t z = 1; z <= ground && is_net; ++z) {
      double wz = 0.0;
      bool hit = false;
      for (std::size_t r = 0; r < masks.size(); ++r) {
        if (!((masks[r] >> (z - 1)) & 1u)) continue;
        wz += w.normalized(r);
        if (picked[r]) hit = true;
      }
      if (wz >= eps * tot && !hit) is_net = false;
    }
    if (!is_net) ++failures;
  }
  CHECK(failures <= trials * 6 / 10);
}
