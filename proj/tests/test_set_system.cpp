#include "doctest.h"

#include <random>
#include <sstream>

#include "subtraj/frechet.hpp"
#include "subtraj/set_system.hpp"
#include "support/test_oracles.hpp"

using namespace subtraj;

namespace {

// Definitional membership: z in r_{i,j} iff some pair (i', j') with
// i' <= z < j' has d_F(P[t_i', t_j'], mu) within the radius.
bool brute_membership(const PolygonalCurve& p, const BreakpointSet& bps,
                      const PolygonalCurve& mu, std::size_t z, double radius) {
  const std::size_t m = bps.count();
  for (std::size_t ip = 1; ip <= z; ++ip)
    for (std::size_t jp = z + 1; jp <= m; ++jp) {
      const PolygonalCurve sub = p.subcurve(bps.value(ip), bps.value(jp));
      if (decide_frechet(sub, mu, radius)) return true;
    }
  return false;
}

}  // namespace

TEST_CASE("single piece ground set") {
  const PolygonalCurve p = build_curve({{0, 0}, {1, 0}, {2, 1}});
  const BreakpointSet bps({0.0, 1.0});
  const double delta = 0.6;
  const IncidenceMatrix mat = build_r0(p, bps, delta, 2);
  REQUIRE(mat.row_count() == 1);
  const PolygonalCurve mu =
      mu_simplification(p, bps, 1, 2, 2, 1e-7);
  CHECK(mat.query(0, 1) == decide_frechet(p, mu, 3 * delta));
}

TEST_CASE("r0 bits match the definitional oracle") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 6; ++t) {
    const PolygonalCurve p = testing::random_curve(rng, 7);
    const BreakpointSet bps = testing::every_vertex_breakpoints(p);
    const double delta = 0.3 + next_double(rng);
    const IncidenceMatrix mat = build_r0(p, bps, delta, 2);
    for (std::size_t r = 0; r < mat.row_count(); ++r) {
      const CandidatePair pair = mat.row_pair(r);
      const PolygonalCurve mu = mu_simplification(
          p, bps, pair.i, pair.j, 2, std::max(1e-9, 1e-6 * delta));
      for (std::size_t z = 1; z <= mat.ground_size(); ++z) {
        CHECK(mat.query(r, z) ==
              brute_membership(p, bps, mu, z, 3 * delta));
      }
    }
  }
}

TEST_CASE("rows are unions of index intervals") {
  std::mt19937_64 rng(17);
  const PolygonalCurve p = testing::random_curve(rng, 8);
  const BreakpointSet bps = testing::every_vertex_breakpoints(p);
  const IncidenceMatrix mat = build_r0(p, bps, 0.8, 2, {true});
  for (std::size_t r = 0; r < mat.row_count(); ++r) {
    for (std::size_t z = 1; z <= mat.ground_size(); ++z) {
      if (!mat.query(r, z)) continue;
      const auto w = mat.witness(r, z);
      REQUIRE(w.has_value());
      CHECK(w->i <= z);
      CHECK(z < w->j);
      // every piece inside the witness interval is set as well
      for (std::size_t q = w->i; q < w->j; ++q) CHECK(mat.query(r, q));
    }
  }
}

TEST_CASE("witnesses certify set bits") {
  std::mt19937_64 rng(19);
  const PolygonalCurve p = testing::random_curve(rng, 7);
  const BreakpointSet bps = testing::every_vertex_breakpoints(p);
  const double delta = 0.7;
  const IncidenceMatrix mat = build_r0(p, bps, delta, 2, {true});
  for (std::size_t r = 0; r < mat.row_count(); ++r) {
    const CandidatePair pair = mat.row_pair(r);
    const PolygonalCurve mu = mu_simplification(
        p, bps, pair.i, pair.j, 2, std::max(1e-9, 1e-6 * delta));
    for (std::size_t z = 1; z <= mat.ground_size(); ++z) {
      if (!mat.query(r, z)) continue;
      const auto w = mat.witness(r, z);
      REQUIRE(w.has_value());
      const PolygonalCurve sub = p.subcurve(bps.value(w->i), bps.value(w->j));
      CHECK(decide_frechet(sub, mu, 3 * delta));
    }
  }
}

TEST_CASE("exact oracle reproduces r0 bit for bit") {
  std::mt19937_64 rng(23);
  const PolygonalCurve p = testing::random_curve(rng, 6);
  const BreakpointSet bps = testing::every_vertex_breakpoints(p);
  const double delta = 0.9;
  const IncidenceMatrix r0 = build_r0(p, bps, delta, 2);
  const ExactSubcurveOracle oracle(p, bps, 1e-9);
  const IncidenceMatrix r1 = build_r1(p, bps, delta, 2, oracle);
  REQUIRE(r0.row_count() == r1.row_count());
  CHECK(r0.threshold() == r1.threshold());
  for (std::size_t r = 0; r < r0.row_count(); ++r)
    for (std::size_t z = 1; z <= r0.ground_size(); ++z)
      CHECK(r0.query(r, z) == r1.query(r, z));
}

namespace {

class ScaledOracle : public SubcurveDistanceOracle {
 public:
  ScaledOracle(const PolygonalCurve& p, const BreakpointSet& bps, double c)
      : exact_(p, bps, 1e-9), c_(c) {}
  double constant() const override { return c_; }
  double distance(std::size_t i, std::size_t j,
                  const PolygonalCurve& q) const override {
    return c_ * exact_.distance(i, j, q);
  }

 private:
  ExactSubcurveOracle exact_;
  double c_;
};

}  // namespace

TEST_CASE("r1 with a c=2 oracle contains r0 and matches its own radius") {
  std::mt19937_64 rng(29);
  const PolygonalCurve p = testing::random_curve(rng, 6);
  const BreakpointSet bps = testing::every_vertex_breakpoints(p);
  const double delta = 0.8;
  const IncidenceMatrix r0 = build_r0(p, bps, delta, 2);
  const ScaledOracle oracle(p, bps, 2.0);
  const IncidenceMatrix r1 = build_r1(p, bps, delta, 2, oracle);
  // inflation: threshold monotonicity gives rowwise containment
  for (std::size_t r = 0; r < r0.row_count(); ++r)
    for (std::size_t z = 1; z <= r0.ground_size(); ++z)
      if (r0.query(r, z)) CHECK(r1.query(r, z));
  // replay: membership matches the oracle's own reported distances
  const double radius = r1.threshold();
  for (std::size_t r = 0; r < r1.row_count(); ++r) {
    const CandidatePair pair = r1.row_pair(r);
    const PolygonalCurve mu = mu_simplification(
        p, bps, pair.i, pair.j, 2, std::max(1e-9, 1e-6 * delta));
    for (std::size_t z = 1; z <= r1.ground_size(); ++z) {
      bool expect = false;
      for (std::size_t ip = 1; ip <= z && !expect; ++ip)
        for (std::size_t jp = z + 1; jp <= bps.count() && !expect; ++jp)
          expect = oracle.distance(ip, jp, mu) <= radius + geom_epsilon();
      CHECK(r1.query(r, z) == expect);
    }
  }
}

TEST_CASE("query validates indices") {
  const PolygonalCurve p = build_curve({{0, 0}, {1, 0}, {2, 0}});
  const BreakpointSet bps = testing::every_vertex_breakpoints(p);
  const IncidenceMatrix mat = build_r0(p, bps, 0.5, 2);
  CHECK_THROWS_AS(mat.query(0, 0), std::out_of_range);
  CHECK_THROWS_AS(mat.query(0, 99), std::out_of_range);
  CHECK_THROWS_AS(mat.query(99, 1), std::out_of_range);
}

TEST_CASE("binary dump and load round trip") {
  std::mt19937_64 rng(31);
  const PolygonalCurve p = testing::random_curve(rng, 7);
  const BreakpointSet bps = testing::every_vertex_breakpoints(p);
  const IncidenceMatrix mat = build_r0(p, bps, 0.6, 2);
  std::stringstream buf;
  mat.dump(buf);
  const std::string bytes = buf.str();
  CHECK(bytes.substr(0, 4) == "STRJ");
  std::stringstream in(bytes);
  const IncidenceMatrix back = IncidenceMatrix::load(in);
  REQUIRE(back.row_count() == mat.row_count());
  CHECK(back.threshold() == mat.threshold());
  CHECK(back.ground_size() == mat.ground_size());
  for (std::size_t r = 0; r < mat.row_count(); ++r) {
    CHECK(back.row_pair(r) == mat.row_pair(r));
    for (std::size_t z = 1; z <= mat.ground_size(); ++z)
      CHECK(back.query(r, z) == mat.query(r, z));
  }
  // second serialization is byte-identical
  std::stringstream buf2;
  back.dump(buf2);
  CHECK(buf2.str() == bytes);
}
