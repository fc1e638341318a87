#include "doctest.h"

#include <cmath>
#include <random>

#include "subtraj/curve.hpp"
#include "support/test_oracles.hpp"

using namespace subtraj;

TEST_CASE("chord-length parameterization") {
  const PolygonalCurve two = build_curve({{0, 0}, {1, 0}});
  CHECK(two.params() == std::vector<double>{0.0, 1.0});

  const PolygonalCurve three = build_curve({{0, 0}, {1, 0}, {3, 0}});
  REQUIRE(three.size() == 3);
  CHECK(three.param(1) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(three.param(2) == 1.0);
}

TEST_CASE("consecutive duplicates are removed") {
  const PolygonalCurve c = build_curve({{0, 0}, {0, 0}, {1, 0}});
  REQUIRE(c.size() == 2);
  CHECK(c.params() == std::vector<double>{0.0, 1.0});
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(build_curve({}), std::invalid_argument);
  CHECK_THROWS_AS(build_curve({{0, 0}, {0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(build_curve({{0, 0}, {1, 0}}, {0.0, 0.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_curve({{0, 0}, {1, 0}, {2, 0}}, {0.0, 0.7, 0.3}),
                  std::invalid_argument);
}

TEST_CASE("point_at anchors and interpolation") {
  const PolygonalCurve c = build_curve({{0, 0}, {1, 0}, {3, 0}});
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Point p = c.point_at(c.param(i));
    CHECK(p[0] == doctest::Approx(c.vertex(i)[0]));
    CHECK(p[1] == doctest::Approx(c.vertex(i)[1]));
  }
  const PolygonalCurve seg = build_curve({{0, 0}, {2, 0}});
  CHECK(seg.point_at(0.5)[0] == doctest::Approx(1.0));
  CHECK(c.point_at(2.0 / 3.0)[0] == doctest::Approx(2.0));
  CHECK_THROWS_AS(c.point_at(1.5), std::invalid_argument);
}

TEST_CASE("subcurve basics") {
  const PolygonalCurve seg = build_curve({{0, 0}, {2, 0}});
  const PolygonalCurve mid = seg.subcurve(0.25, 0.75);
  REQUIRE(mid.size() == 2);
  CHECK(mid.vertex(0)[0] == doctest::Approx(0.5));
  CHECK(mid.vertex(1)[0] == doctest::Approx(1.5));

  const PolygonalCurve pt = seg.subcurve(0.5, 0.5);
  CHECK(pt.size() == 1);
  CHECK(pt.vertex(0)[0] == doctest::Approx(1.0));

  CHECK_THROWS_AS(seg.subcurve(0.7, 0.2), std::invalid_argument);
}

TEST_CASE("subcurve reparameterization identity") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const PolygonalCurve c = testing::random_curve(rng, 8);
    double a = next_double(rng), b = next_double(rng);
    if (a > b) std::swap(a, b);
    if (b - a < 1e-6) b = std::min(1.0, a + 0.1);
    const PolygonalCurve sub = c.subcurve(a, b);
    for (int s = 0; s <= 10; ++s) {
      const double t = a + (b - a) * s / 10.0;
      const Point expect = c.point_at(t);
      const Point got = sub.point_at((t - a) / (b - a));
      CHECK(std::abs(expect[0] - got[0]) < 1e-9);
      CHECK(std::abs(expect[1] - got[1]) < 1e-9);
    }
  }
}

TEST_CASE("subcurve concatenation traces the same points") {
  std::mt19937_64 rng(7);
  const PolygonalCurve c = testing::random_curve(rng, 9);
  const double a = 0.13, mid = 0.55, b = 0.91;
  const PolygonalCurve left = c.subcurve(a, mid);
  const PolygonalCurve right = c.subcurve(mid, b);
  const PolygonalCurve whole = c.subcurve(a, b);
  const PolygonalCurve glued = concat_curves(left, right);
  // same point sets: sample both densely and compare pointwise by arclength
  const auto sa = testing::sample_curve(glued, 50);
  const auto sb = testing::sample_curve(whole, 50);
  CHECK(testing::discrete_frechet(sa, sb) < 1e-9);
}

TEST_CASE("chord-length parameters are rigid-motion invariant") {
  std::mt19937_64 rng(3);
  const PolygonalCurve c = testing::random_curve(rng, 10);
  const double ang = 1.1;
  std::vector<Point> moved;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double x = c.vertex(i)[0], y = c.vertex(i)[1];
    moved.push_back({x * std::cos(ang) - y * std::sin(ang) + 5.0,
                     x * std::sin(ang) + y * std::cos(ang) - 2.0});
  }
  const PolygonalCurve d = build_curve(moved);
  REQUIRE(c.size() == d.size());
  for (std::size_t i = 0; i < c.size(); ++i)
    CHECK(c.param(i) == doctest::Approx(d.param(i)).epsilon(1e-12));
}

TEST_CASE("breakpoint set validation") {
  CHECK_THROWS_AS(BreakpointSet({0.0}), std::invalid_argument);
  CHECK_THROWS_AS(BreakpointSet({0.0, 0.5, 0.5, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(BreakpointSet({0.1, 1.0}), std::invalid_argument);
  const BreakpointSet bps({0.0, 0.25, 1.0});
  CHECK(bps.count() == 3);
  CHECK(bps.ground_size() == 2);
  CHECK(bps.value(2) == 0.25);
}
