#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "harddisk/config_io.hpp"
#include "harddisk/geometry.hpp"
#include "harddisk/neighbor_grid.hpp"
#include "harddisk/oracles.hpp"
#include "harddisk/polygon.hpp"
#include "harddisk/rng.hpp"
#include "harddisk/stats.hpp"

using namespace hd;

namespace {

std::vector<Point> sorted(std::vector<Point> v) {
  std::sort(v.begin(), v.end(), lex_less);
  return v;
}

std::vector<Point> random_cloud(RngStream& g, double half, std::size_t n) {
  std::vector<Point> pts(n);
  for (Point& p : pts) p = g.uniform_in(Rect::square(half));
  return pts;
}

}  // namespace

TEST_CASE("hard-core validity uses the strict inequality") {
  CHECK(hard_core_valid(std::vector<Point>{}));
  CHECK_FALSE(hard_core_valid(std::vector<Point>{{0, 0}, {2.0, 0}}));
  CHECK(hard_core_valid(std::vector<Point>{{0, 0}, {2.1, 0}}));
  CHECK(hard_core_valid(std::vector<Point>{{0, 0}, {std::nextafter(2.0, 3.0), 0}}));
}

TEST_CASE("neighbors_within examples") {
  const Configuration empty(Rect::square(10));
  CHECK(neighbors_within(empty, {1, 1}, 10).empty());
  const Configuration one(Rect::square(10), {{0, 0}});
  CHECK(neighbors_within(one, {3, 0}, 3) == std::vector<Point>{{0, 0}});
  const Configuration two(Rect::square(10), {{0, 0}, {5, 0}});
  CHECK(neighbors_within(two, {0, 0}, 4.9) == std::vector<Point>{{0, 0}});
}

TEST_CASE("neighbors_within matches a linear scan on random queries") {
  RngStream g(11, 0);
  const auto pts = random_cloud(g, 20, 400);
  const Configuration c(Rect::square(25), pts);
  for (int q = 0; q < 1000; ++q) {
    const Point center = g.uniform_in(Rect::square(22));
    const double r = g.uniform(0, 5);
    std::vector<Point> want;
    for (const Point& p : pts)
      if (dist2(p, center) <= r * r) want.push_back(p);
    REQUIRE(sorted(neighbors_within(c, center, r)) == sorted(want));
  }
}

TEST_CASE("min_pairwise_distance examples and brute force") {
  CHECK(min_pairwise_distance(std::vector<Point>{{0, 0}, {3, 0}, {0, 3}}) == doctest::Approx(3.0));
  const auto lat = triangular_lattice(Rect::square(10), 2.2);
  CHECK(min_pairwise_distance(lat) == doctest::Approx(2.2).epsilon(1e-12));
  CHECK_THROWS_AS(min_pairwise_distance(std::vector<Point>{{0, 0}}), Error);
  RngStream g(12, 0);
  for (int t = 0; t < 30; ++t) {
    const auto pts = random_cloud(g, g.uniform(1, 30), 2 + g.below(300));
    CHECK(min_pairwise_distance(pts) == min_distance_bruteforce(pts));
  }
}

TEST_CASE("Configuration keeps free points first and rejects misplaced points") {
  const Configuration c(Rect::square(3), {{0, 0}, {2.5, 0}}, {{5, 0}});
  CHECK(c.free_count() == 2);
  CHECK(c.size() == 3);
  CHECK(c.is_free(1));
  CHECK_FALSE(c.is_free(2));
  CHECK_THROWS_AS(Configuration(Rect::square(3), {{4, 0}}), Error);
  CHECK_THROWS_AS(Configuration::checked(Rect::square(3), {{0, 0}, {1, 0}}), Error);
}

TEST_CASE("NeighborGrid and CellList agree with brute force") {
  RngStream g(13, 0);
  const auto pts = random_cloud(g, 15, 300);
  const NeighborGrid grid(pts, 2.5);
  CellList cl(Rect::square(16), 2.0);
  for (const Point& p : pts) cl.add(p);
  for (int q = 0; q < 500; ++q) {
    const Point c = g.uniform_in(Rect::square(15));
    const double lim2 = g.uniform(0, 9);
    bool brute = false;
    for (const Point& p : pts) brute = brute || dist2(p, c) <= lim2;
    REQUIRE(grid.any_within2(c, lim2) == brute);
    REQUIRE(cl.any_within2(c, lim2) == brute);
  }
  // remove / move keep the structure consistent
  cl.remove(0);
  cl.move(5, {0.5, 0.5});
  std::size_t seen = 0;
  cl.for_each_within({0.5, 0.5}, 1e-9, [&](std::size_t i, Point) { seen += i == 5; });
  CHECK(seen == 1);
  CHECK(cl.size() == pts.size() - 1);
}

TEST_CASE("triangular lattice has the requested spacing and density") {
  for (double angle : {0.0, 0.3, 1.0}) {
    const auto lat = triangular_lattice(Rect::square(12), 2.5, angle, {0.7, -0.2});
    CHECK(min_pairwise_distance(lat) == doctest::Approx(2.5).epsilon(1e-12));
    const double density = static_cast<double>(lat.size()) / (24.0 * 24.0);
    CHECK(density == doctest::Approx(2.0 / (kSqrt3 * 2.5 * 2.5)).epsilon(0.1));
  }
}

TEST_CASE("configuration JSON round trip") {
  const Configuration c(Rect::centered({1, 2}, 3, 4), {{1, 2}, {3.5, 4}}, {{-10, 0}});
  const Configuration back = configuration_from_json(to_json(c));
  CHECK(back == c);
  std::ostringstream os;
  write_csv(os, c);
  CHECK(os.str().rfind("x,y,kind\n", 0) == 0);
}

TEST_CASE("rng streams are reproducible and distinct") {
  RngStream a(5, 1), b(5, 1), c(5, 2);
  const double x = a.uniform();
  CHECK(x == b.uniform());
  CHECK(x != c.uniform());
  RngStream d(5, 3);
  double mean = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) mean += static_cast<double>(d.poisson(3.0)) / n;
  CHECK(mean == doctest::Approx(3.0).epsilon(0.02));
}

TEST_CASE("Wilson interval contains the frequency") {
  for (std::size_t k : {0u, 1u, 50u, 99u, 100u}) {
    const Interval ci = wilson_interval(k, 100);
    CHECK(ci.lo <= k / 100.0);
    CHECK(ci.hi >= k / 100.0);
    CHECK(ci.lo >= 0.0);
    CHECK(ci.hi <= 1.0);
  }
  CHECK(within_sigma(0.0, 0.0, 0.0, 0.0));
  CHECK_FALSE(within_sigma(1.0, 0.1, 0.0, 0.1));
}

TEST_CASE("polygon clipping and Hausdorff distance") {
  ConvexPolygon sq = ConvexPolygon::from_rect(Rect::square(1), -1);
  CHECK(sq.area() == doctest::Approx(4.0));
  sq.clip({1, 0}, 0.0, 7);
  CHECK(sq.area() == doctest::Approx(2.0));
  CHECK(sq.has_tag(7));
  const std::vector<Point> a{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const std::vector<Point> b{{0, 0}, {2, 0}, {2, 1}, {0, 1}};
  CHECK(hausdorff_convex(a, b) == doctest::Approx(1.0));
  CHECK(segments_intersect({0, 0}, {2, 2}, {0, 2}, {2, 0}));
  CHECK_FALSE(segments_intersect({0, 0}, {1, 0}, {0, 1}, {1, 1}));
}
