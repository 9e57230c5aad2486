#include <cmath>

#include "doctest.h"
#include "harddisk/defect.hpp"
#include "harddisk/oracles.hpp"
#include "harddisk/sampling.hpp"
#include "harddisk/voronoi.hpp"

using namespace hd;

TEST_CASE("triangular lattice cells are regular hexagons of area 2 sqrt3") {
  const auto lat = triangular_lattice(Rect::square(12), 2.0 + 1e-9, 0.4, {0.3, 0.1});
  const auto cells = voronoi_cells(lat, Rect::square(6));
  REQUIRE(cells.size() > 20);
  for (const VoronoiCell& c : cells) {
    REQUIRE(c.bounded);
    CHECK(c.polygon.size() == 6);
    CHECK(c.area == doctest::Approx(kHexArea).epsilon(1e-6));
    CHECK(hexagon_proximity(c) < 1e-6);
  }
}

TEST_CASE("square lattice cells are squares of area 4.41") {
  const auto lat = square_lattice(Rect::square(12), 2.1);
  const auto cells = voronoi_cells(lat, Rect::square(6));
  REQUIRE(!cells.empty());
  for (const VoronoiCell& c : cells) {
    CHECK(c.bounded);
    CHECK(c.polygon.size() == 4);
    CHECK(c.area == doctest::Approx(4.41).epsilon(1e-12));
    CHECK(hexagon_proximity(c) > 0.1);
  }
}

TEST_CASE("a lone site has an unbounded cell") {
  const std::vector<Point> one{{0, 0}};
  const auto cells = voronoi_cells(one, Rect::square(1));
  REQUIRE(cells.size() == 1);
  CHECK_FALSE(cells[0].bounded);
  CHECK(std::isnan(cells[0].area));
}

TEST_CASE("jittered lattice cells stay close to the hexagon") {
  RngStream g(41, 0);
  auto lat = triangular_lattice(Rect::square(10), 2.01);
  for (Point& p : lat) p = p + Point{g.uniform(-1e-3, 1e-3), g.uniform(-1e-3, 1e-3)};
  for (const VoronoiCell& c : voronoi_cells(lat, Rect::square(4))) CHECK(hexagon_proximity(c) <= 1e-2);
}

TEST_CASE("cells tile the region: areas of a clipped tessellation sum to the area") {
  RngStream g(42, 0);
  for (int t = 0; t < 10; ++t) {
    std::vector<Point> pts(50 + g.below(100));
    const Rect R = Rect::square(6);
    for (Point& p : pts) p = g.uniform_in(R);
    const NeighborGrid grid(pts, kVoronoiReach);
    double total = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) total += clipped_cell(grid, i, &R, 40.0, 20.0).area();
    CHECK(total == doctest::Approx(R.area()).epsilon(1e-9));
  }
}

TEST_CASE("coverage radius agrees with the brute-force largest empty circle") {
  RngStream g(43, 0);
  for (int t = 0; t < 40; ++t) {
    const Rect region = Rect::square(g.uniform(1.0, 4.0));
    std::vector<Point> pts(10 + g.below(40));
    for (Point& p : pts) p = g.uniform_in(region.expanded(1.5));
    const double brute = max_empty_circle_bruteforce(pts, region);
    const double cov = coverage_radius(NeighborGrid(pts, 2.5), region);
    if (brute <= 4.0)
      CHECK(cov == doctest::Approx(brute).epsilon(1e-9));
    else
      CHECK(cov > 4.0);
  }
}

TEST_CASE("saturated configurations have every bounded cell at least 2 sqrt3") {
  RngStream g(44, 0);
  for (int t = 0; t < 10; ++t) {
    McmcParams p;
    p.sweeps = 10;
    const Configuration x = sample_hard_disk_mcmc(PoissonModelSpec{Rect::square(10), g.uniform(0.2, 8.0), {}}, p, g);
    const Configuration s = saturate(x, Rect::square(10), 3.0);
    CHECK(is_saturated(NeighborGrid(s.points(), 2.0), Rect::square(10), 3.0));
    for (const VoronoiCell& c : voronoi_cells(s, Rect::square(10)))
      if (c.bounded) CHECK(c.area >= kHexArea - 1e-9);
  }
}

TEST_CASE("serial and parallel cells are identical") {
  const auto lat = triangular_lattice(Rect::square(15), 2.3, 0.2);
  const auto a = voronoi_cells(lat, Rect::square(10), Exec::serial);
  const auto b = voronoi_cells(lat, Rect::square(10), Exec::parallel);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].polygon == b[i].polygon);
}
