#include <cmath>

#include "doctest.h"
#include "harddisk/defect.hpp"
#include "harddisk/oracles.hpp"
#include "harddisk/sampling.hpp"

using namespace hd;

namespace {

Configuration lattice(double half, double spacing, double angle = 0.0) {
  const Rect big = Rect::square(half);
  return Configuration(big, triangular_lattice(big, spacing, angle));
}

Configuration without(const Configuration& c, Point drop) {
  std::vector<Point> keep;
  for (const Point& p : c.free_points())
    if (!(p == drop)) keep.push_back(p);
  return Configuration(c.domain(), keep, {c.boundary_points().begin(), c.boundary_points().end()});
}

}  // namespace

TEST_CASE("near-optimal lattice has almost no defect") {
  const Configuration lat = lattice(20, 2.0 + 1e-9);
  CHECK(defect(lat, lat, Rect::square(10), 4.0).total <= 1e-4);
}

TEST_CASE("square lattice defect equals nine excess cells") {
  const Rect big = Rect::square(15);
  const Configuration sq(big, square_lattice(big, 2.1));
  const Rect D = Rect::square(3.0);  // sites at 0, +-2.1 in each coordinate
  const DefectReport r = defect(sq, sq, D, 4.0);
  CHECK(r.contributions.size() == 9);
  CHECK(r.total == doctest::Approx(9 * (4.41 - kHexArea)).epsilon(1e-12));
  CHECK(r.total == doctest::Approx(8.513).epsilon(1e-3));
}

TEST_CASE("removing a site from xi adds its whole cell") {
  const Configuration lat = lattice(20, 2.05, 0.1);
  const Rect D = Rect::square(5);
  const DefectReport full = defect(lat, lat, D, 4.0);
  const Point victim = full.contributions.front().site;
  const DefectReport less = defect(without(lat, victim), lat, D, 4.0);
  const double cell = full.contributions.front().cell_area;
  CHECK(cell >= kHexArea);
  CHECK(less.total - full.total == doctest::Approx(kHexArea).epsilon(1e-12));
  // The missing site now contributes its full cell area.
  for (const DefectTerm& t : less.contributions)
    if (t.site == victim) {
      CHECK_FALSE(t.member);
      CHECK(t.term == t.cell_area);
      CHECK(t.cell_area == cell);
    }
}

TEST_CASE("defect precondition errors") {
  const Configuration lat = lattice(20, 2.05);
  const Configuration sparse(Rect::square(20), {{0, 0}});
  CHECK_THROWS_AS(defect(lat, sparse, Rect::square(3), 4.0), Error);  // not a superset
  CHECK_THROWS_AS(defect(sparse, sparse, Rect::square(3), 4.0), Error);  // not saturated
}

TEST_CASE("additivity on disjoint pieces of a saturated lattice") {
  const Configuration lat = lattice(25, 2.02, 0.3);
  RngStream g(51, 0);
  for (int t = 0; t < 10; ++t) {
    const double cut = g.uniform(-2, 2);
    const Rect A{-5, -4, cut, 4}, B{cut + g.uniform(0, 1), -4, 5, 4};
    const Configuration xi = without(lat, defect(lat, lat, A, 4.0).contributions.front().site);
    const double da = defect(xi, lat, A, 4.0).total, db = defect(xi, lat, B, 4.0).total;
    const Rect both[] = {A, B};
    const double dab = defect(xi, lat, both, 4.0).total;
    CHECK(std::fabs(dab - da - db) <= 1e-9 * (1 + dab));
  }
}

TEST_CASE("property checker: positivity on dense saturated samples") {
  RngStream g(52, 0);
  McmcParams p;
  p.sweeps = 10;
  int positive = 0;
  const int n = 20;
  for (int t = 0; t < n; ++t) {
    const Configuration x = sample_hard_disk_mcmc(PoissonModelSpec{Rect::square(12), 50.0, {}}, p, g);
    const Configuration s = saturate(x, Rect::square(4), 4.0);
    DefectPropertyOptions o;
    o.rho = 4.0;
    const Rect doms[] = {Rect::square(4)};
    const PropertyReport r = check_defect_properties(x, s, doms, o);
    bool ok = true;
    for (const PropertyCheck& c : r.checks)
      if (c.property == "positivity") ok = ok && c.holds;
    positive += ok;
  }
  CHECK(positive == n);
}

TEST_CASE("point counting holds on the triangular packing of Q_20") {
  const Configuration lat = lattice(35, 2.0 + 1e-9);
  DefectPropertyOptions o;
  o.rho = 4.0;
  const Rect doms[] = {Rect::square(20)};
  const PropertyReport r = check_defect_properties(lat, lat, doms, o);
  int seen = 0;
  for (const PropertyCheck& c : r.checks)
    if (c.property == "point_counting") {
      ++seen;
      CHECK(c.holds);
    }
  CHECK(seen == 1);
}

TEST_CASE("every property checker passes on a clean lattice") {
  const Configuration lat = lattice(25, 2.0 + 1e-9, 0.2);
  DefectPropertyOptions o;
  o.rho = 4.0;
  o.eps = 0.1;
  const Rect doms[] = {Rect::square(5), Rect::centered({2, 1}, 3, 2)};
  const PropertyReport r = check_defect_properties(lat, lat, doms, o);
  for (const PropertyCheck& c : r.checks) {
    INFO(c.property, " ", c.instance, " ", c.detail);
    CHECK(c.holds);
  }
  CHECK(r.all_hold());
}

TEST_CASE("regular hexagon helper has the requested area") {
  const auto h = regular_hexagon({1, 2}, kHexArea, 0.3);
  CHECK(h.size() == 6);
  CHECK(shoelace_area(h) == doctest::Approx(kHexArea));
}

TEST_CASE("serial and parallel defect totals agree exactly") {
  const Configuration lat = lattice(25, 2.04, 0.5);
  CHECK(defect(lat, lat, Rect::square(10), 4.0, Exec::serial).total ==
        defect(lat, lat, Rect::square(10), 4.0, Exec::parallel).total);
}
