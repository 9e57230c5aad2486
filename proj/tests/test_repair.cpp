#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "harddisk/defect.hpp"
#include "harddisk/repair.hpp"

using namespace hd;

namespace {

RepairParams desk(double K, int n) {
  RepairParams p;
  p.K = K;
  p.n = n;
  p.eps = 0.5;
  p.c = 0.05;
  p.rho = 3.0;
  p.desk_mode = true;
  return p;
}

// Lattice over the neighbourhood of R', free inside R and frozen outside,
// with the free points of the listed cubes removed.
Configuration lattice_input(const RepairParams& p, std::vector<int> evacuate) {
  const ThinBoxSpec box = repair_box(p);
  const Rect R = box.R();
  std::vector<Point> free, frozen;
  for (const Point& q : triangular_lattice(box.R_prime().expanded(p.rho + 4), 2.0 + 1e-8, 0.2)) {
    if (!R.contains(q)) {
      frozen.push_back(q);
      continue;
    }
    bool drop = false;
    for (int i : evacuate) drop = drop || box.cube(i).contains(q);
    if (!drop) free.push_back(q);
  }
  return Configuration(R, free, frozen);
}

CubeClassification classify(const RepairParams& p, const Configuration& xi) {
  return classify_cubes(xi, box_saturator(p)(xi), p.K, p.n, p.c, p.rho);
}

}  // namespace

TEST_CASE("lower height examples") {
  const ChordPoints a = lower_height({0, 5}, 3);
  CHECK(a.lower.x == doctest::Approx(0));
  CHECK(a.lower.y == doctest::Approx(2));
  CHECK(a.upper.y == doctest::Approx(8));
  const ChordPoints b = lower_height({3, 0}, 5);
  CHECK(b.h_minus == doctest::Approx(-4));
  CHECK(b.h_plus == doctest::Approx(4));
  CHECK_THROWS_AS(lower_height({5, 0}, 5), Error);
  // a shifted axis
  const ChordPoints c = lower_height({4, 0}, 5, Axis{1});
  CHECK(c.lower.x == doctest::Approx(1));
  CHECK(c.h_minus == doctest::Approx(-4));
}

TEST_CASE("elementary move examples") {
  const double eps = 0.5, K = 5;
  const Point x{1, 5};
  const Configuration lone(Rect::square(20), {x});
  const MoveResult r = elementary_move(lone, x, 1, K, eps);
  REQUIRE(std::holds_alternative<Configuration>(r));
  const Point moved = std::get<Configuration>(r).free_points()[0];
  CHECK(dist(moved, x) == doctest::Approx(0.05));
  const Point toward = lower_height(x, K).lower - x;
  CHECK(dot(moved - x, toward) / (norm(toward) * dist(moved, x)) == doctest::Approx(1.0));

  const Configuration blocked(Rect::square(20), {x, moved + Point{0, 1}});
  const MoveResult f = elementary_move(blocked, x, 1, K, eps);
  REQUIRE(std::holds_alternative<Forbidden>(f));
  CHECK(std::get<Forbidden>(f).blocker == moved + Point{0, 1});

  CHECK_THROWS_AS(elementary_move(lone, x, max_magnitude(eps) + 1, 100, eps), Error);
  CHECK(max_magnitude(eps) == 200);
}

TEST_CASE("blockers of forbidden moves lie within K of the chord point") {
  const double eps = 0.5, K = 1e5;
  RngStream g(71, 0);
  int forbidden = 0;
  for (int t = 0; t < 10000; ++t) {
    const Point x{g.uniform(-K / 2, K / 2), g.uniform(-50, 50)};
    const int m = 1 + static_cast<int>(g.below(200));
    const Point target = move_towards_axis(x, m * eps / 10, K);
    const double a = g.uniform(0, 2 * kPi), r = 2 * std::sqrt(g.uniform());
    const Point y = target + Point{r * std::cos(a), r * std::sin(a)};
    if (dist2(x, y) <= 4) continue;
    const MoveResult res = elementary_move(Configuration(Rect::square(1e6), {x, y}), x, m, K, eps);
    if (!std::holds_alternative<Forbidden>(res)) continue;
    ++forbidden;
    CHECK(dist(y, lower_height(x, K).lower) < K);
  }
  CHECK(forbidden > 1000);
}

TEST_CASE("equal moves of nearby points barely change their distance") {
  const double eps = 0.1, K = std::pow(2000 / eps, 2) + 1;
  RngStream g(72, 0);
  for (int t = 0; t < 10000; ++t) {
    const Point x{g.uniform(-K / 2, K / 2), g.uniform(-100, 100)};
    const double a = g.uniform(0, 2 * kPi), r = 10 * std::sqrt(g.uniform());
    const Point y = x + Point{r * std::cos(a), r * std::sin(a)};
    const double b = g.uniform(0, 20);
    CHECK(std::fabs(dist(move_towards_axis(x, b, K), move_towards_axis(y, b, K)) - dist(x, y)) < eps / 10);
  }
}

TEST_CASE("cube types from defects") {
  // A: high; B: high with no low cube below; D: low next to A; E: ends
  const CubeClassification c = classify_from_defects({0, 0, 0, 5, 0, 0, 0}, 2, 0.05);
  CHECK(c.type(0) == CubeType::A);
  CHECK(c.type(-1) == CubeType::D);
  CHECK(c.type(1) == CubeType::D);
  CHECK(c.type(-2) == CubeType::C);
  const CubeClassification b = classify_from_defects({5, 0, 0, 0, 0, 0, 0}, 2, 0.05);
  CHECK(b.type(-3) == CubeType::B);
}

TEST_CASE("classification of lattice inputs") {
  const RepairParams p = desk(5, 2);
  const CubeClassification clean = classify(p, lattice_input(p, {}));
  for (int i = clean.first() + 1; i < clean.last(); ++i) CHECK(clean.type(i) == CubeType::C);

  const CubeClassification mid = classify(p, lattice_input(p, {0}));
  // the refilled cube disturbs the cells along both shared edges
  CHECK(mid.defect(0) > 100);
  for (int i : {-1, 0, 1}) CHECK(mid.type(i) == CubeType::A);
  CHECK(mid.type(-2) == CubeType::D);
  CHECK(mid.type(2) == CubeType::D);

  const CubeClassification first = classify(p, lattice_input(p, {p.n * -2 + 1}));
  CHECK(first.type(first.first()) == CubeType::B);
}

TEST_CASE("repair without Type A cubes is a single state") {
  RepairParams p = desk(5, 2);
  const Configuration xi = lattice_input(p, {});
  p.delta0 = 1.0;
  const RepairTrace t = run_repair(xi, p, box_saturator(p));
  CHECK(t.length() == 1);
  CHECK(t.termination == Termination::completed);
  CHECK(t.moves.empty());
}

TEST_CASE("repair of an evacuated cube keeps every invariant") {
  RepairParams p = desk(5, 2);
  const Configuration xi = lattice_input(p, {0});
  const Saturator sat = box_saturator(p);
  const ThinBoxSpec box = repair_box(p);
  p.delta0 = defect(xi, sat(xi), box.R_prime(), p.rho).total + 1;
  const RepairTrace t = run_repair(xi, p, sat);
  CHECK(static_cast<double>(t.length()) <= t.k0);
  CHECK(t.regions_disjoint);
  std::vector<std::size_t> moved;
  for (const RepairMove& m : t.moves) moved.push_back(m.point_index);
  std::sort(moved.begin(), moved.end());
  CHECK(std::adjacent_find(moved.begin(), moved.end()) == moved.end());
  for (std::size_t s = 0; s < t.states.size(); ++s) {
    CHECK(t.state_valid[s]);
    CHECK(hard_core_valid(t.states[s]));
    CHECK(t.states[s].free_count() == xi.free_count());
  }
  const Configuration& last = t.states.back();
  const bool crossed = box_cross(last.points(), box, p.eps, 6 * p.delta0 / p.c).crossed;
  const bool empty = admits_empty_space(last.points(), p.eps, box.R(), p.eps / 4).has_value();
  if (t.termination == Termination::reported_empty_space) {
    CHECK(empty);
    REQUIRE(t.terminated_at.has_value());
  } else {
    CHECK((crossed || empty));
  }
}

TEST_CASE("random desk inputs: repeated runs are deterministic") {
  RepairParams p = desk(5, 2);
  for (int k = 0; k < 5; ++k) {
    RngStream a(73, k), b(73, k);
    const Configuration x = desk_repair_input(p, a), y = desk_repair_input(p, b);
    CHECK(x == y);
    CHECK(hard_core_valid(x));
    CHECK(x.domain() == repair_box(p).R());
    p.delta0 = 50;
    const RepairTrace t1 = run_repair(x, p, box_saturator(p)), t2 = run_repair(y, p, box_saturator(p));
    CHECK(t1.states.back() == t2.states.back());
  }
}

TEST_CASE("bounds and parameter errors") {
  CHECK(proof_K(0.1, 100) == doctest::Approx(std::pow(2000 / 0.1, 2) + 1));
  CHECK(k0_bound(10, 1, 0.05) > 1);
  CHECK(c0_bound(100, 0.5, 1, 0.05) > 0);
  RepairParams p = desk(5, 1);
  p.desk_mode = false;
  CHECK_THROWS_AS(run_repair(lattice_input(desk(5, 1), {}), p, box_saturator(p)), Error);
}

TEST_CASE("key property 3 report edge cases") {
  RepairParams p = desk(5, 1);
  p.delta0 = 100;
  RngStream g(74, 0);
  const ThinBoxSpec box = repair_box(p);
  std::vector<Point> zeta;
  for (const Point& q : triangular_lattice(box.R_prime().expanded(7), 2.0 + 1e-8))
    if (!box.R().contains(q)) zeta.push_back(q);
  const KeyProperty3Report one = verify_key_property_3(p, zeta, 40, box_saturator(p), 1, 8, g, 5);
  CHECK(one.p_continue == 1.0);  // every trace has length >= 1
  const KeyProperty3Report far = verify_key_property_3(p, zeta, 40, box_saturator(p), 100000, 4, g, 5);
  CHECK(far.p_next == 0.0);
  CHECK(far.p_continue == 0.0);
  CHECK(far.holds);
}
