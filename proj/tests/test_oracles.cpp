#include <cmath>

#include "doctest.h"
#include "harddisk/oracles.hpp"

using namespace hd;

namespace {

// Both sides as probabilities over all 2^|I| outcomes of independent
// coins: lhs keeps only the coins in J, rhs keeps all of them.
std::pair<double, double> coin_sums(std::uint32_t J, std::span<const double> a, const UpwardClosedFamily& f) {
  const int n = f.ground;
  double lhs = 0, rhs = 0;
  for (std::uint32_t Y = 0; Y < (1u << n); ++Y) {
    double w = 1;
    for (int i = 0; i < n; ++i) w *= (Y >> i) & 1 ? a[static_cast<std::size_t>(i)] : 1 - a[static_cast<std::size_t>(i)];
    lhs += f.contains(Y & J) ? w : 0;
    rhs += f.contains(Y) ? w : 0;
  }
  return {lhs, rhs};
}

// A2 of an a x b rectangle with a, b >= 2: |D|^2 minus the pairs within 2,
// whose measure is the disk integral of (a - |z1|)(b - |z2|).
double rectangle_acceptance(double a, double b) {
  return a * a * b * b - 4 * kPi * a * b + 32 * (a + b) / 3 - 8;
}

}  // namespace

TEST_CASE("upward-closed family counts are Dedekind numbers") {
  const std::size_t dedekind[] = {2, 3, 6, 20, 168};
  for (int n = 0; n <= 4; ++n) {
    const auto fams = UpwardClosedFamily::all(n);
    CHECK(fams.size() == dedekind[n]);
    for (const auto& f : fams) {
      // closure under supersets, checked over all pairs
      bool closed = true;
      for (std::uint32_t X = 0; X < (1u << n); ++X)
        for (std::uint32_t Y = 0; Y < (1u << n); ++Y)
          if ((X & Y) == X && f.contains(X) && !f.contains(Y)) closed = false;
      CHECK(closed);
      CHECK(f.is_upward_closed());
    }
  }
}

TEST_CASE("index elimination examples") {
  RngStream g(91, 0);
  const UpwardClosedFamily empty{4, {}};
  const std::vector<double> a{0.2, 0.5, 0.9, 0.3};
  const IndexEliminationResult z = index_elimination_check(0b0011, a, empty);
  CHECK(z.lhs == 0.0);
  CHECK(z.rhs == 0.0);
  CHECK(z.holds);
  const std::uint32_t gens[] = {0b0101, 0b1010};
  const UpwardClosedFamily f = UpwardClosedFamily::closure(4, gens);
  const IndexEliminationResult same = index_elimination_check(0b1111, a, f);
  CHECK(same.lhs == doctest::Approx(same.rhs).epsilon(1e-15));
  const UpwardClosedFamily broken{3, {0b001}};
  CHECK_THROWS_AS(index_elimination_check(0b001, std::vector<double>{0.5, 0.5, 0.5}, broken), Error);
}

TEST_CASE("index elimination matches the coin oracle and never fails") {
  RngStream g(92, 0);
  for (int t = 0; t < 20000; ++t) {
    const int n = 5;
    const UpwardClosedFamily f = UpwardClosedFamily::random(n, g);
    std::vector<double> a(n);
    for (double& v : a) v = g.uniform();
    const auto J = static_cast<std::uint32_t>(g.below(1u << n));
    const IndexEliminationResult r = index_elimination_check(J, a, f);
    const auto [lhs, rhs] = coin_sums(J, a, f);
    CHECK(r.lhs == doctest::Approx(lhs).epsilon(1e-12));
    CHECK(r.rhs == doctest::Approx(rhs).epsilon(1e-12));
    CHECK(r.holds);
  }
}

TEST_CASE("triangular packing of Q_10") {
  const double spacing = 2 + 1e-9;
  const Configuration c = triangular_packing(10, spacing);
  CHECK(hard_core_valid(c));
  CHECK(min_distance_bruteforce(c.points()) == doctest::Approx(spacing).epsilon(1e-12));
  const double C = packing_deficit_constant(10, c.size());
  CHECK(C <= 4);
  CHECK(static_cast<double>(c.size()) >= 400 / kHexArea - 10 * C - 1e-9);
  CHECK_THROWS_AS(triangular_packing(10, 2.0), Error);
}

TEST_CASE("two-point acceptance: exact cases") {
  const Rect small[] = {Rect::square(0.5)};
  CHECK(exact_two_point_acceptance(small).value == 0.0);
  for (const auto& [a, b] : {std::pair{3.0, 5.0}, std::pair{2.0, 2.0}, std::pair{4.0, 2.5}}) {
    const Rect d[] = {Rect{0, 0, a, b}};
    const Quadrature q = exact_two_point_acceptance(d);
    CHECK(q.value == doctest::Approx(rectangle_acceptance(a, b)).epsilon(1e-6));
    CHECK(q.value <= a * a * b * b);
  }
  // far apart pieces: every cross pair is accepted
  const Rect s1{0, 0, 1, 2}, s2{10, 0, 13, 2};
  const Rect both[] = {s1, s2}, one[] = {s1}, two[] = {s2};
  const double glued = exact_two_point_acceptance(both).value;
  const double parts = exact_two_point_acceptance(one).value + exact_two_point_acceptance(two).value;
  CHECK(glued == doctest::Approx(parts + 2 * s1.area() * s2.area()).epsilon(1e-9));
}

TEST_CASE("quadrature and Monte Carlo agree on random small domains") {
  RngStream g(93, 0);
  for (int t = 0; t < 20; ++t) {
    std::vector<Rect> d;
    const Rect a = Rect::centered({0, 0}, g.uniform(0.5, 2), g.uniform(0.5, 2));
    d.push_back(a);
    if (t % 2) d.push_back(Rect::centered({a.x1 + g.uniform(1.5, 3), 0}, g.uniform(0.3, 1), g.uniform(0.3, 1.5)));
    const Quadrature q = exact_two_point_acceptance(d);
    const McEstimate mc = monte_carlo_two_point_acceptance(d, g, 200000);
    double area = 0;
    for (const Rect& r : d) area += r.area();
    CHECK(q.value <= area * area + 1e-9);
    CHECK(std::fabs(q.value - mc.value) <= 4 * mc.se + q.error + 1e-9);
  }
}

TEST_CASE("brute-force validators") {
  const std::vector<Point> pts{{0, 0}, {3, 4}, {1, 0}};
  CHECK(min_distance_bruteforce(pts) == 1.0);
  const std::vector<Point> square{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
  CHECK(winding_by_angles(square) == doctest::Approx(1.0));
  CHECK(winding_by_angles(square, {5, 5}) == doctest::Approx(0.0));
  const std::vector<Point> site{{0, 0}};
  CHECK(max_empty_circle_bruteforce(site, Rect::square(1)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
  const auto labels = components_bruteforce(pts, 0.5);
  CHECK(labels[0] == labels[2]);
  CHECK(labels[0] != labels[1]);
}
