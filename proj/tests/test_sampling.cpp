#include <array>
#include <cmath>

#include "doctest.h"
#include "harddisk/oracles.hpp"
#include "harddisk/sampling.hpp"
#include "harddisk/stats.hpp"

using namespace hd;

namespace {

// Free area of `d` given the boundary points, by midpoint rule.
double free_area(const Rect& d, const std::vector<Point>& boundary, int grid = 1000) {
  std::size_t ok = 0;
  for (int a = 0; a < grid; ++a)
    for (int b = 0; b < grid; ++b) {
      const Point y{d.x0 + (a + 0.5) * d.width() / grid, d.y0 + (b + 0.5) * d.height() / grid};
      bool free = true;
      for (const Point& q : boundary) free = free && dist2(y, q) > 4.0;
      ok += free;
    }
  return d.area() * static_cast<double>(ok) / (static_cast<double>(grid) * grid);
}

}  // namespace

TEST_CASE("Poisson point process counts and independence") {
  RngStream g(21, 0);
  for (int i = 0; i < 100; ++i) CHECK(sample_ppp(Rect::square(3), 0.0, g).empty());
  const int n = 100000;
  double mean = 0, ma = 0, mb = 0, mab = 0;
  const Rect A{-1, -1, 0, 1}, B{0, -1, 1, 1};
  for (int i = 0; i < n; ++i) {
    const auto pts = sample_ppp(Rect::square(1), 2.5, g);
    mean += static_cast<double>(pts.size()) / n;
    double ca = 0, cb = 0;
    for (const Point& p : pts) (A.contains(p) ? ca : cb) += 1;
    ma += ca / n;
    mb += cb / n;
    mab += ca * cb / n;
  }
  CHECK(std::fabs(mean - 10.0) < 0.3);
  // Var(N_A N_B) = E[N_A^2] E[N_B^2] = (5 + 25)^2 under independence.
  const double cov = mab - ma * mb;
  CHECK(std::fabs(cov) < 3 * std::sqrt(900.0 / n) + 0.05);
}

TEST_CASE("rejection sampler on a sub-diameter square holds at most one point") {
  RngStream g(22, 0);
  const PoissonModelSpec spec{Rect::square(0.5), 5.0, {}};
  for (int i = 0; i < 2000; ++i) CHECK(sample_poisson_hard_disk_rejection(spec, g).free_count() <= 1);
}

TEST_CASE("boundary point near Q_0.5 leaves only a corner sliver free") {
  // The point (1.5, 0) is more than 2 away from the corners (-0.5, +-0.5),
  // so a thin sliver of Q_0.5 stays available. Its area is the oracle.
  const std::vector<Point> zeta{{1.5, 0.0}};
  const Rect D = Rect::square(0.5);
  const double A = free_area(D, zeta);
  CHECK(A > 0.0);
  CHECK(A < 0.03);
  const double lambda = 4.0;
  RngStream g(23, 0);
  const int n = 50000;
  int occupied = 0;
  for (int i = 0; i < n; ++i) {
    const Configuration c = sample_poisson_hard_disk_rejection(PoissonModelSpec{D, lambda, zeta}, g);
    for (const Point& p : c.free_points()) REQUIRE(dist2(p, zeta[0]) > 4.0);
    occupied += c.free_count() == 1;
  }
  const double f = static_cast<double>(occupied) / n;
  const double want = lambda * A / (1 + lambda * A);
  CHECK(within_sigma(f, bernoulli_se(f, n), want, 1e-4));
}

TEST_CASE("tiny intensity gives the empty configuration") {
  RngStream g(24, 0);
  int empty = 0;
  for (int i = 0; i < 10000; ++i)
    empty += sample_poisson_hard_disk_rejection(PoissonModelSpec{Rect::square(1), 1e-6, {}}, g).free_count() == 0;
  CHECK(empty >= 9999);
}

TEST_CASE("uniform rejection sampler: zero and one point") {
  RngStream g(25, 0);
  const Configuration z = sample_uniform_hard_disk_rejection(UniformModelSpec{Rect::square(2), 0, {{3, 0}}}, g);
  CHECK(z.free_count() == 0);
  CHECK(z.size() == 1);
  // One point is uniform: chi-square on a 4x4 histogram, 15 dof, 1% level 30.58.
  std::array<int, 16> hist{};
  const int n = 16000;
  for (int i = 0; i < n; ++i) {
    const Configuration c = sample_uniform_hard_disk_rejection(UniformModelSpec{Rect::square(5), 1, {}}, g);
    const Point p = c.free_points()[0];
    const int a = std::min(3, static_cast<int>((p.x + 5) / 2.5)), b = std::min(3, static_cast<int>((p.y + 5) / 2.5));
    ++hist[static_cast<std::size_t>(4 * b + a)];
  }
  double chi2 = 0;
  for (int h : hist) chi2 += (h - n / 16.0) * (h - n / 16.0) / (n / 16.0);
  CHECK(chi2 < 30.58);
}

TEST_CASE("two-point uniform model matches the quadrature distance law") {
  // Pr(|x-y| > r | |x-y| > 2) = (r/2)^4 A2(D * 2/r) / A2(D) by scaling.
  const Rect D = Rect::square(2);
  const Rect Ds[] = {D};
  const double base = exact_two_point_acceptance(Ds).value;
  RngStream g(26, 0);
  const int n = 40000;
  std::vector<double> d(n);
  for (double& x : d) {
    const Configuration c = sample_uniform_hard_disk_rejection(UniformModelSpec{D, 2, {}}, g);
    x = dist(c.free_points()[0], c.free_points()[1]);
  }
  for (double r : {2.5, 3.0, 3.5, 4.0}) {
    const double s = 2.0 / r;
    const Rect scaled[] = {Rect{D.x0 * s, D.y0 * s, D.x1 * s, D.y1 * s}};
    const double want = std::pow(r / 2, 4) * exact_two_point_acceptance(scaled).value / base;
    const double f = static_cast<double>(std::count_if(d.begin(), d.end(), [&](double x) { return x > r; })) / n;
    CHECK(within_sigma(f, bernoulli_se(f, n), want, 1e-6));
  }
}

TEST_CASE("MCMC reproduces the one-point law and keeps the hard core") {
  RngStream g(27, 0);
  McmcParams p;
  p.sweeps = 50;
  const int n = 20000;
  int ones = 0;
  for (int i = 0; i < n; ++i) {
    const Configuration c = sample_hard_disk_mcmc(PoissonModelSpec{Rect::square(0.5), 3.0, {}}, p, g);
    REQUIRE(c.free_count() <= 1);
    ones += c.free_count();
  }
  const double f = static_cast<double>(ones) / n;
  CHECK(within_sigma(f, bernoulli_se(f, n), 0.75, 0.0));
}

TEST_CASE("translate proposal is symmetric") {
  RngStream g(28, 0);
  for (int i = 0; i < 100; ++i) {
    const Point a = g.uniform_in(Rect::square(3)), b = a + Point{g.uniform(-0.2, 0.2), g.uniform(-0.2, 0.2)};
    CHECK(translate_proposal_density(a, b, 2, 0.3) == translate_proposal_density(b, a, 2, 0.3));
  }
}

TEST_CASE("MCMC and rejection agree on the count law of Q_1") {
  const int n = 20000;
  std::array<double, 4> fr{}, fm{};
  RngStream g(29, 0);
  McmcParams p;
  p.sweeps = 30;
  for (int i = 0; i < n; ++i) {
    const auto a = sample_poisson_hard_disk_rejection(PoissonModelSpec{Rect::square(1), 1.0, {}}, g).free_count();
    const auto b = sample_hard_disk_mcmc(PoissonModelSpec{Rect::square(1), 1.0, {}}, p, g).free_count();
    if (a < 4) fr[a] += 1.0 / n;
    if (b < 4) fm[b] += 1.0 / n;
  }
  for (int k = 0; k < 4; ++k) CHECK(within_sigma(fr[k], bernoulli_se(fr[k], n), fm[k], bernoulli_se(fm[k], n)));
}

TEST_CASE("canonical chain keeps the count and validity, reruns are identical") {
  const UniformModelSpec spec{Rect::square(6), 12, {{7.5, 0}, {0, -7.1}}};
  const McmcParams p = McmcParams::canonical(30);
  RngStream a(30, 1), b(30, 1);
  const Configuration x = sample_hard_disk_mcmc(spec, p, a), y = sample_hard_disk_mcmc(spec, p, b);
  CHECK(x.free_count() == 12);
  CHECK(hard_core_valid(x));
  CHECK(x == y);
}

TEST_CASE("saturation examples") {
  const Configuration empty(Rect::square(10));
  const Configuration s = saturate(empty, Rect::square(5), 3.0);
  CHECK(hard_core_valid(s));
  // Fine scan: every point of the rho-neighbourhood is within 2 of the output.
  std::size_t uncovered = 0;
  for (double x = -8; x <= 8; x += 0.05)
    for (double y = -8; y <= 8; y += 0.05) {
      bool covered = false;
      for (const Point& p : s.points()) covered = covered || dist2(p, {x, y}) <= 4.0 + 1e-8;
      uncovered += !covered;
    }
  CHECK(uncovered == 0);
  std::size_t inside = 0;
  for (const Point& p : s.points()) inside += Rect::square(5).contains(p);
  CHECK(static_cast<double>(inside) >= 100.0 / kHexArea - 4 * 5);
  // already saturated: unchanged
  CHECK(saturate(s, Rect::square(5), 3.0) == s);
}

TEST_CASE("mixture weights examples") {
  RngStream g(31, 0);
  const MixtureWeights half = mixture_weights(Rect::square(0.5), 3.0, {}, g, 20000, 2000);
  CHECK(half.s_max == 1);
  CHECK(half.volume[0].value == 1.0);
  CHECK(half.volume[1].value == doctest::Approx(1.0));
  CHECK(half.probability[1].value == doctest::Approx(0.75));
  const MixtureWeights unit = mixture_weights(Rect::square(1), 1.0, {}, g, 20000, 2000);
  double total = 0;
  for (const auto& w : unit.probability) total += w.value;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(unit.probability[0].value == doctest::Approx(1.0 / (1 + 4 + unit.volume[2].value * 16 / 2)).epsilon(1e-9));
}
