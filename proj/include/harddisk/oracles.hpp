#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "harddisk/discrete.hpp"
#include "harddisk/geometry.hpp"
#include "harddisk/rng.hpp"

namespace hd {

// Family of subsets of {0, .., ground-1} given as bitmasks.
struct UpwardClosedFamily {
  int ground = 0;
  std::vector<std::uint32_t> members;  // sorted, unique

  bool contains(std::uint32_t x) const;
  bool is_upward_closed() const;

  // All supersets of the generators.
  static UpwardClosedFamily closure(int ground, std::span<const std::uint32_t> generators);
  static UpwardClosedFamily random(int ground, RngStream& rng);
  // Every upward-closed family on a ground set of at most 4 elements.
  static std::vector<UpwardClosedFamily> all(int ground);
};

struct IndexEliminationResult {
  double lhs = 0.0;  // sum over F restricted to subsets of J, weights over J
  double rhs = 0.0;  // sum over F, weights over I
  bool holds = false;
};

// Both sides by exhaustive summation. Throws not_upward_closed.
IndexEliminationResult index_elimination_check(std::uint32_t J, std::span<const double> a,
                                               const UpwardClosedFamily& family);

// Triangular lattice with the given spacing clipped to Q_L.
Configuration triangular_packing(double L, double spacing);

// ((2L)^2 / (2 sqrt 3) - count) / L
double packing_deficit_constant(double L, std::size_t count);

struct Quadrature {
  double value = 0.0;
  double error = 0.0;  // |Richardson - finest trapezoid|
};

// Integral over D x D of 1{|x - y| > 2} for D a union of disjoint rectangles,
// via the overlap function in polar coordinates.
Quadrature exact_two_point_acceptance(std::span<const Rect> domain, int radial = 512, int angular = 1024);

struct McEstimate {
  double value = 0.0;
  double se = 0.0;
};

McEstimate monte_carlo_two_point_acceptance(std::span<const Rect> domain, RngStream& rng, std::size_t draws);

// Brute-force validators.
double min_distance_bruteforce(std::span<const Point> points);
// Component labels of G_eps by transitive closure, labelled by first vertex.
std::vector<std::uint32_t> components_bruteforce(std::span<const Point> points, double eps);
// Total signed angle swept around `center` along the closed polygon, / 2 pi.
double winding_by_angles(std::span<const Point> cycle, Point center = {});
// Largest distance from a point of the closed region to its nearest site.
double max_empty_circle_bruteforce(std::span<const Point> sites, const Rect& region);
// (M, N)-crossing by Warshall reachability over the sites.
bool mn_crossing_bruteforce(const SiteSet& sites, int M, int N);

}  // namespace hd
