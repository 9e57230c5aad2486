#pragma once

#include <optional>
#include <string>
#include <vector>

#include "harddisk/exec.hpp"
#include "harddisk/geometry.hpp"
#include "harddisk/voronoi.hpp"
#include "json.hpp"

namespace hd {

inline constexpr double kDefaultRho = 100.0;
inline constexpr double kDefaultDefectC = 0.05;
inline constexpr double kEpsilonMax = 0.1;  // defect axioms are asserted for eps <= 0.1
inline constexpr double kCountingConstant = 16.0;
inline constexpr double kPackingDensity = 1.0 / (2.0 * kSqrt3);

struct DefectTerm {
  Point site;
  double cell_area = 0.0;
  bool member = false;  // site belongs to xi
  double term = 0.0;    // cell_area - 2 sqrt3 [member]
};

struct DefectReport {
  std::vector<Rect> domain;  // disjoint union of open rectangles
  std::vector<DefectTerm> contributions;
  double total = 0.0;
};

// Sum over sites of xi' in the domain of |V_xi'(x)| - 2 sqrt3 1_xi(x).
// Throws not_superset unless xi is a subset of xi', not_saturated unless xi'
// is saturated in the rho-neighbourhood of every piece of the domain, and
// unbounded_cell if a needed cell is unbounded.
DefectReport defect(const Configuration& xi, const Configuration& xi_prime, std::span<const Rect> domain,
                    double rho, Exec exec = Exec::parallel);
inline DefectReport defect(const Configuration& xi, const Configuration& xi_prime, const Rect& domain, double rho,
                           Exec exec = Exec::parallel) {
  return defect(xi, xi_prime, std::span<const Rect>(&domain, 1), rho, exec);
}

nlohmann::json to_json(const DefectReport& r);
void write_csv(std::ostream& os, const DefectReport& r);

struct PropertyCheck {
  std::string property;
  std::string instance;
  bool applicable = true;
  bool holds = true;
  std::string detail;
};

struct PropertyReport {
  std::vector<PropertyCheck> checks;
  bool all_hold() const;
  std::size_t failures() const;
};

struct DefectPropertyOptions {
  double eps = 0.1;
  double c = kDefaultDefectC;
  double rho = kDefaultRho;
  double rel_tol = 1e-9;
  int rays = 32;
};

// Evaluates the testable instances of the defect properties on each domain:
// positivity, monotonicity, additivity, localization, saturation,
// connectivity, distance-decreasing step, forbidden distances and point
// counting (squares only). Properties with a "Delta < c" hypothesis are
// reported as inapplicable when the hypothesis fails.
PropertyReport check_defect_properties(const Configuration& xi, const Configuration& xi_prime,
                                       std::span<const Rect> domains, const DefectPropertyOptions& opt,
                                       Exec exec = Exec::parallel);

// Shrinks c to the smallest defect among probe squares on which the
// connectivity or forbidden-distance predicate fails.
struct CalibrationProbe {
  Configuration xi;
  Configuration xi_prime;
  Rect square;
};
double calibrate_c(std::span<const CalibrationProbe> probes, double eps, double rho, double c_init,
                   Exec exec = Exec::parallel);

// Hausdorff distance from a bounded cell to the closest regular hexagon of
// area 2 sqrt3 centred at its site, minimised over rotation.
double hexagon_proximity(const VoronoiCell& cell, double resolution = 1e-4);
std::vector<Point> regular_hexagon(Point center, double area, double angle);

}  // namespace hd
