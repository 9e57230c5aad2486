#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "harddisk/exec.hpp"
#include "harddisk/geometry.hpp"
#include "harddisk/neighbor_grid.hpp"
#include "harddisk/polygon.hpp"

namespace hd {

inline constexpr double kVoronoiReach = 8.0;
inline constexpr double kVoronoiBox = 4.0;
inline constexpr long kBoxTag = -1;
inline constexpr long kRegionTag = -2;

struct VoronoiCell {
  std::size_t index = 0;  // index of the site in the configuration
  Point site;
  std::vector<Point> polygon;  // counterclockwise
  double area = 0.0;           // NaN when unbounded
  bool bounded = false;
};

// Cell of point i of the grid: bisectors with every point within `reach`,
// clipped to the square of half-width `box` around the site and, if given,
// to the closed rectangle `clip`. Edge tags tell which constraint made them.
ConvexPolygon clipped_cell(const NeighborGrid& grid, std::size_t i, const Rect* clip = nullptr,
                           double reach = kVoronoiReach, double box = kVoronoiBox);

// Same construction from an explicit neighbour list (index, position).
ConvexPolygon cell_polygon(Point site, std::vector<std::pair<std::size_t, Point>> neighbors,
                           const Rect* clip, double box);

VoronoiCell voronoi_cell(const NeighborGrid& grid, std::size_t i);

// Cells of the sites inside the open region, in configuration order.
std::vector<VoronoiCell> voronoi_cells(std::span<const Point> points, const Rect& region,
                                       Exec exec = Exec::parallel);
inline std::vector<VoronoiCell> voronoi_cells(const Configuration& c, const Rect& region,
                                              Exec exec = Exec::parallel) {
  return voronoi_cells(c.points(), region, exec);
}

// sup over y in the closed rectangle of dist(y, points). Exact whenever the
// answer is at most 4; otherwise some value > 4 (possibly +inf) is returned.
double coverage_radius(const NeighborGrid& grid, const Rect& region, Exec exec = Exec::parallel);

// Saturation of the rho-neighbourhood of `target`, taken as the rectangle
// `target` expanded by rho, up to `tol` beyond distance 2.
bool is_saturated(const NeighborGrid& grid, const Rect& target, double rho, double tol = 2e-9,
                  Exec exec = Exec::parallel);

}  // namespace hd
