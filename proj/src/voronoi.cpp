#include "harddisk/voronoi.hpp"

#include <algorithm>
#include <limits>

namespace hd {

ConvexPolygon cell_polygon(Point site, std::vector<std::pair<std::size_t, Point>> neighbors,
                           const Rect* clip, double box) {
  // Work in site-local coordinates so bisector offsets stay well conditioned.
  ConvexPolygon poly = ConvexPolygon::from_rect(Rect{-box, -box, box, box}, kBoxTag);
  if (clip) {
    const Rect local{clip->x0 - site.x, clip->y0 - site.y, clip->x1 - site.x, clip->y1 - site.y};
    poly.clip({1, 0}, local.x1, kRegionTag);
    poly.clip({-1, 0}, -local.x0, kRegionTag);
    poly.clip({0, 1}, local.y1, kRegionTag);
    poly.clip({0, -1}, -local.y0, kRegionTag);
  }
  std::sort(neighbors.begin(), neighbors.end(), [&](const auto& a, const auto& b) {
    const double da = dist2(a.second, site), db = dist2(b.second, site);
    return da < db || (da == db && a.first < b.first);
  });
  auto reach2 = [&] {
    double r2 = 0;
    for (const Point& v : poly.v) r2 = std::max(r2, norm2(v));
    return r2;
  };
  double r2 = reach2();
  for (const auto& [j, q] : neighbors) {
    if (poly.empty()) break;
    const Point d = q - site;
    // Sorted by distance: once |d| > 2 max|v| no further bisector can cut.
    if (norm2(d) > 4.0 * r2 * (1 + 1e-12)) break;
    poly.clip(d, 0.5 * norm2(d), static_cast<long>(j));
    r2 = reach2();
  }
  for (Point& p : poly.v) p = p + site;
  return poly;
}

ConvexPolygon clipped_cell(const NeighborGrid& grid, std::size_t i, const Rect* clip, double reach, double box) {
  const Point site = grid.point(i);
  std::vector<std::pair<std::size_t, Point>> nb;
  grid.for_each_within(site, reach, [&](std::size_t j, Point q) {
    if (j != i) nb.emplace_back(j, q);
  });
  return cell_polygon(site, std::move(nb), clip, box);
}

VoronoiCell voronoi_cell(const NeighborGrid& grid, std::size_t i) {
  ConvexPolygon poly = clipped_cell(grid, i);
  VoronoiCell cell;
  cell.index = i;
  cell.site = grid.point(i);
  cell.bounded = !poly.has_tag(kBoxTag);
  cell.area = cell.bounded ? poly.area() : std::numeric_limits<double>::quiet_NaN();
  cell.polygon = std::move(poly.v);
  return cell;
}

std::vector<VoronoiCell> voronoi_cells(std::span<const Point> points, const Rect& region, Exec exec) {
  NeighborGrid grid(points, kVoronoiReach);
  std::vector<std::size_t> sites;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (region.contains(points[i])) sites.push_back(i);
  std::vector<VoronoiCell> cells(sites.size());
  for_each_index(sites.size(), exec, [&](std::size_t k) { cells[k] = voronoi_cell(grid, sites[k]); });
  return cells;
}

double coverage_radius(const NeighborGrid& grid, const Rect& region, Exec exec) {
  // Every y of the region within 4 of the configuration lies in the cell of
  // its nearest site, and that site is within 4 of the region. Inside B_4
  // of a site the cell only depends on neighbours within 8.
  std::vector<std::size_t> sites;
  const Rect grown = region.expanded(kVoronoiBox);
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (grown.contains_closed(grid.point(i)) && region.distance_to(grid.point(i)) <= kVoronoiBox) sites.push_back(i);
  if (sites.empty()) return std::numeric_limits<double>::infinity();
  std::vector<double> radius(sites.size(), 0.0), area(sites.size(), 0.0);
  for_each_index(sites.size(), exec, [&](std::size_t k) {
    const ConvexPolygon poly = clipped_cell(grid, sites[k], &region);
    const Point s = grid.point(sites[k]);
    double r2 = 0;
    for (const Point& v : poly.v) r2 = std::max(r2, dist2(v, s));
    radius[k] = std::sqrt(r2);
    area[k] = poly.area();
  });
  double r = 0, total = 0;
  for (std::size_t k = 0; k < sites.size(); ++k) {
    r = std::max(r, radius[k]);
    total += area[k];
  }
  if (r > kVoronoiBox) return r;
  // Exact cells are disjoint, so a shortfall in area is an uncovered patch.
  if (total < region.area() * (1 - 1e-9)) return std::numeric_limits<double>::infinity();
  return r;
}

bool is_saturated(const NeighborGrid& grid, const Rect& target, double rho, double tol, Exec exec) {
  return coverage_radius(grid, target.expanded(rho), exec) <= 2.0 + tol;
}

}  // namespace hd
