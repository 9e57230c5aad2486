#include "harddisk/geometry.hpp"

#include <algorithm>
#include <limits>

#include "harddisk/neighbor_grid.hpp"

namespace hd {

Rect Rect::square(double half_width, Point center) {
  require(half_width > 0 && std::isfinite(half_width), ErrorKind::invalid_argument,
          "square half-width must be positive");
  return centered(center, half_width, half_width);
}

Rect Rect::centered(Point c, double hx, double hy) {
  require(hx > 0 && hy > 0, ErrorKind::invalid_argument, "rectangle half-widths must be positive");
  return {c.x - hx, c.y - hy, c.x + hx, c.y + hy};
}

double Rect::distance_to(Point p) const {
  const double dx = std::max({x0 - p.x, 0.0, p.x - x1});
  const double dy = std::max({y0 - p.y, 0.0, p.y - y1});
  return std::hypot(dx, dy);
}

double Rect::depth(Point p) const {
  return std::min({p.x - x0, x1 - p.x, p.y - y0, y1 - p.y});
}

bool overlaps(const Rect& a, const Rect& b) {
  return a.x0 < b.x1 && b.x0 < a.x1 && a.y0 < b.y1 && b.y0 < a.y1;
}

Annulus::Annulus(double l1, double l2) : inner(l1), outer(l2) {
  require(l1 > 0 && l1 < l2, ErrorKind::invalid_argument, "annulus needs 0 < L1 < L2");
}

Configuration::Configuration(Rect domain, std::vector<Point> free, std::vector<Point> boundary)
    : domain_(domain), n_free_(free.size()) {
  require(domain.x1 > domain.x0 && domain.y1 > domain.y0, ErrorKind::invalid_argument,
          "empty domain");
  for (const Point& p : free) {
    require(std::isfinite(p.x) && std::isfinite(p.y), ErrorKind::invalid_argument,
            "non-finite coordinate");
    require(domain.contains(p), ErrorKind::invalid_argument, "free point outside domain");
  }
  for (const Point& p : boundary) {
    require(std::isfinite(p.x) && std::isfinite(p.y), ErrorKind::invalid_argument,
            "non-finite coordinate");
    require(!domain.contains(p), ErrorKind::invalid_argument, "boundary point inside domain");
  }
  points_ = std::move(free);
  points_.insert(points_.end(), boundary.begin(), boundary.end());
}

Configuration Configuration::checked(Rect domain, std::vector<Point> free, std::vector<Point> boundary) {
  Configuration c(domain, std::move(free), std::move(boundary));
  require(hard_core_valid(c.points()), ErrorKind::invalid_argument, "hard-core violation");
  return c;
}

Configuration Configuration::with_free(std::vector<Point> free) const {
  auto b = boundary_points();
  return Configuration(domain_, std::move(free), {b.begin(), b.end()});
}

bool hard_core_valid(std::span<const Point> points) {
  if (points.size() < 2) return true;
  if (points.size() <= 32) {
    for (std::size_t i = 0; i < points.size(); ++i)
      for (std::size_t j = i + 1; j < points.size(); ++j)
        if (dist2(points[i], points[j]) <= 4.0) return false;
    return true;
  }
  NeighborGrid grid(points, 2.0);
  for (std::size_t i = 0; i < points.size(); ++i)
    if (grid.any_within2(points[i], 4.0, i)) return false;
  return true;
}

std::vector<Point> neighbors_within(const Configuration& config, Point center, double r) {
  require(r >= 0, ErrorKind::invalid_argument, "negative radius");
  std::vector<Point> out;
  const double r2 = r * r;
  for (const Point& p : config.points())
    if (dist2(p, center) <= r2) out.push_back(p);
  return out;
}

double min_pairwise_distance(std::span<const Point> points) {
  require(points.size() >= 2, ErrorKind::degenerate_input, "need at least two points");
  // Grid with cell 4: first try radius 4, which catches every pair closer than 4.
  NeighborGrid grid(points, 4.0);
  double best2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i) {
    grid.for_each_within(points[i], 4.0, [&](std::size_t j, Point q) {
      if (j != i) best2 = std::min(best2, dist2(points[i], q));
    });
  }
  if (std::isfinite(best2)) return std::sqrt(best2);
  // Sparse input: every pair is farther than 4, fall back to the full scan.
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) best2 = std::min(best2, dist2(points[i], points[j]));
  return std::sqrt(best2);
}

std::vector<Point> outside_of(std::span<const Point> points, const Rect& domain, double reach) {
  std::vector<Point> out;
  for (const Point& p : points)
    if (!domain.contains(p) && domain.distance_to(p) <= reach) out.push_back(p);
  return out;
}

std::vector<Point> triangular_lattice(const Rect& region, double spacing, double angle, Point offset) {
  require(spacing > 0, ErrorKind::invalid_argument, "lattice spacing must be positive");
  const Point a{spacing * std::cos(angle), spacing * std::sin(angle)};
  const Point b{spacing * std::cos(angle + kPi / 3), spacing * std::sin(angle + kPi / 3)};
  const Point c = region.center();
  const double reach = std::hypot(region.width(), region.height()) + norm(offset - c);
  const auto kmax = static_cast<long>(std::ceil(reach / (spacing * kSqrt3 / 2))) + 2;
  std::vector<Point> out;
  for (long j = -kmax; j <= kmax; ++j) {
    for (long i = -kmax; i <= kmax; ++i) {
      const Point p = offset + static_cast<double>(i) * a + static_cast<double>(j) * b;
      if (region.contains(p)) out.push_back(p);
    }
  }
  std::sort(out.begin(), out.end(), [](Point u, Point v) { return u.y < v.y || (u.y == v.y && u.x < v.x); });
  return out;
}

std::vector<Point> square_lattice(const Rect& region, double spacing, Point offset) {
  require(spacing > 0, ErrorKind::invalid_argument, "lattice spacing must be positive");
  std::vector<Point> out;
  const auto i0 = static_cast<long>(std::floor((region.x0 - offset.x) / spacing));
  const auto i1 = static_cast<long>(std::ceil((region.x1 - offset.x) / spacing));
  const auto j0 = static_cast<long>(std::floor((region.y0 - offset.y) / spacing));
  const auto j1 = static_cast<long>(std::ceil((region.y1 - offset.y) / spacing));
  for (long j = j0; j <= j1; ++j)
    for (long i = i0; i <= i1; ++i) {
      const Point p{offset.x + i * spacing, offset.y + j * spacing};
      if (region.contains(p)) out.push_back(p);
    }
  return out;
}

}  // namespace hd
