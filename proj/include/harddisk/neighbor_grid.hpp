#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "harddisk/geometry.hpp"

namespace hd {

// Immutable bucket grid over a point set (compressed row storage). If the
// bounding box would need far more cells than points, the cell size is
// enlarged; queries stay exact either way.
class NeighborGrid {
 public:
  NeighborGrid() = default;
  NeighborGrid(std::span<const Point> points, double cell_size);

  double cell_size() const { return cell_; }
  std::size_t size() const { return points_.size(); }
  std::span<const Point> points() const { return points_; }
  const Point& point(std::size_t i) const { return points_[i]; }

  // f(index, point) for every point with |p - center| <= r.
  template <class F>
  void for_each_within(Point center, double r, F&& f) const {
    if (points_.empty() || r < 0) return;
    const double r2 = r * r;
    const auto [ix0, ix1, iy0, iy1] = cell_range(center, r);
    for (std::int64_t iy = iy0; iy <= iy1; ++iy) {
      for (std::int64_t ix = ix0; ix <= ix1; ++ix) {
        const std::size_t c = static_cast<std::size_t>(iy * nx_ + ix);
        for (std::uint32_t k = start_[c]; k < start_[c + 1]; ++k) {
          const std::uint32_t i = items_[k];
          if (dist2(points_[i], center) <= r2) f(static_cast<std::size_t>(i), points_[i]);
        }
      }
    }
  }

  std::vector<std::size_t> indices_within(Point center, double r) const;

  // True if some point other than `skip` has squared distance <= limit2.
  bool any_within2(Point center, double limit2, std::size_t skip = npos) const;

  // Distance to the nearest point within max_r, or +inf.
  double nearest_distance(Point center, double max_r, std::size_t skip = npos) const;

  std::size_t bucket_of(std::size_t i) const;
  std::size_t bucket_count() const { return start_.empty() ? 0 : start_.size() - 1; }

  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

 private:
  struct Range {
    std::int64_t ix0, ix1, iy0, iy1;
  };
  Range cell_range(Point c, double r) const;
  std::int64_t cell_x(double x) const;
  std::int64_t cell_y(double y) const;

  std::vector<Point> points_;
  double cell_ = 1.0;
  double ox_ = 0.0, oy_ = 0.0;
  std::int64_t nx_ = 0, ny_ = 0;
  std::vector<std::uint32_t> start_;
  std::vector<std::uint32_t> items_;
};

// Mutable cell list over a fixed rectangle, for Monte Carlo chains.
class CellList {
 public:
  CellList(const Rect& bounds, double cell_size);

  std::size_t size() const { return points_.size(); }
  const std::vector<Point>& points() const { return points_; }
  const Point& point(std::size_t i) const { return points_[i]; }

  std::size_t add(Point p);
  // Removes point i; the last point takes index i.
  void remove(std::size_t i);
  void move(std::size_t i, Point p);
  bool any_within2(Point center, double limit2, std::size_t skip = NeighborGrid::npos) const;

  template <class F>
  void for_each_within(Point center, double r, F&& f) const {
    const double r2 = r * r;
    const auto ix0 = clamp_x(center.x - r), ix1 = clamp_x(center.x + r);
    const auto iy0 = clamp_y(center.y - r), iy1 = clamp_y(center.y + r);
    for (std::int64_t iy = iy0; iy <= iy1; ++iy)
      for (std::int64_t ix = ix0; ix <= ix1; ++ix)
        for (std::uint32_t k : cells_[static_cast<std::size_t>(iy * nx_ + ix)])
          if (dist2(points_[k], center) <= r2) f(static_cast<std::size_t>(k), points_[k]);
  }

 private:
  std::int64_t clamp_x(double x) const;
  std::int64_t clamp_y(double y) const;
  std::size_t cell_index(Point p) const;

  Rect bounds_;
  double cell_;
  std::int64_t nx_, ny_;
  std::vector<Point> points_;
  std::vector<std::size_t> cell_of_;
  std::vector<std::size_t> slot_of_;
  std::vector<std::vector<std::uint32_t>> cells_;
};

}  // namespace hd
