#include "harddisk/neighbor_grid.hpp"

#include <algorithm>

namespace hd {

NeighborGrid::NeighborGrid(std::span<const Point> points, double cell_size)
    : points_(points.begin(), points.end()), cell_(cell_size) {
  require(cell_size > 0, ErrorKind::invalid_argument, "cell size must be positive");
  if (points_.empty()) return;
  double xmin = points_[0].x, xmax = xmin, ymin = points_[0].y, ymax = ymin;
  for (const Point& p : points_) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const double budget = 16.0 * static_cast<double>(points_.size()) + 4096.0;
  while (((xmax - xmin) / cell_ + 1) * ((ymax - ymin) / cell_ + 1) > budget) cell_ *= 2;
  ox_ = xmin;
  oy_ = ymin;
  nx_ = static_cast<std::int64_t>(std::floor((xmax - xmin) / cell_)) + 1;
  ny_ = static_cast<std::int64_t>(std::floor((ymax - ymin) / cell_)) + 1;
  start_.assign(static_cast<std::size_t>(nx_ * ny_) + 1, 0);
  std::vector<std::uint32_t> cell(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    cell[i] = static_cast<std::uint32_t>(cell_y(points_[i].y) * nx_ + cell_x(points_[i].x));
    ++start_[cell[i] + 1];
  }
  for (std::size_t c = 1; c < start_.size(); ++c) start_[c] += start_[c - 1];
  items_.resize(points_.size());
  std::vector<std::uint32_t> fill(start_.begin(), start_.end() - 1);
  for (std::size_t i = 0; i < points_.size(); ++i) items_[fill[cell[i]]++] = static_cast<std::uint32_t>(i);
}

std::int64_t NeighborGrid::cell_x(double x) const {
  auto i = static_cast<std::int64_t>(std::floor((x - ox_) / cell_));
  return std::clamp<std::int64_t>(i, 0, nx_ - 1);
}

std::int64_t NeighborGrid::cell_y(double y) const {
  auto i = static_cast<std::int64_t>(std::floor((y - oy_) / cell_));
  return std::clamp<std::int64_t>(i, 0, ny_ - 1);
}

NeighborGrid::Range NeighborGrid::cell_range(Point c, double r) const {
  // Clamping maps far-away queries onto the border cells, which is harmless:
  // the distance filter in the caller rejects them.
  auto lo = [&](double v, double o, std::int64_t n) {
    double f = std::floor((v - o) / cell_);
    return static_cast<std::int64_t>(std::clamp(f, 0.0, static_cast<double>(n - 1)));
  };
  return {lo(c.x - r, ox_, nx_), lo(c.x + r, ox_, nx_), lo(c.y - r, oy_, ny_), lo(c.y + r, oy_, ny_)};
}

std::vector<std::size_t> NeighborGrid::indices_within(Point center, double r) const {
  std::vector<std::size_t> out;
  for_each_within(center, r, [&](std::size_t i, Point) { out.push_back(i); });
  std::sort(out.begin(), out.end());
  return out;
}

bool NeighborGrid::any_within2(Point center, double limit2, std::size_t skip) const {
  if (points_.empty()) return false;
  const auto [ix0, ix1, iy0, iy1] = cell_range(center, std::sqrt(limit2));
  for (std::int64_t iy = iy0; iy <= iy1; ++iy)
    for (std::int64_t ix = ix0; ix <= ix1; ++ix) {
      const auto c = static_cast<std::size_t>(iy * nx_ + ix);
      for (std::uint32_t k = start_[c]; k < start_[c + 1]; ++k) {
        const std::uint32_t i = items_[k];
        if (i != skip && dist2(points_[i], center) <= limit2) return true;
      }
    }
  return false;
}

double NeighborGrid::nearest_distance(Point center, double max_r, std::size_t skip) const {
  double best2 = std::numeric_limits<double>::infinity();
  for_each_within(center, max_r, [&](std::size_t i, Point p) {
    if (i != skip) best2 = std::min(best2, dist2(p, center));
  });
  return std::sqrt(best2);
}

std::size_t NeighborGrid::bucket_of(std::size_t i) const {
  return static_cast<std::size_t>(cell_y(points_.at(i).y) * nx_ + cell_x(points_[i].x));
}

CellList::CellList(const Rect& bounds, double cell_size) : bounds_(bounds), cell_(cell_size) {
  require(cell_size > 0, ErrorKind::invalid_argument, "cell size must be positive");
  nx_ = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(bounds.width() / cell_)));
  ny_ = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(bounds.height() / cell_)));
  cells_.resize(static_cast<std::size_t>(nx_ * ny_));
}

std::int64_t CellList::clamp_x(double x) const {
  const double f = std::floor((x - bounds_.x0) / cell_);
  return static_cast<std::int64_t>(std::clamp(f, 0.0, static_cast<double>(nx_ - 1)));
}

std::int64_t CellList::clamp_y(double y) const {
  const double f = std::floor((y - bounds_.y0) / cell_);
  return static_cast<std::int64_t>(std::clamp(f, 0.0, static_cast<double>(ny_ - 1)));
}

std::size_t CellList::cell_index(Point p) const {
  return static_cast<std::size_t>(clamp_y(p.y) * nx_ + clamp_x(p.x));
}

std::size_t CellList::add(Point p) {
  const std::size_t i = points_.size();
  const std::size_t c = cell_index(p);
  points_.push_back(p);
  cell_of_.push_back(c);
  slot_of_.push_back(cells_[c].size());
  cells_[c].push_back(static_cast<std::uint32_t>(i));
  return i;
}

void CellList::remove(std::size_t i) {
  auto unlink = [&](std::size_t k) {
    auto& bucket = cells_[cell_of_[k]];
    const std::size_t s = slot_of_[k];
    bucket[s] = bucket.back();
    slot_of_[bucket[s]] = s;
    bucket.pop_back();
  };
  unlink(i);
  const std::size_t last = points_.size() - 1;
  if (i != last) {
    points_[i] = points_[last];
    cell_of_[i] = cell_of_[last];
    slot_of_[i] = slot_of_[last];
    cells_[cell_of_[i]][slot_of_[i]] = static_cast<std::uint32_t>(i);
  }
  points_.pop_back();
  cell_of_.pop_back();
  slot_of_.pop_back();
}

void CellList::move(std::size_t i, Point p) {
  const std::size_t c = cell_index(p);
  if (c != cell_of_[i]) {
    auto& bucket = cells_[cell_of_[i]];
    const std::size_t s = slot_of_[i];
    bucket[s] = bucket.back();
    slot_of_[bucket[s]] = s;
    bucket.pop_back();
    cell_of_[i] = c;
    slot_of_[i] = cells_[c].size();
    cells_[c].push_back(static_cast<std::uint32_t>(i));
  }
  points_[i] = p;
}

bool CellList::any_within2(Point center, double limit2, std::size_t skip) const {
  const double r = std::sqrt(limit2);
  const auto ix0 = clamp_x(center.x - r), ix1 = clamp_x(center.x + r);
  const auto iy0 = clamp_y(center.y - r), iy1 = clamp_y(center.y + r);
  for (std::int64_t iy = iy0; iy <= iy1; ++iy)
    for (std::int64_t ix = ix0; ix <= ix1; ++ix)
      for (std::uint32_t k : cells_[static_cast<std::size_t>(iy * nx_ + ix)])
        if (k != skip && dist2(points_[k], center) <= limit2) return true;
  return false;
}

}  // namespace hd
