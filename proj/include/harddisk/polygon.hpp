#pragma once

#include <vector>

#include "harddisk/geometry.hpp"

namespace hd {

// Convex polygon, counterclockwise. tags[k] labels the edge from v[k] to
// v[k+1]: a neighbour index for bisector edges, or a negative clip label.
struct ConvexPolygon {
  std::vector<Point> v;
  std::vector<long> tags;

  static ConvexPolygon from_rect(const Rect& r, long tag);
  bool empty() const { return v.size() < 3; }
  double area() const;
  // Keeps {p : dot(n, p) <= offset}; new edge gets `tag`.
  void clip(Point n, double offset, long tag);
  bool has_tag(long tag) const;
};

double shoelace_area(const std::vector<Point>& poly);
bool convex_contains(const std::vector<Point>& poly, Point p);
double point_segment_distance(Point p, Point a, Point b);
// Distance from p to a convex polygon (0 inside).
double point_polygon_distance(Point p, const std::vector<Point>& poly);
// Hausdorff distance between two convex polygons (sampling-free: extreme
// values are attained at vertices).
double hausdorff_convex(const std::vector<Point>& a, const std::vector<Point>& b);

// Closed segments [a,b] and [c,d] share a point.
bool segments_intersect(Point a, Point b, Point c, Point d);
// Segment [a,b] meets the open rectangle.
bool segment_meets_open_rect(Point a, Point b, const Rect& r);

}  // namespace hd
