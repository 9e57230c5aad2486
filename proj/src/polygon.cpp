#include "harddisk/polygon.hpp"

#include <algorithm>
#include <limits>

namespace hd {

ConvexPolygon ConvexPolygon::from_rect(const Rect& r, long tag) {
  return {{{r.x0, r.y0}, {r.x1, r.y0}, {r.x1, r.y1}, {r.x0, r.y1}}, {tag, tag, tag, tag}};
}

double shoelace_area(const std::vector<Point>& poly) {
  double a = 0;
  for (std::size_t i = 0, n = poly.size(); i < n; ++i) a += cross(poly[i], poly[(i + 1) % n]);
  return 0.5 * a;
}

double ConvexPolygon::area() const { return v.size() < 3 ? 0.0 : shoelace_area(v); }

bool ConvexPolygon::has_tag(long tag) const { return std::find(tags.begin(), tags.end(), tag) != tags.end(); }

void ConvexPolygon::clip(Point n, double offset, long tag) {
  const std::size_t m = v.size();
  if (m == 0) return;
  std::vector<double> s(m);
  bool all_in = true, all_out = true;
  for (std::size_t i = 0; i < m; ++i) {
    s[i] = dot(n, v[i]) - offset;
    all_in = all_in && s[i] <= 0;
    all_out = all_out && s[i] > 0;
  }
  if (all_in) return;
  if (all_out) {
    v.clear();
    tags.clear();
    return;
  }
  std::vector<Point> nv;
  std::vector<long> nt;
  nv.reserve(m + 1);
  nt.reserve(m + 1);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = (i + 1) % m;
    const bool in_i = s[i] <= 0, in_j = s[j] <= 0;
    if (in_i) {
      nv.push_back(v[i]);
      nt.push_back(tags[i]);
    }
    if (in_i != in_j) {
      const double t = s[i] / (s[i] - s[j]);
      nv.push_back(v[i] + t * (v[j] - v[i]));
      // Leaving the half-plane: the new vertex starts the clip edge.
      nt.push_back(in_i ? tag : tags[i]);
    }
  }
  v = std::move(nv);
  tags = std::move(nt);
}

bool convex_contains(const std::vector<Point>& poly, Point p) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i)
    if (cross(poly[(i + 1) % n] - poly[i], p - poly[i]) < 0) return false;
  return true;
}

double point_segment_distance(Point p, Point a, Point b) {
  const Point ab = b - a;
  const double l2 = norm2(ab);
  double t = l2 > 0 ? dot(p - a, ab) / l2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return dist(p, a + t * ab);
}

double point_polygon_distance(Point p, const std::vector<Point>& poly) {
  if (convex_contains(poly, p)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0, n = poly.size(); i < n; ++i)
    best = std::min(best, point_segment_distance(p, poly[i], poly[(i + 1) % n]));
  return best;
}

double hausdorff_convex(const std::vector<Point>& a, const std::vector<Point>& b) {
  // For convex sets the directed distance sup_{x in A} d(x, B) is a convex
  // function of x, so it peaks at a vertex of A.
  double h = 0;
  for (const Point& p : a) h = std::max(h, point_polygon_distance(p, b));
  for (const Point& p : b) h = std::max(h, point_polygon_distance(p, a));
  return h;
}

namespace {
int orient(Point a, Point b, Point c) {
  const double v = cross(b - a, c - a);
  return (v > 0) - (v < 0);
}
bool on_segment(Point a, Point b, Point p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}
}  // namespace

bool segments_intersect(Point a, Point b, Point c, Point d) {
  const int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

bool segment_meets_open_rect(Point a, Point b, const Rect& r) {
  // Liang-Barsky on the closed rectangle, then reject contacts that only
  // touch the boundary by testing the midpoint of the clipped piece.
  double t0 = 0, t1 = 1;
  const Point d = b - a;
  auto clip = [&](double p, double q) {
    if (p == 0) return q >= 0;
    const double t = q / p;
    if (p < 0) {
      if (t > t1) return false;
      t0 = std::max(t0, t);
    } else {
      if (t < t0) return false;
      t1 = std::min(t1, t);
    }
    return true;
  };
  if (!clip(-d.x, a.x - r.x0) || !clip(d.x, r.x1 - a.x) || !clip(-d.y, a.y - r.y0) || !clip(d.y, r.y1 - a.y))
    return false;
  if (t0 > t1) return false;
  return r.contains(a + (0.5 * (t0 + t1)) * d);
}

}  // namespace hd
