#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "harddisk/error.hpp"

namespace hd {

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Point a) { return dot(a, a); }
inline double norm(Point a) { return std::sqrt(norm2(a)); }
inline double dist2(Point a, Point b) { return norm2(a - b); }
inline double dist(Point a, Point b) { return std::sqrt(dist2(a, b)); }
inline double linf(Point a) { return std::max(std::fabs(a.x), std::fabs(a.y)); }

// Lexicographic order, used wherever a deterministic tie-break is needed.
inline bool lex_less(Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

inline constexpr double kSqrt3 = 1.7320508075688772;
inline constexpr double kHexArea = 2.0 * kSqrt3;  // optimal cell area, 2*sqrt(3)
inline constexpr double kPi = 3.14159265358979323846;

// Axis-aligned open rectangle (x0, x1) x (y0, y1).
struct Rect {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;

  static Rect square(double half_width, Point center = {});
  static Rect centered(Point center, double half_x, double half_y);

  Point center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
  double half_x() const { return 0.5 * (x1 - x0); }
  double half_y() const { return 0.5 * (y1 - y0); }
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
  bool is_square() const { return width() == height(); }

  bool contains(Point p) const { return p.x > x0 && p.x < x1 && p.y > y0 && p.y < y1; }
  bool contains_closed(Point p) const { return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1; }
  bool contains(const Rect& r) const { return r.x0 >= x0 && r.x1 <= x1 && r.y0 >= y0 && r.y1 <= y1; }
  Rect expanded(double m) const { return {x0 - m, y0 - m, x1 + m, y1 + m}; }
  Rect translated(Point d) const { return {x0 + d.x, y0 + d.y, x1 + d.x, y1 + d.y}; }

  // Euclidean distance from p to the closed rectangle (0 inside).
  double distance_to(Point p) const;
  // min over the four sides of the coordinate distance; negative outside.
  double depth(Point p) const;
  friend bool operator==(const Rect&, const Rect&) = default;
};

bool overlaps(const Rect& a, const Rect& b);

// Square annulus Q_outer \ Q_inner around the origin.
struct Annulus {
  double inner = 0.0;
  double outer = 0.0;
  Annulus(double l1, double l2);
};

// Free points live in the open domain; boundary points are frozen and lie
// outside it. Points are stored contiguously, free first.
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(Rect domain, std::vector<Point> free = {}, std::vector<Point> boundary = {});

  // Like the constructor, but also rejects hard-core violations.
  static Configuration checked(Rect domain, std::vector<Point> free, std::vector<Point> boundary = {});

  const Rect& domain() const { return domain_; }
  std::span<const Point> points() const { return points_; }
  std::span<const Point> free_points() const { return {points_.data(), n_free_}; }
  std::span<const Point> boundary_points() const {
    return {points_.data() + n_free_, points_.size() - n_free_};
  }
  std::size_t size() const { return points_.size(); }
  std::size_t free_count() const { return n_free_; }
  bool is_free(std::size_t index) const { return index < n_free_; }

  Configuration with_free(std::vector<Point> free) const;

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  Rect domain_{};
  std::vector<Point> points_;
  std::size_t n_free_ = 0;
};

bool hard_core_valid(std::span<const Point> points);
inline bool hard_core_valid(const Configuration& c) { return hard_core_valid(c.points()); }

std::vector<Point> neighbors_within(const Configuration& config, Point center, double r);

// Throws degenerate_input for fewer than two points.
double min_pairwise_distance(std::span<const Point> points);
inline double min_pairwise_distance(const Configuration& c) { return min_pairwise_distance(c.points()); }

// Points of `points` that are not inside `domain` (boundary condition
// restricted to the complement), optionally only those within `reach`.
std::vector<Point> outside_of(std::span<const Point> points, const Rect& domain,
                              double reach = INFINITY);

// Triangular lattice with nearest-neighbour distance `spacing`, rotated by
// `angle` and shifted by `offset`, clipped to the open rectangle.
std::vector<Point> triangular_lattice(const Rect& region, double spacing, double angle = 0.0,
                                      Point offset = {});

// Square lattice through the origin clipped to the open rectangle.
std::vector<Point> square_lattice(const Rect& region, double spacing, Point offset = {});

}  // namespace hd
