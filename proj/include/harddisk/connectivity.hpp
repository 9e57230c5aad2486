#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "harddisk/exec.hpp"
#include "harddisk/geometry.hpp"
#include "json.hpp"

namespace hd {

// G_eps: edge iff |x - y| <= 2 + eps.
struct EpsGraph {
  double eps = 0.0;
  std::vector<Point> vertices;
  std::vector<std::size_t> source;  // index of each vertex in the input
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // i < j, sorted
  std::vector<std::uint32_t> component;  // labels 0..components-1, by first vertex
  std::size_t components = 0;

  std::vector<std::vector<std::uint32_t>> adjacency() const;
};

// Restricted to the open region when given.
EpsGraph build_graph(std::span<const Point> points, double eps, const Rect* region = nullptr,
                     Exec exec = Exec::parallel);
inline EpsGraph build_graph(const Configuration& c, double eps, const Rect* region = nullptr,
                            Exec exec = Exec::parallel) {
  return build_graph(c.points(), eps, region, exec);
}

struct CrossingWitness {
  bool crossed = false;
  std::optional<std::pair<Point, Point>> pair;  // inside Q_L1, outside Q_L2
};

CrossingWitness annulus_crossing(std::span<const Point> points, double eps, double l1, double l2,
                                 Point center = {});

// Grid scan over w with B_eps(w) inside the domain; returns a w with
// dist(w, points) > 2 + eps. Any witness with margin >= pitch*sqrt2 is found.
std::optional<Point> admits_empty_space(std::span<const Point> points, double eps, const Rect& domain,
                                        double pitch);

enum class Orientation { vertical, horizontal };

// Thin box R(K,n), its enlargement R'(K,n) and the cubes P_i, placed by an
// offset and, for horizontal boxes, a quarter turn.
struct ThinBoxSpec {
  double K = 1.0;
  int n = 1;
  Orientation orientation = Orientation::vertical;
  Point offset{};
  double rho = 1.0;

  int first() const { return -2 * n + 1; }
  int last() const { return 2 * n - 1; }
  int cube_count() const { return 4 * n - 1; }
  Rect R() const;
  Rect R_prime() const;
  Rect cube(int i) const;
  Point cube_center(int i) const;
  void validate(bool repair_mode) const;
};

struct BoxCrossResult {
  bool crossed = false;
  std::vector<int> indices;  // chosen I
  std::vector<int> passing;  // indices meeting the per-cube condition
  double required = 0.0;     // 4n - 1 - nu
};

BoxCrossResult box_cross(std::span<const Point> points, const ThinBoxSpec& spec, double eps, double nu,
                         Exec exec = Exec::parallel);

struct CircuitWitness {
  std::vector<Point> cycle;
  std::vector<std::size_t> vertex_ids;  // indices into the input points
  int winding_number = 0;
};

// Cycle of G_eps inside the annulus Q_L \ Q_0.9L around `center` that winds
// once around the hole. Edges whose segment enters the hole are ignored.
std::optional<CircuitWitness> find_large_circuit(std::span<const Point> points, double eps, double L,
                                                 Point center = {});

nlohmann::json to_json(const CircuitWitness& w);
nlohmann::json to_json(const CrossingWitness& w);
nlohmann::json to_json(const BoxCrossResult& r);

}  // namespace hd
