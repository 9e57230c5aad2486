#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "harddisk/connectivity.hpp"
#include "harddisk/exec.hpp"
#include "harddisk/geometry.hpp"
#include "harddisk/rng.hpp"
#include "json.hpp"

namespace hd {

// Vertical line {a} x R.
struct Axis {
  double a = 0.0;
};

struct ChordPoints {
  double h_minus = 0.0;
  double h_plus = 0.0;
  Point lower;  // x^K_-
  Point upper;  // x^K_+
};

// Chord of B_K(x) on the axis. Throws out_of_range unless dist(x, axis) < K.
ChordPoints lower_height(Point x, double K, Axis axis = {});

// Point at distance b from x on the segment towards x^K_-.
Point move_towards_axis(Point x, double b, double K, Axis axis = {});

int max_magnitude(double eps);  // ceil(100 / eps)

struct ElementaryMove {
  Point from;
  Point to;
  int magnitude = 0;
  double K = 0.0;
};

struct Forbidden {
  Point blocker;
  std::size_t blocker_index = 0;
};

using MoveResult = std::variant<Configuration, Forbidden>;

// Moves free point `x` by m*eps/10 towards x^K_-. Returns the new
// configuration, or the closest point within distance 2 of the target.
MoveResult elementary_move(const Configuration& config, Point x, int m, double K, double eps, Axis axis = {});

enum class CubeType { A, B, C, D, E };
char to_char(CubeType t);

struct CubeClassification {
  int n = 1;
  double threshold = 0.0;  // c / 2
  std::vector<CubeType> types;   // index i + 2n - 1
  std::vector<double> defects;

  int first() const { return -2 * n + 1; }
  int last() const { return 2 * n - 1; }
  CubeType type(int i) const { return types.at(static_cast<std::size_t>(i - first())); }
  double defect(int i) const { return defects.at(static_cast<std::size_t>(i - first())); }
};

// Types from per-cube defects.
CubeClassification classify_from_defects(std::vector<double> defects, int n, double c);

CubeClassification classify_cubes(const Configuration& xi, const Configuration& phi_xi, double K, int n, double c,
                                  double rho, Exec exec = Exec::parallel);

using Saturator = std::function<Configuration(const Configuration&)>;

struct RepairParams {
  double K = 0.0;
  int n = 1;
  double eps = 0.1;
  double c = 0.05;
  double rho = 100.0;
  double delta0 = 1.0;
  bool desk_mode = false;
};

// max(5000/eps, (2000/eps)^2, 100 rho, 1000/eps) + 1
double proof_K(double eps, double rho);
// 1 + ceil((10K + 2)^2 / pi) * 6 delta0 / c
double k0_bound(double K, double delta0, double c);
// ((K/(K-20)) * ceil(100/eps) * 6 delta0/c * (10K+2)^2/pi)^-1
double c0_bound(double K, double eps, double delta0, double c);

enum class Termination { completed, reported_empty_space };

struct RepairMove {
  std::size_t point_index = 0;  // index among free points
  ElementaryMove move;
  int block = 0;
};

struct RepairBlock {
  int j1 = 0, j2 = 0;  // flanking Type D cubes
  Point w;
  std::size_t affected = 0;
  bool skipped = false;  // no point in B_K(o_j2)
};

struct RepairTrace {
  std::vector<Configuration> states;
  std::vector<RepairMove> moves;
  std::vector<bool> state_valid;
  Termination termination = Termination::completed;
  std::optional<Point> terminated_at;
  CubeClassification classification;
  std::vector<RepairBlock> blocks;
  double k0 = 0.0;
  std::size_t blocker_checks = 0;      // forbidden moves seen
  std::size_t blocker_violations = 0;  // blockers with |y - x^K_-| >= K
  bool regions_disjoint = true;

  std::size_t length() const { return states.size(); }
};

ThinBoxSpec repair_box(const RepairParams& p);

// Repair algorithm on xi in Omega(R(K,n), zeta); xi's boundary points are zeta.
// Outside desk mode K must be at least proof_K(eps, rho).
RepairTrace run_repair(const Configuration& xi, const RepairParams& params, const Saturator& saturator,
                       Exec exec = Exec::parallel);

// Default saturator: saturate the rho-neighbourhood of R'(K,n).
Saturator box_saturator(const RepairParams& params, double pitch = 0.5);

nlohmann::json to_json(const RepairTrace& t, bool include_states = false);

// Desk-scale input: triangular lattice (spacing 2 + U(1e-9, 1e-7), random
// angle and offset) over the neighbourhood of R'. Points outside R are
// frozen; inside R up to two random disks or slabs are evacuated.
Configuration desk_repair_input(const RepairParams& params, RngStream& rng);

struct KeyProperty3Report {
  int level = 1;
  std::size_t trials = 0;
  std::size_t reach_level = 0;       // traces with length >= level
  std::size_t reach_next = 0;        // traces with length >= level + 1
  double p_next = 0.0;               // Pr(Z_{i+1}) estimate
  double p_continue = 0.0;           // Pr(Z_i \ Z_i^term) estimate
  double ratio = 0.0;
  double ratio_se = 0.0;
  double c0 = 0.0;
  bool inconclusive = false;
  bool holds = true;
};

// Monte Carlo over uniform-model samples. Z_i is approximated by the event
// that the sample's own trace reaches length i (membership through an
// arbitrary predecessor is not computed).
KeyProperty3Report verify_key_property_3(const RepairParams& params, const std::vector<Point>& zeta, std::size_t s,
                                         const Saturator& saturator, int level, std::size_t trials, RngStream& rng,
                                         std::size_t sweeps = 20, Exec exec = Exec::parallel);

}  // namespace hd
