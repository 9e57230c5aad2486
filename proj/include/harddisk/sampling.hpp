#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "harddisk/geometry.hpp"
#include "harddisk/neighbor_grid.hpp"
#include "harddisk/rng.hpp"

namespace hd {

struct PoissonModelSpec {
  Rect domain;
  double intensity = 1.0;
  std::vector<Point> boundary;  // only the points outside `domain` are used
};

struct UniformModelSpec {
  Rect domain;
  std::size_t count = 0;
  std::vector<Point> boundary;
};

struct McmcParams {
  std::size_t sweeps = 1000;
  double p_translate = 0.5;
  double p_birth = 0.25;
  double p_death = 0.25;
  double max_step = 0.3;

  static McmcParams canonical(std::size_t sweeps = 1000, double max_step = 0.3);
  void validate(bool canonical_mode) const;
};

inline constexpr std::size_t kDefaultMaxAttempts = 1'000'000;

std::vector<Point> sample_ppp(const Rect& region, double intensity, RngStream& rng);

// Exact samplers; throw ErrorKind::infeasible once the attempt budget runs out.
Configuration sample_poisson_hard_disk_rejection(const PoissonModelSpec& spec, RngStream& rng,
                                                 std::size_t max_attempts = kDefaultMaxAttempts);
Configuration sample_uniform_hard_disk_rejection(const UniformModelSpec& spec, RngStream& rng,
                                                 std::size_t max_attempts = kDefaultMaxAttempts);

// Metropolis chain with translate / birth / death moves. In grand-canonical
// mode births are accepted with min(1, (p_death/p_birth) lambda|D|/(n+1)) and
// deaths with min(1, (p_birth/p_death) n/(lambda|D|)). One sweep is
// max(n, ceil(min(lambda|D|, |D|/(2 sqrt 3))), 1) proposals.
class McmcChain {
 public:
  McmcChain(const PoissonModelSpec& spec, const McmcParams& params, RngStream rng);
  // Canonical chain started from a lattice seed of spec.count points.
  McmcChain(const UniformModelSpec& spec, const McmcParams& params, RngStream rng);

  void step();
  void sweep();
  void run(std::size_t sweeps);

  std::size_t free_count() const { return free_.size(); }
  std::size_t sweep_length() const;
  Configuration state() const;
  std::size_t accepted() const { return accepted_; }
  std::size_t proposed() const { return proposed_; }

 private:
  bool fits(Point p, std::size_t skip) const;
  void translate();
  void birth();
  void death();

  Rect domain_;
  double intensity_ = 0.0;
  bool canonical_ = false;
  McmcParams params_;
  RngStream rng_;
  std::vector<Point> boundary_;
  NeighborGrid boundary_grid_;
  CellList free_;
  std::size_t accepted_ = 0, proposed_ = 0;
};

// Density of proposing `to` from `from` in a translate move of one of n points.
double translate_proposal_density(Point from, Point to, std::size_t n, double max_step);

Configuration sample_hard_disk_mcmc(const PoissonModelSpec& spec, const McmcParams& params, RngStream& rng);
Configuration sample_hard_disk_mcmc(const UniformModelSpec& spec, const McmcParams& params, RngStream& rng);

// Deterministic saturation of the rho-neighbourhood of `target`: raster
// greedy over a grid of the given pitch, then exact refinement that inserts
// the farthest Voronoi vertex while it is farther than 2 + margin from every
// point. Inserted points inside the domain become free, others boundary.
inline constexpr double kSaturationMargin = 1e-9;
Configuration saturate(const Configuration& config, const Rect& target, double rho, double grid_pitch = 0.5);

struct WeightEstimate {
  double value = 0.0;
  double se = 0.0;
};

struct MixtureWeights {
  std::size_t s_max = 0;                 // s0: largest count found feasible
  std::vector<WeightEstimate> volume;    // A_s / |D|^s, acceptance fraction
  std::vector<WeightEstimate> probability;  // Pr(#(eta cap D) = s)
};

// Largest s for which a rejection probe of `probes` uniform draws succeeds.
std::size_t probe_max_count(const Rect& domain, std::span<const Point> boundary, RngStream& rng,
                            std::size_t probes = 10'000);

MixtureWeights mixture_weights(const Rect& domain, double intensity, std::span<const Point> boundary,
                               RngStream& rng, std::size_t mc_draws = 100'000,
                               std::size_t probes = 10'000);

WeightEstimate mixture_weight(const Rect& domain, double intensity, std::span<const Point> boundary,
                              std::size_t s, RngStream& rng, std::size_t mc_draws = 100'000);

}  // namespace hd
