#include "harddisk/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "harddisk/voronoi.hpp"

namespace hd {

namespace {

constexpr double kCore2 = 4.0;

// Boundary points that can interact with the domain.
std::vector<Point> relevant_boundary(std::span<const Point> boundary, const Rect& domain) {
  return outside_of(boundary, domain, 2.0);
}

std::vector<Point> all_outside(std::span<const Point> boundary, const Rect& domain) {
  return outside_of(boundary, domain);
}

// Draws `count` uniform points one at a time, giving up at the first
// hard-core conflict. Conditional on success the law is the target one.
bool draw_uniform_valid(const Rect& domain, std::size_t count, const NeighborGrid& wall, RngStream& rng,
                        std::vector<Point>& out) {
  out.clear();
  for (std::size_t k = 0; k < count; ++k) {
    const Point p = rng.uniform_in(domain);
    if (wall.any_within2(p, kCore2)) return false;
    for (const Point& q : out)
      if (dist2(p, q) <= kCore2) return false;
    out.push_back(p);
  }
  return true;
}

}  // namespace

McmcParams McmcParams::canonical(std::size_t sweeps, double max_step) {
  return {sweeps, 1.0, 0.0, 0.0, max_step};
}

void McmcParams::validate(bool canonical_mode) const {
  const double s = p_translate + p_birth + p_death;
  require(p_translate >= 0 && p_birth >= 0 && p_death >= 0 && std::fabs(s - 1.0) < 1e-12,
          ErrorKind::invalid_argument, "move probabilities must be nonnegative and sum to 1");
  require(max_step > 0, ErrorKind::invalid_argument, "max_step must be positive");
  if (canonical_mode)
    require(p_birth == 0 && p_death == 0, ErrorKind::invalid_argument, "canonical mode forbids birth/death");
  else
    require((p_birth > 0) == (p_death > 0), ErrorKind::invalid_argument, "birth and death must both be enabled");
}

std::vector<Point> sample_ppp(const Rect& region, double intensity, RngStream& rng) {
  require(intensity >= 0, ErrorKind::invalid_argument, "negative intensity");
  const std::uint64_t n = rng.poisson(intensity * region.area());
  std::vector<Point> pts(n);
  for (auto& p : pts) p = rng.uniform_in(region);
  return pts;
}

Configuration sample_poisson_hard_disk_rejection(const PoissonModelSpec& spec, RngStream& rng,
                                                 std::size_t max_attempts) {
  require(spec.intensity >= 0, ErrorKind::invalid_argument, "negative intensity");
  const NeighborGrid wall(relevant_boundary(spec.boundary, spec.domain), 2.0);
  const double mean = spec.intensity * spec.domain.area();
  std::vector<Point> pts;
  for (std::size_t a = 0; a < max_attempts; ++a) {
    const std::uint64_t n = rng.poisson(mean);
    if (draw_uniform_valid(spec.domain, n, wall, rng, pts))
      return Configuration(spec.domain, pts, all_outside(spec.boundary, spec.domain));
  }
  throw Error(ErrorKind::infeasible, "Poisson rejection budget exhausted");
}

Configuration sample_uniform_hard_disk_rejection(const UniformModelSpec& spec, RngStream& rng,
                                                 std::size_t max_attempts) {
  const NeighborGrid wall(relevant_boundary(spec.boundary, spec.domain), 2.0);
  std::vector<Point> pts;
  for (std::size_t a = 0; a < max_attempts; ++a)
    if (draw_uniform_valid(spec.domain, spec.count, wall, rng, pts))
      return Configuration(spec.domain, pts, all_outside(spec.boundary, spec.domain));
  throw Error(ErrorKind::infeasible, "uniform rejection budget exhausted");
}

double translate_proposal_density(Point from, Point to, std::size_t n, double max_step) {
  if (n == 0) return 0.0;
  const Point d = to - from;
  if (std::fabs(d.x) > max_step || std::fabs(d.y) > max_step) return 0.0;
  return 1.0 / (static_cast<double>(n) * 4.0 * max_step * max_step);
}

McmcChain::McmcChain(const PoissonModelSpec& spec, const McmcParams& params, RngStream rng)
    : domain_(spec.domain),
      intensity_(spec.intensity),
      params_(params),
      rng_(std::move(rng)),
      boundary_(all_outside(spec.boundary, spec.domain)),
      boundary_grid_(relevant_boundary(spec.boundary, spec.domain), 2.0),
      free_(spec.domain, 2.0) {
  require(spec.intensity > 0, ErrorKind::invalid_argument, "intensity must be positive");
  params_.validate(false);
}

McmcChain::McmcChain(const UniformModelSpec& spec, const McmcParams& params, RngStream rng)
    : domain_(spec.domain),
      canonical_(true),
      params_(params),
      rng_(std::move(rng)),
      boundary_(all_outside(spec.boundary, spec.domain)),
      boundary_grid_(relevant_boundary(spec.boundary, spec.domain), 2.0),
      free_(spec.domain, 2.0) {
  params_.validate(true);
  if (spec.count == 0) return;
  // Lattice seed: densest packing, a few random offsets, points spread out.
  for (int attempt = 0; attempt < 16 && free_.size() < spec.count; ++attempt) {
    const Point off = rng_.uniform_in(Rect{0, 0, 2.0, 2.0 * kSqrt3});
    std::vector<Point> cand;
    for (const Point& p : triangular_lattice(domain_, 2.0 + 1e-6, 0.0, Point{domain_.x0, domain_.y0} + off))
      if (!boundary_grid_.any_within2(p, kCore2)) cand.push_back(p);
    if (cand.size() < spec.count) continue;
    for (std::size_t k = 0; k < spec.count; ++k) free_.add(cand[k * cand.size() / spec.count]);
  }
  // Fall back to random sequential addition.
  for (std::size_t tries = 0; free_.size() < spec.count && tries < 1'000'000; ++tries) {
    const Point p = rng_.uniform_in(domain_);
    if (fits(p, NeighborGrid::npos)) free_.add(p);
  }
  if (free_.size() < spec.count) throw Error(ErrorKind::infeasible, "cannot seed canonical chain");
}

bool McmcChain::fits(Point p, std::size_t skip) const {
  return domain_.contains(p) && !boundary_grid_.any_within2(p, kCore2) && !free_.any_within2(p, kCore2, skip);
}

std::size_t McmcChain::sweep_length() const {
  double cap = domain_.area() / kHexArea;
  if (!canonical_) cap = std::min(cap, intensity_ * domain_.area());
  return std::max<std::size_t>({free_.size(), static_cast<std::size_t>(std::ceil(cap)), 1});
}

void McmcChain::translate() {
  const std::size_t n = free_.size();
  if (n == 0) return;
  const std::size_t i = rng_.below(n);
  const double s = params_.max_step;
  const Point p = free_.point(i) + Point{rng_.uniform(-s, s), rng_.uniform(-s, s)};
  if (fits(p, i)) {
    free_.move(i, p);
    ++accepted_;
  }
}

void McmcChain::birth() {
  const double n1 = static_cast<double>(free_.size() + 1);
  const double ratio = (params_.p_death / params_.p_birth) * intensity_ * domain_.area() / n1;
  const Point p = rng_.uniform_in(domain_);
  if (ratio < 1.0 && rng_.uniform() >= ratio) return;
  if (fits(p, NeighborGrid::npos)) {
    free_.add(p);
    ++accepted_;
  }
}

void McmcChain::death() {
  const std::size_t n = free_.size();
  if (n == 0) return;
  const std::size_t i = rng_.below(n);
  const double ratio = (params_.p_birth / params_.p_death) * static_cast<double>(n) / (intensity_ * domain_.area());
  if (ratio < 1.0 && rng_.uniform() >= ratio) return;
  free_.remove(i);
  ++accepted_;
}

void McmcChain::step() {
  ++proposed_;
  const double u = rng_.uniform();
  if (u < params_.p_translate)
    translate();
  else if (u < params_.p_translate + params_.p_birth)
    birth();
  else
    death();
}

void McmcChain::sweep() {
  const std::size_t m = sweep_length();
  for (std::size_t k = 0; k < m; ++k) step();
}

void McmcChain::run(std::size_t sweeps) {
  for (std::size_t s = 0; s < sweeps; ++s) sweep();
}

Configuration McmcChain::state() const { return Configuration(domain_, free_.points(), boundary_); }

Configuration sample_hard_disk_mcmc(const PoissonModelSpec& spec, const McmcParams& params, RngStream& rng) {
  McmcChain chain(spec, params, rng.split(1));
  chain.run(params.sweeps);
  return chain.state();
}

Configuration sample_hard_disk_mcmc(const UniformModelSpec& spec, const McmcParams& params, RngStream& rng) {
  McmcChain chain(spec, params, rng.split(2));
  chain.run(params.sweeps);
  return chain.state();
}

Configuration saturate(const Configuration& config, const Rect& target, double rho, double grid_pitch) {
  require(rho > 2, ErrorKind::invalid_argument, "saturation needs rho > 2");
  require(grid_pitch > 0 && grid_pitch <= 1.0, ErrorKind::invalid_argument, "grid pitch must be in (0, 1]");
  const Rect S = target.expanded(rho);
  const double lim2 = (2.0 + kSaturationMargin) * (2.0 + kSaturationMargin);
  // After the raster pass every y of S is within 2 + margin + pitch/sqrt2 < 2.8
  // of a point, so cells clipped to the box of half-width 2.8 are exact on S.
  constexpr double kBox = 2.8;

  CellList pts(S.expanded(12.0), 2.0);
  for (const Point& p : config.points()) pts.add(p);
  const std::size_t n0 = pts.size();

  const auto nx = static_cast<long>(std::ceil(S.width() / grid_pitch));
  const auto ny = static_cast<long>(std::ceil(S.height() / grid_pitch));
  for (long j = 0; j <= ny; ++j) {
    const double y = std::min(S.y0 + j * grid_pitch, S.y1);
    for (long i = 0; i <= nx; ++i) {
      const Point p{std::min(S.x0 + i * grid_pitch, S.x1), y};
      if (!pts.any_within2(p, lim2)) pts.add(p);
    }
  }

  auto farthest_vertex = [&](std::size_t i, Point& best) {
    const Point site = pts.point(i);
    std::vector<std::pair<std::size_t, Point>> nb;
    pts.for_each_within(site, 2 * kBox * std::sqrt(2.0), [&](std::size_t j, Point q) {
      if (j != i) nb.emplace_back(j, q);
    });
    const ConvexPolygon poly = cell_polygon(site, std::move(nb), &S, kBox);
    double far2 = -1;
    for (const Point& v : poly.v) {
      const double d2 = dist2(v, site);
      if (d2 > far2 || (d2 == far2 && lex_less(v, best))) {
        far2 = d2;
        best = v;
      }
    }
    return far2;
  };

  // Insertions only shrink cells, so one pass over the growing queue leaves
  // every cell within 2 + margin of its site.
  std::vector<std::size_t> queue;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (S.distance_to(pts.point(i)) <= kBox * std::sqrt(2.0)) queue.push_back(i);
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const std::size_t i = queue[q];
    Point v;
    while (farthest_vertex(i, v) > lim2) {
      if (pts.any_within2(v, lim2)) break;  // cannot happen for exact cells; stay safe
      queue.push_back(pts.add(v));
    }
  }

  std::vector<Point> free(config.free_points().begin(), config.free_points().end());
  std::vector<Point> boundary(config.boundary_points().begin(), config.boundary_points().end());
  for (std::size_t i = n0; i < pts.size(); ++i) {
    const Point p = pts.point(i);
    (config.domain().contains(p) ? free : boundary).push_back(p);
  }
  return Configuration(config.domain(), std::move(free), std::move(boundary));
}

std::size_t probe_max_count(const Rect& domain, std::span<const Point> boundary, RngStream& rng, std::size_t probes) {
  const NeighborGrid wall(relevant_boundary(boundary, domain), 2.0);
  const auto cap = static_cast<std::size_t>(std::floor(domain.expanded(1.0).area() / kPi));
  std::vector<Point> buf;
  std::size_t s = 0;
  while (s < cap) {
    bool ok = false;
    for (std::size_t k = 0; k < probes && !ok; ++k) ok = draw_uniform_valid(domain, s + 1, wall, rng, buf);
    if (!ok) break;
    ++s;
  }
  return s;
}

namespace {
WeightEstimate acceptance_fraction(const Rect& domain, const NeighborGrid& wall, std::size_t s, RngStream& rng,
                                   std::size_t draws) {
  if (s == 0) return {1.0, 0.0};
  std::vector<Point> buf;
  std::size_t hits = 0;
  for (std::size_t k = 0; k < draws; ++k) hits += draw_uniform_valid(domain, s, wall, rng, buf);
  const double f = static_cast<double>(hits) / static_cast<double>(draws);
  return {f, std::sqrt(f * (1 - f) / static_cast<double>(draws))};
}
}  // namespace

MixtureWeights mixture_weights(const Rect& domain, double intensity, std::span<const Point> boundary, RngStream& rng,
                               std::size_t mc_draws, std::size_t probes) {
  require(intensity > 0, ErrorKind::invalid_argument, "intensity must be positive");
  require(mc_draws > 0, ErrorKind::invalid_argument, "need Monte Carlo draws");
  MixtureWeights mw;
  mw.s_max = probe_max_count(domain, boundary, rng, probes);
  const NeighborGrid wall(relevant_boundary(boundary, domain), 2.0);
  const double mu = intensity * domain.area();
  // w_s = mu^s / s! * f_s, where f_s = A_s / |D|^s is the acceptance fraction.
  std::vector<double> w, wse;
  double coef = 1.0;
  for (std::size_t s = 0; s <= mw.s_max; ++s) {
    if (s > 0) coef *= mu / static_cast<double>(s);
    mw.volume.push_back(acceptance_fraction(domain, wall, s, rng, mc_draws));
    w.push_back(coef * mw.volume.back().value);
    wse.push_back(coef * mw.volume.back().se);
  }
  double W = 0;
  for (double x : w) W += x;
  for (std::size_t s = 0; s < w.size(); ++s) {
    // Delta method: dP_s/dw_s = (W - w_s)/W^2, dP_s/dw_i = -w_s/W^2.
    double var = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double g = (i == s ? (W - w[s]) : -w[s]) / (W * W);
      var += g * g * wse[i] * wse[i];
    }
    mw.probability.push_back({w[s] / W, std::sqrt(var)});
  }
  return mw;
}

WeightEstimate mixture_weight(const Rect& domain, double intensity, std::span<const Point> boundary, std::size_t s,
                              RngStream& rng, std::size_t mc_draws) {
  const MixtureWeights mw = mixture_weights(domain, intensity, boundary, rng, mc_draws);
  if (s > mw.s_max) return {0.0, 0.0};
  return mw.probability[s];
}

}  // namespace hd
