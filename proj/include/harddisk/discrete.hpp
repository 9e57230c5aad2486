#pragma once

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "harddisk/connectivity.hpp"
#include "harddisk/exec.hpp"
#include "harddisk/geometry.hpp"
#include "harddisk/rng.hpp"
#include "json.hpp"

namespace hd {

struct Site {
  int x = 0;
  int y = 0;
  auto operator<=>(const Site&) const = default;
};

inline int linf(Site s) { return std::max(std::abs(s.x), std::abs(s.y)); }

// Subset of the lattice sites with |t|_inf <= N, stored as a dense mask.
class SiteSet {
 public:
  SiteSet() = default;
  explicit SiteSet(int N);
  static SiteSet full(int N);

  int N() const { return N_; }
  int side() const { return 2 * N_ + 1; }
  bool in_range(Site s) const { return linf(s) <= N_; }
  bool contains(Site s) const { return in_range(s) && mask_[index(s)] != 0; }
  void insert(Site s);
  void erase(Site s);
  std::size_t size() const;
  std::vector<Site> sites() const;  // sorted
  bool operator==(const SiteSet&) const = default;

  std::size_t index(Site s) const {
    return static_cast<std::size_t>((s.y + N_) * side() + (s.x + N_));
  }

 private:
  int N_ = 0;
  std::vector<char> mask_{0};
};

struct TauResult {
  SiteSet sites;
  std::map<Site, CircuitWitness> circuits;  // one per member site
};

// Sites t with |t|_inf <= N whose shifted box Q_L + L t holds a large circuit.
// The configuration should cover Q_{(N+1)L}.
TauResult tau_from_configuration(std::span<const Point> points, double eps, double L, int N,
                                 Exec exec = Exec::parallel);

struct LatticeChain {
  bool crossed = false;
  std::vector<Site> chain;  // from |t|_inf = M to |t|_inf = N
};

// Nearest-neighbour chain inside `sites` from the ring |t|_inf = M to the ring
// |t|_inf = N (breadth-first search, shortest chain).
LatticeChain is_mn_crossing(const SiteSet& sites, int M, int N);

// Closed dual-lattice loop. Dual vertex (i, j) is the point (i - 1/2, j - 1/2).
struct Contour {
  std::vector<Site> loop;  // dual vertices in order, first not repeated
  std::size_t size() const { return loop.size(); }
  bool encloses(Point p) const;  // ray parity
  bool closed() const;           // unit steps, returns to start
};

// Sigma set of a non-crossing site set: every site with |t|_inf >= N plus the
// members joined to the ring |t|_inf = N. Returns the contour of its boundary
// that encloses the origin. Degree-4 dual vertices take the rightmost turn.
// Throws crossing_detected if `sites` is (M, N)-crossing.
Contour extract_origin_contour(const SiteSet& sites, int M, int N);

// All boundary loops of the union of unit squares around `sigma` restricted
// to the window |t|_inf <= N, with sites beyond N counted as members.
std::vector<Contour> boundary_contours(const SiteSet& sigma);

// Counts self-avoiding dual polygons enclosing the origin by size, for sizes
// up to max_size (at most 20).
std::map<int, std::uint64_t> enumerate_contours(int max_size);

struct GrowthFit {
  double max_ratio = 0.0;  // max count(i+2)/count(i) over the sequence
  double per_step = 0.0;   // sqrt of the last ratio, an estimate of C3
};
GrowthFit contour_growth(const std::map<int, std::uint64_t>& counts);

using SiteSampler = std::function<SiteSet(RngStream&)>;

struct DensityProbe {
  std::vector<Site> subset;  // neighbour-free
  std::size_t absent = 0;
  double freq = 0.0;
  double target = 0.0;  // p^m
  bool holds = true;
};

struct DensityReport {
  double p = 0.0;
  std::size_t trials = 0;
  std::vector<DensityProbe> probes;
  bool dense = true;
};

bool neighbor_free(std::span<const Site> sites);

// Random neighbour-free subsets of sizes 1..max_m; each is tested for
// Pr(all absent) >= p^m within 3 standard errors.
DensityReport p_dense_check(const SiteSampler& sampler, double p, int N, std::size_t trials, RngStream& rng,
                            std::size_t subsets = 16, int max_m = 4);

SiteSampler bernoulli_sites(int N, double theta);

struct PeierlsBound {
  double value = 0.0;
  bool vacuous = false;  // C2 p >= 1
};

// 1 - C1 (C2 p)^(c1 M^(d-1)); the value is 0 when vacuous.
PeierlsBound peierls_bound(int M, double p, double c1, double C1, double C2, int d = 2);

struct PeierlsFit {
  double c1 = 0.0;
  double C1 = 0.0;
  double C2 = 1.0;
};

// With C2 = 1: c1 from the least-squares slope of log(1 - f_M) against
// M log p, C1 the smallest constant making every point satisfy the bound.
PeierlsFit fit_peierls_constants(std::span<const int> Ms, std::span<const double> freqs, double p);

struct BridgeReport {
  bool holds = false;
  bool same_component = false;
  bool reaches_inner = false;
  bool reaches_outer = false;
  double inner = 0.0;  // inner half-side used
  double outer = 0.0;
  std::size_t intersecting_pairs = 0;
  std::size_t pair_bound_violations = 0;
  std::size_t links_without_intersection = 0;
};

// Checks that the circuits attached to a lattice chain lie in one component
// of G_eps meeting Q_{ML} and the outside of Q_{NL}. With `strict` the
// margins are Q_{(M+1)L} and Q_{(N-1)L}.
BridgeReport chain_to_annulus(std::span<const Point> points, double eps, double L, int M, int N,
                              std::span<const Site> chain, const std::map<Site, CircuitWitness>& circuits,
                              bool strict = false);

nlohmann::json to_json(const SiteSet& s);
SiteSet site_set_from_json(const nlohmann::json& j, int N);
nlohmann::json to_json(const Contour& c);

}  // namespace hd
