#include "harddisk/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "harddisk/error.hpp"
#include "harddisk/neighbor_grid.hpp"
#include "harddisk/polygon.hpp"
#include "harddisk/stats.hpp"

namespace hd {

SiteSet::SiteSet(int N) : N_(N) {
  require(N >= 0, ErrorKind::invalid_argument, "site set radius must be >= 0");
  mask_.assign(static_cast<std::size_t>(side()) * static_cast<std::size_t>(side()), 0);
}

SiteSet SiteSet::full(int N) {
  SiteSet s(N);
  std::fill(s.mask_.begin(), s.mask_.end(), 1);
  return s;
}

void SiteSet::insert(Site s) {
  require(in_range(s), ErrorKind::out_of_range, "site outside Q_N");
  mask_[index(s)] = 1;
}

void SiteSet::erase(Site s) {
  if (in_range(s)) mask_[index(s)] = 0;
}

std::size_t SiteSet::size() const { return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), 1)); }

std::vector<Site> SiteSet::sites() const {
  std::vector<Site> out;
  for (int y = -N_; y <= N_; ++y)
    for (int x = -N_; x <= N_; ++x)
      if (mask_[index({x, y})]) out.push_back({x, y});
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

constexpr Site kSteps[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

Site operator+(Site a, Site b) { return {a.x + b.x, a.y + b.y}; }
Site operator-(Site a, Site b) { return {a.x - b.x, a.y - b.y}; }

}  // namespace

TauResult tau_from_configuration(std::span<const Point> points, double eps, double L, int N, Exec exec) {
  require(L > 0 && eps > 0 && N >= 0, ErrorKind::invalid_argument, "need L > 0, eps > 0, N >= 0");
  TauResult out{SiteSet(N), {}};
  const int side = 2 * N + 1;
  const std::size_t count = static_cast<std::size_t>(side) * static_cast<std::size_t>(side);
  std::vector<std::optional<CircuitWitness>> found(count);
  const NeighborGrid grid(points, std::max(L / 4, 4.0));
  for_each_index(count, exec, [&](std::size_t k) {
    const Site t{static_cast<int>(k % side) - N, static_cast<int>(k / side) - N};
    const Point c{L * t.x, L * t.y};
    std::vector<Point> local;
    std::vector<std::size_t> ids;
    grid.for_each_within(c, L * std::sqrt(2.0), [&](std::size_t i, Point q) {
      if (linf(q - c) < L) {
        local.push_back(q);
        ids.push_back(i);
      }
    });
    auto w = find_large_circuit(local, eps, L, c);
    if (!w) return;
    for (auto& id : w->vertex_ids) id = ids[id];
    found[k] = std::move(*w);
  });
  for (std::size_t k = 0; k < count; ++k) {
    if (!found[k]) continue;
    const Site t{static_cast<int>(k % side) - N, static_cast<int>(k / side) - N};
    out.sites.insert(t);
    out.circuits.emplace(t, std::move(*found[k]));
  }
  return out;
}

LatticeChain is_mn_crossing(const SiteSet& sites, int M, int N) {
  require(M > 0 && M <= N, ErrorKind::invalid_argument, "need 0 < M <= N");
  LatticeChain out;
  const int R = std::min(N, sites.N());
  if (R < N) return out;
  SiteSet seen(R);
  std::vector<Site> parent(static_cast<std::size_t>(seen.side()) * seen.side());
  std::deque<Site> queue;
  for (const Site& s : sites.sites())
    if (linf(s) == M) {
      seen.insert(s);
      parent[seen.index(s)] = s;
      queue.push_back(s);
    }
  while (!queue.empty()) {
    const Site s = queue.front();
    queue.pop_front();
    if (linf(s) == N) {
      out.crossed = true;
      Site cur = s;
      out.chain.push_back(cur);
      while (!(parent[seen.index(cur)] == cur)) {
        cur = parent[seen.index(cur)];
        out.chain.push_back(cur);
      }
      std::reverse(out.chain.begin(), out.chain.end());
      return out;
    }
    for (const Site& d : kSteps) {
      const Site n = s + d;
      if (!sites.contains(n) || linf(n) > N || seen.contains(n)) continue;
      seen.insert(n);
      parent[seen.index(n)] = s;
      queue.push_back(n);
    }
  }
  return out;
}

bool Contour::encloses(Point p) const {
  bool inside = false;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const Site a = loop[i], b = loop[(i + 1) % loop.size()];
    const Point pa{a.x - 0.5, a.y - 0.5}, pb{b.x - 0.5, b.y - 0.5};
    if ((pa.y > p.y) == (pb.y > p.y)) continue;
    const double x = pa.x + (p.y - pa.y) * (pb.x - pa.x) / (pb.y - pa.y);
    if (x > p.x) inside = !inside;
  }
  return inside;
}

bool Contour::closed() const {
  if (loop.size() < 4) return false;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const Site d = loop[(i + 1) % loop.size()] - loop[i];
    if (std::abs(d.x) + std::abs(d.y) != 1) return false;
  }
  return true;
}

std::vector<Contour> boundary_contours(const SiteSet& sigma) {
  const int N = sigma.N();
  auto member = [&](Site s) { return !sigma.in_range(s) || sigma.contains(s); };
  // Directed boundary edges with the non-member square on the left.
  struct Edge {
    Site from, dir;
    bool used = false;
  };
  std::vector<Edge> edges;
  for (int y = -N; y <= N; ++y)
    for (int x = -N; x <= N; ++x) {
      const Site s{x, y};
      if (member(s)) continue;
      for (const Site& e : kSteps) {
        if (!member(s + e)) continue;
        const Site d{-e.y, e.x};
        const Site start{s.x + (e.x - d.x + 1) / 2, s.y + (e.y - d.y + 1) / 2};
        edges.push_back({start, d});
      }
    }
  std::map<Site, std::vector<std::size_t>> out_of;
  for (std::size_t i = 0; i < edges.size(); ++i) out_of[edges[i].from].push_back(i);

  std::vector<Contour> contours;
  for (std::size_t first = 0; first < edges.size(); ++first) {
    if (edges[first].used) continue;
    Contour c;
    std::size_t cur = first;
    while (true) {
      edges[cur].used = true;
      c.loop.push_back(edges[cur].from);
      const Site at = edges[cur].from + edges[cur].dir;
      const Site din = edges[cur].dir;
      const Site prefs[3] = {{din.y, -din.x}, din, {-din.y, din.x}};  // right, straight, left
      std::optional<std::size_t> next;
      for (const Site& want : prefs) {
        for (std::size_t k : out_of[at])
          if (!edges[k].used && edges[k].dir == want) next = k;
        if (next) break;
        // The closing edge is already used; accept it when it is the start.
        if (edges[first].from == at && edges[first].dir == want) break;
      }
      if (!next) break;
      cur = *next;
    }
    contours.push_back(std::move(c));
  }
  return contours;
}

Contour extract_origin_contour(const SiteSet& sites, int M, int N) {
  require(M > 0 && M <= N && sites.N() >= N, ErrorKind::invalid_argument, "need 0 < M <= N <= sites.N()");
  if (is_mn_crossing(sites, M, N).crossed)
    throw Error(ErrorKind::crossing_detected, "site set is (M, N)-crossing");
  SiteSet sigma(N);
  std::deque<Site> queue;
  for (int y = -N; y <= N; ++y)
    for (int x = -N; x <= N; ++x) {
      const Site s{x, y};
      if (linf(s) < N) continue;
      sigma.insert(s);
      if (sites.contains(s)) queue.push_back(s);
    }
  while (!queue.empty()) {
    const Site s = queue.front();
    queue.pop_front();
    for (const Site& d : kSteps) {
      const Site n = s + d;
      if (linf(n) >= N || !sites.contains(n) || sigma.contains(n)) continue;
      sigma.insert(n);
      queue.push_back(n);
    }
  }
  std::vector<Contour> around;
  for (Contour& c : boundary_contours(sigma))
    if (c.encloses({0.0, 0.0})) around.push_back(std::move(c));
  require(around.size() == 1, ErrorKind::degenerate_input, "expected exactly one contour around the origin");
  return std::move(around.front());
}

namespace {

struct PolygonCounter {
  int max_size;
  int span;
  std::vector<char> visited;
  std::map<int, std::uint64_t> counts;
  Site start, root_end;

  std::size_t cell(Site v) const { return static_cast<std::size_t>((v.y + span) * (2 * span + 1) + (v.x + span)); }

  // Vertical dual edge between (x, 0) and (x, 1) crosses the ray y = 0, x > 0.
  static bool on_ray(Site a, Site b) { return a.x == b.x && a.x >= 1 && std::min(a.y, b.y) == 0 && std::max(a.y, b.y) == 1; }

  void walk(Site at, int len, int crossings) {
    for (const Site& d : kSteps) {
      const Site n = at + d;
      const bool ray = on_ray(at, n);
      if (ray && n.x < start.x) continue;  // the root is the innermost ray crossing
      if (n == start) {
        if (len + 1 >= 4 && len + 1 <= max_size && (crossings + ray) % 2 == 1) ++counts[len + 1];
        continue;
      }
      if (std::abs(n.x) > span || std::abs(n.y) > span || visited[cell(n)]) continue;
      const int rest = std::abs(n.x - start.x) + std::abs(n.y - start.y);
      if (len + 1 + rest > max_size) continue;
      visited[cell(n)] = 1;
      walk(n, len + 1, crossings + ray);
      visited[cell(n)] = 0;
    }
  }
};

}  // namespace

std::map<int, std::uint64_t> enumerate_contours(int max_size) {
  require(max_size >= 0 && max_size <= 20, ErrorKind::invalid_argument, "max_size must be in [0, 20]");
  PolygonCounter pc{max_size, max_size + 2, {}, {}, {}, {}};
  for (int s = 4; s <= max_size; s += 1) pc.counts[s] = 0;
  pc.visited.assign(static_cast<std::size_t>((2 * pc.span + 1) * (2 * pc.span + 1)), 0);
  for (int k = 0; 2 * k + 4 <= max_size; ++k) {
    pc.start = {k + 1, 0};
    const Site top{k + 1, 1};
    pc.visited[pc.cell(pc.start)] = 1;
    pc.visited[pc.cell(top)] = 1;
    pc.walk(top, 1, 1);
    pc.visited[pc.cell(pc.start)] = 0;
    pc.visited[pc.cell(top)] = 0;
  }
  return pc.counts;
}

GrowthFit contour_growth(const std::map<int, std::uint64_t>& counts) {
  GrowthFit g;
  double last = 0.0;
  for (const auto& [size, n] : counts) {
    auto it = counts.find(size + 2);
    if (it == counts.end() || n == 0 || it->second == 0) continue;
    last = static_cast<double>(it->second) / static_cast<double>(n);
    g.max_ratio = std::max(g.max_ratio, last);
  }
  g.per_step = std::sqrt(last);
  return g;
}

bool neighbor_free(std::span<const Site> sites) {
  for (std::size_t i = 0; i < sites.size(); ++i)
    for (std::size_t j = i + 1; j < sites.size(); ++j)
      if (linf(sites[i] - sites[j]) <= 1) return false;
  return true;
}

DensityReport p_dense_check(const SiteSampler& sampler, double p, int N, std::size_t trials, RngStream& rng,
                            std::size_t subsets, int max_m) {
  require(p > 0 && p <= 1 && trials > 0 && max_m >= 1 && N >= 0, ErrorKind::invalid_argument,
          "need p in (0,1], trials > 0, max_m >= 1");
  DensityReport rep;
  rep.p = p;
  rep.trials = trials;
  std::vector<SiteSet> draws;
  draws.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) draws.push_back(sampler(rng));
  const int side = 2 * N + 1;
  for (std::size_t q = 0; q < subsets; ++q) {
    const int m = 1 + static_cast<int>(q % static_cast<std::size_t>(max_m));
    DensityProbe probe;
    for (int attempt = 0; attempt < 10000 && static_cast<int>(probe.subset.size()) < m; ++attempt) {
      const Site s{static_cast<int>(rng.below(side)) - N, static_cast<int>(rng.below(side)) - N};
      bool ok = true;
      for (const Site& u : probe.subset) ok = ok && linf(u - s) > 1;
      if (ok) probe.subset.push_back(s);
    }
    require(static_cast<int>(probe.subset.size()) == m, ErrorKind::infeasible, "no room for a neighbour-free subset");
    for (const SiteSet& d : draws) {
      bool all = true;
      for (const Site& u : probe.subset) all = all && !d.contains(u);
      probe.absent += all;
    }
    probe.freq = static_cast<double>(probe.absent) / static_cast<double>(trials);
    probe.target = std::pow(p, m);
    probe.holds = probe.freq + 3 * bernoulli_se(probe.freq, trials) >= probe.target - 1e-12;
    rep.dense = rep.dense && probe.holds;
    rep.probes.push_back(std::move(probe));
  }
  return rep;
}

SiteSampler bernoulli_sites(int N, double theta) {
  require(theta >= 0 && theta <= 1, ErrorKind::invalid_argument, "theta must be in [0, 1]");
  return [N, theta](RngStream& rng) {
    SiteSet s(N);
    for (int y = -N; y <= N; ++y)
      for (int x = -N; x <= N; ++x)
        if (rng.uniform() < theta) s.insert({x, y});
    return s;
  };
}

PeierlsBound peierls_bound(int M, double p, double c1, double C1, double C2, int d) {
  require(M >= 1 && p >= 0 && d >= 2, ErrorKind::invalid_argument, "need M >= 1, p >= 0, d >= 2");
  if (C2 * p >= 1) return {0.0, true};
  return {1.0 - C1 * std::pow(C2 * p, c1 * std::pow(static_cast<double>(M), d - 1)), false};
}

PeierlsFit fit_peierls_constants(std::span<const int> Ms, std::span<const double> freqs, double p) {
  require(Ms.size() == freqs.size() && p > 0 && p < 1, ErrorKind::invalid_argument, "mismatched fit input");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < Ms.size(); ++i)
    if (freqs[i] < 1) {
      x.push_back(Ms[i] * std::log(p));
      y.push_back(std::log(1 - freqs[i]));
    }
  PeierlsFit f;
  f.c1 = x.size() >= 2 ? ls_slope(x, y) : 1.0;
  for (std::size_t i = 0; i < Ms.size(); ++i)
    f.C1 = std::max(f.C1, (1 - freqs[i]) / std::pow(p, f.c1 * Ms[i]));
  return f;
}

BridgeReport chain_to_annulus(std::span<const Point> points, double eps, double L, int M, int N,
                              std::span<const Site> chain, const std::map<Site, CircuitWitness>& circuits,
                              bool strict) {
  require(L > 0 && M > 0 && M <= N, ErrorKind::invalid_argument, "need L > 0 and 0 < M <= N");
  BridgeReport rep;
  rep.inner = strict ? (M + 1) * L : M * L;
  rep.outer = strict ? (N - 1) * L : N * L;
  if (chain.empty()) return rep;
  const EpsGraph g = build_graph(points, eps, nullptr, Exec::serial);
  std::optional<std::uint32_t> comp;
  rep.same_component = true;
  for (const Site& t : chain) {
    const auto it = circuits.find(t);
    require(it != circuits.end(), ErrorKind::not_found, "chain site without a circuit");
    for (std::size_t id : it->second.vertex_ids) {
      const std::uint32_t c = g.component[id];
      if (!comp) comp = c;
      rep.same_component = rep.same_component && c == *comp;
    }
  }
  if (comp)
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
      if (g.component[v] != *comp) continue;
      const double r = linf(g.vertices[v]);
      rep.reaches_inner = rep.reaches_inner || r < rep.inner;
      rep.reaches_outer = rep.reaches_outer || r >= rep.outer;
    }
  const double reach = 2.0 + eps + 1e-12;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    const auto& a = circuits.at(chain[i]).cycle;
    const auto& b = circuits.at(chain[i + 1]).cycle;
    std::size_t found = 0;
    for (std::size_t p = 0; p < a.size(); ++p)
      for (std::size_t q = 0; q < b.size(); ++q) {
        const Point x = a[p], y = a[(p + 1) % a.size()];
        const Point z = b[q], w = b[(q + 1) % b.size()];
        if (!segments_intersect(x, y, z, w)) continue;
        ++found;
        const bool ok = std::min(dist(x, z), dist(y, w)) <= reach && std::min(dist(x, w), dist(y, z)) <= reach;
        rep.pair_bound_violations += !ok;
      }
    rep.intersecting_pairs += found;
    rep.links_without_intersection += found == 0;
  }
  rep.holds = rep.same_component && rep.reaches_inner && rep.reaches_outer;
  return rep;
}

nlohmann::json to_json(const SiteSet& s) {
  nlohmann::json j = nlohmann::json::array();
  for (const Site& t : s.sites()) j.push_back({t.x, t.y});
  return j;
}

SiteSet site_set_from_json(const nlohmann::json& j, int N) {
  SiteSet s(N);
  for (const auto& t : j) s.insert({t.at(0).get<int>(), t.at(1).get<int>()});
  return s;
}

nlohmann::json to_json(const Contour& c) {
  nlohmann::json loop = nlohmann::json::array();
  for (const Site& v : c.loop) loop.push_back({v.x - 0.5, v.y - 0.5});
  return {{"size", c.size()}, {"loop", loop}};
}

}  // namespace hd
