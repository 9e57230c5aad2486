#include "harddisk/connectivity.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "harddisk/neighbor_grid.hpp"
#include "harddisk/polygon.hpp"

namespace hd {

namespace {

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

double reach2(double eps) { return (2.0 + eps) * (2.0 + eps); }

}  // namespace

std::vector<std::vector<std::uint32_t>> EpsGraph::adjacency() const {
  std::vector<std::vector<std::uint32_t>> adj(vertices.size());
  for (const auto& [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

EpsGraph build_graph(std::span<const Point> points, double eps, const Rect* region, Exec exec) {
  require(eps > 0, ErrorKind::invalid_argument, "eps must be positive");
  EpsGraph g;
  g.eps = eps;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (!region || region->contains(points[i])) {
      g.vertices.push_back(points[i]);
      g.source.push_back(i);
    }
  const std::size_t n = g.vertices.size();
  const NeighborGrid grid(g.vertices, 2.0 + eps);
  const double r2 = reach2(eps);
  std::vector<std::vector<std::uint32_t>> higher(n);
  for_each_index(n, exec, [&](std::size_t i) {
    grid.for_each_within(g.vertices[i], 2.0 + eps, [&](std::size_t j, Point q) {
      if (j > i && dist2(g.vertices[i], q) <= r2) higher[i].push_back(static_cast<std::uint32_t>(j));
    });
    std::sort(higher[i].begin(), higher[i].end());
  });
  UnionFind uf(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::uint32_t j : higher[i]) {
      g.edges.emplace_back(static_cast<std::uint32_t>(i), j);
      uf.unite(static_cast<std::uint32_t>(i), j);
    }
  g.component.assign(n, 0);
  std::vector<std::uint32_t> label(n, std::numeric_limits<std::uint32_t>::max());
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t r = uf.find(static_cast<std::uint32_t>(i));
    if (label[r] == std::numeric_limits<std::uint32_t>::max()) label[r] = static_cast<std::uint32_t>(g.components++);
    g.component[i] = label[r];
  }
  return g;
}

CrossingWitness annulus_crossing(std::span<const Point> points, double eps, double l1, double l2, Point center) {
  const Annulus ann(l1, l2);
  const EpsGraph g = build_graph(points, eps, nullptr, Exec::serial);
  constexpr auto none = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> inner(g.components, none), outer(g.components, none);
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    const double r = linf(g.vertices[v] - center);
    const auto c = g.component[v];
    if (r < ann.inner && inner[c] == none) inner[c] = v;
    if (r >= ann.outer && outer[c] == none) outer[c] = v;
  }
  for (std::size_t c = 0; c < g.components; ++c)
    if (inner[c] != none && outer[c] != none)
      return {true, std::make_pair(g.vertices[inner[c]], g.vertices[outer[c]])};
  return {};
}

std::optional<Point> admits_empty_space(std::span<const Point> points, double eps, const Rect& domain, double pitch) {
  require(eps > 0, ErrorKind::invalid_argument, "eps must be positive");
  require(pitch > 0 && pitch <= eps / 4, ErrorKind::invalid_argument, "pitch must be in (0, eps/4]");
  const Rect centres{domain.x0 + eps, domain.y0 + eps, domain.x1 - eps, domain.y1 - eps};
  if (centres.x1 < centres.x0 || centres.y1 < centres.y0) return std::nullopt;
  const NeighborGrid grid(points, 2.0 + eps);
  const double r2 = reach2(eps);
  const auto nx = static_cast<long>(std::ceil(centres.width() / pitch));
  const auto ny = static_cast<long>(std::ceil(centres.height() / pitch));
  for (long j = 0; j <= ny; ++j) {
    const double y = std::min(centres.y0 + j * pitch, centres.y1);
    for (long i = 0; i <= nx; ++i) {
      const Point w{std::min(centres.x0 + i * pitch, centres.x1), y};
      if (!grid.any_within2(w, r2)) return w;
    }
  }
  return std::nullopt;
}

namespace {
Rect place(const ThinBoxSpec& s, double hx, double hy, double cy) {
  if (s.orientation == Orientation::vertical) return Rect::centered(s.offset + Point{0, cy}, hx, hy);
  return Rect::centered(s.offset + Point{cy, 0}, hy, hx);
}
}  // namespace

Rect ThinBoxSpec::R() const { return place(*this, K, 20.0 * n * K, 0.0); }
Rect ThinBoxSpec::R_prime() const { return place(*this, 5.0 * K, 20.0 * n * K, 0.0); }
Rect ThinBoxSpec::cube(int i) const { return place(*this, 5.0 * K, 5.0 * K, 10.0 * i * K); }
Point ThinBoxSpec::cube_center(int i) const { return cube(i).center(); }

void ThinBoxSpec::validate(bool repair_mode) const {
  require(K > 0 && n >= 1 && rho > 0, ErrorKind::invalid_argument, "thin box needs K > 0, n >= 1, rho > 0");
  if (repair_mode) require(K > 100 * rho, ErrorKind::invalid_argument, "repair mode needs K > 100 rho");
}

BoxCrossResult box_cross(std::span<const Point> points, const ThinBoxSpec& spec, double eps, double nu, Exec exec) {
  spec.validate(false);
  require(nu >= 0, ErrorKind::invalid_argument, "nu must be nonnegative");
  BoxCrossResult res;
  res.required = spec.cube_count() - nu;

  const Rect Rp = spec.R_prime();
  const EpsGraph global = build_graph(points, eps, &Rp, exec);
  std::unordered_map<std::size_t, std::uint32_t> global_label;
  for (std::size_t v = 0; v < global.vertices.size(); ++v) global_label[global.source[v]] = global.component[v];

  const int m = spec.cube_count();
  // Per cube: -1 if the cube fails, else the R'-component of its deep points.
  std::vector<long> comp(static_cast<std::size_t>(m), -1);
  for_each_index(static_cast<std::size_t>(m), exec, [&](std::size_t k) {
    const Rect P = spec.cube(spec.first() + static_cast<int>(k));
    const EpsGraph g = build_graph(points, eps, &P, Exec::serial);
    long local = -1;
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
      if (P.depth(g.vertices[v]) < spec.rho) continue;
      if (local < 0) local = g.component[v];
      if (static_cast<long>(g.component[v]) != local) return;
    }
    if (local < 0) return;
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
      if (P.depth(g.vertices[v]) >= spec.rho) {
        comp[k] = global_label.at(g.source[v]);
        return;
      }
  });

  std::unordered_map<long, std::vector<int>> groups;
  for (int k = 0; k < m; ++k)
    if (comp[k] >= 0) {
      res.passing.push_back(spec.first() + k);
      groups[comp[k]].push_back(spec.first() + k);
    }
  for (const auto& [label, idx] : groups)
    if (idx.size() > res.indices.size() || (idx.size() == res.indices.size() && !idx.empty() && idx[0] < res.indices[0]))
      res.indices = idx;
  res.crossed = static_cast<double>(res.indices.size()) >= res.required;
  return res;
}

namespace {
// Signed crossing of the segment u->v with the ray {(x, 0) : x > 0}.
int ray_crossing(Point u, Point v) {
  const bool au = u.y >= 0, av = v.y >= 0;
  if (au == av) return 0;
  const double x = u.x + (0.0 - u.y) * (v.x - u.x) / (v.y - u.y);
  if (x <= 0) return 0;
  return av ? 1 : -1;
}
}  // namespace

std::optional<CircuitWitness> find_large_circuit(std::span<const Point> points, double eps, double L, Point center) {
  require(L > 0 && eps > 0, ErrorKind::invalid_argument, "need L > 0 and eps > 0");
  const Rect hole = Rect::square(0.9 * L);
  std::vector<Point> local;
  std::vector<std::size_t> ids;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point q = points[i] - center;
    const double r = linf(q);
    if (r >= 0.9 * L && r < L) {
      local.push_back(q);
      ids.push_back(i);
    }
  }
  const std::size_t n = local.size();
  if (n < 3) return std::nullopt;

  struct Arc {
    std::uint32_t to;
    int w;
  };
  std::vector<std::vector<Arc>> adj(n);
  const NeighborGrid grid(local, 2.0 + eps);
  const double r2 = reach2(eps);
  // Weighted union-find: pot[x] is the winding level of x relative to its root.
  std::vector<std::uint32_t> parent(n);
  std::vector<int> pot(n, 0);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    int acc = 0;
    std::uint32_t r = x;
    while (parent[r] != r) {
      acc += pot[r];
      r = parent[r];
    }
    // Path compression keeping potentials consistent.
    std::uint32_t y = x;
    int rem = acc;
    while (parent[y] != y) {
      const std::uint32_t next = parent[y];
      const int p = pot[y];
      parent[y] = r;
      pot[y] = rem;
      rem -= p;
      y = next;
    }
    return std::make_pair(r, acc);
  };
  std::vector<char> twisted(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    grid.for_each_within(local[i], 2.0 + eps, [&](std::size_t j, Point q) {
      if (j <= i || dist2(local[i], q) > r2 || segment_meets_open_rect(local[i], q, hole)) return;
      const int w = ray_crossing(local[i], q);
      adj[i].push_back({static_cast<std::uint32_t>(j), w});
      adj[j].push_back({static_cast<std::uint32_t>(i), -w});
      auto [ri, pi] = find(static_cast<std::uint32_t>(i));
      auto [rj, pj] = find(static_cast<std::uint32_t>(j));
      if (ri == rj) {
        if (pi + w != pj) twisted[ri] = 1;
      } else {
        parent[rj] = ri;
        pot[rj] = pi + w - pj;
        twisted[ri] = twisted[ri] | twisted[rj];
      }
    });

  std::vector<char> candidate(n, 0);
  bool any = false;
  for (std::size_t v = 0; v < n; ++v) {
    const auto r = find(static_cast<std::uint32_t>(v)).first;
    if (!twisted[r]) continue;
    for (const Arc& a : adj[v])
      if (a.w != 0) candidate[v] = 1;
    any = any || candidate[v];
  }
  if (!any) return std::nullopt;

  // Shortest closed walk of winding +-1 by breadth-first search in the lift.
  constexpr int kLevels = 64;
  auto key = [](std::uint32_t v, int level) { return (static_cast<std::uint64_t>(v) << 8) | static_cast<std::uint8_t>(level + 128); };
  std::size_t best_len = std::numeric_limits<std::size_t>::max();
  std::vector<std::uint32_t> best_cycle;
  int best_winding = 0;
  for (std::uint32_t s = 0; s < n; ++s) {
    if (!candidate[s]) continue;
    std::unordered_map<std::uint64_t, std::pair<std::uint64_t, std::size_t>> seen;  // key -> (parent key, depth)
    std::deque<std::pair<std::uint32_t, int>> queue;
    seen[key(s, 0)] = {key(s, 0), 0};
    queue.emplace_back(s, 0);
    bool done = false;
    while (!queue.empty() && !done) {
      const auto [v, lv] = queue.front();
      queue.pop_front();
      const std::size_t depth = seen[key(v, lv)].second;
      if (depth + 1 >= best_len) break;
      for (const Arc& a : adj[v]) {
        const int nl = lv + a.w;
        if (std::abs(nl) > kLevels) continue;
        const auto k = key(a.to, nl);
        if (seen.count(k)) continue;
        seen[k] = {key(v, lv), depth + 1};
        if (a.to == s && std::abs(nl) == 1) {
          best_len = depth + 1;
          best_winding = nl;
          best_cycle.clear();
          std::uint64_t cur = seen[key(v, lv)].first;
          best_cycle.push_back(v);
          while (cur != key(s, 0)) {
            best_cycle.push_back(static_cast<std::uint32_t>(cur >> 8));
            cur = seen[cur].first;
          }
          best_cycle.push_back(s);
          std::reverse(best_cycle.begin(), best_cycle.end());
          done = true;
          break;
        }
        queue.emplace_back(a.to, nl);
      }
    }
  }
  if (best_cycle.empty()) return std::nullopt;
  CircuitWitness w;
  w.winding_number = best_winding;
  for (std::uint32_t v : best_cycle) {
    w.cycle.push_back(local[v] + center);
    w.vertex_ids.push_back(ids[v]);
  }
  return w;
}

namespace {
nlohmann::json pt(Point p) { return nlohmann::json::array({p.x, p.y}); }
}  // namespace

nlohmann::json to_json(const CircuitWitness& w) {
  nlohmann::json cyc = nlohmann::json::array();
  for (const Point& p : w.cycle) cyc.push_back(pt(p));
  return {{"cycle", cyc}, {"vertex_ids", w.vertex_ids}, {"winding_number", w.winding_number}};
}

nlohmann::json to_json(const CrossingWitness& w) {
  nlohmann::json j{{"crossed", w.crossed}};
  if (w.pair) j["pair"] = {pt(w.pair->first), pt(w.pair->second)};
  return j;
}

nlohmann::json to_json(const BoxCrossResult& r) {
  return {{"crossed", r.crossed}, {"indices", r.indices}, {"passing", r.passing}, {"required", r.required}};
}

}  // namespace hd
