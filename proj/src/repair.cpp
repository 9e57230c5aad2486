#include "harddisk/repair.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "harddisk/defect.hpp"
#include "harddisk/neighbor_grid.hpp"
#include "harddisk/sampling.hpp"

namespace hd {

ChordPoints lower_height(Point x, double K, Axis axis) {
  const double dx = x.x - axis.a;
  require(K > 0 && std::fabs(dx) < K, ErrorKind::out_of_range, "dist(x, axis) must be < K");
  const double half = std::sqrt(K * K - dx * dx);
  ChordPoints c;
  c.h_minus = x.y - half;
  c.h_plus = x.y + half;
  c.lower = {axis.a, c.h_minus};
  c.upper = {axis.a, c.h_plus};
  return c;
}

Point move_towards_axis(Point x, double b, double K, Axis axis) {
  const Point target = lower_height(x, K, axis).lower;
  return x + (b / K) * (target - x);
}

int max_magnitude(double eps) {
  require(eps > 0, ErrorKind::invalid_argument, "eps must be positive");
  return static_cast<int>(std::ceil(100.0 / eps - 1e-12));
}

namespace {

std::optional<std::size_t> find_free(const Configuration& c, Point x) {
  const auto f = c.free_points();
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] == x) return i;
  return std::nullopt;
}

void check_magnitude(int m, double eps, double K) {
  require(m >= 1 && m <= max_magnitude(eps), ErrorKind::out_of_range, "magnitude out of range");
  require(m * eps / 10.0 <= K, ErrorKind::out_of_range, "move longer than the radius K");
}

}  // namespace

MoveResult elementary_move(const Configuration& config, Point x, int m, double K, double eps, Axis axis) {
  check_magnitude(m, eps, K);
  const auto idx = find_free(config, x);
  require(idx.has_value(), ErrorKind::not_found, "point is not a free point of the configuration");
  const Point target = move_towards_axis(x, m * eps / 10.0, K, axis);
  double best = std::numeric_limits<double>::infinity();
  std::size_t who = 0;
  const auto pts = config.points();
  for (std::size_t j = 0; j < pts.size(); ++j) {
    if (j == *idx) continue;
    const double d2 = dist2(pts[j], target);
    if (d2 <= 4.0 && d2 < best) {
      best = d2;
      who = j;
    }
  }
  if (std::isfinite(best)) return Forbidden{pts[who], who};
  std::vector<Point> free(config.free_points().begin(), config.free_points().end());
  free[*idx] = target;
  return config.with_free(std::move(free));
}

char to_char(CubeType t) { return "ABCDE"[static_cast<int>(t)]; }

CubeClassification classify_from_defects(std::vector<double> defects, int n, double c) {
  require(n >= 1 && static_cast<int>(defects.size()) == 4 * n - 1, ErrorKind::invalid_argument,
          "need 4n - 1 cube defects");
  CubeClassification cl;
  cl.n = n;
  cl.threshold = c / 2;
  cl.defects = std::move(defects);
  const int lo = cl.first(), hi = cl.last();
  auto low = [&](int i) { return cl.defect(i) < cl.threshold; };
  cl.types.assign(cl.defects.size(), CubeType::E);
  auto set = [&](int i, CubeType t) { cl.types[static_cast<std::size_t>(i - lo)] = t; };
  for (int i = lo; i <= hi; ++i) {
    if (low(i)) continue;
    bool below = false, above = false;
    for (int j = lo; j < i; ++j) below = below || low(j);
    for (int j = i + 1; j <= hi; ++j) above = above || low(j);
    set(i, below && above ? CubeType::A : CubeType::B);
  }
  for (int i = lo; i <= hi; ++i) {
    if (!low(i)) continue;
    if (i > lo && i < hi && low(i - 1) && low(i + 1))
      set(i, CubeType::C);
    else if ((i > lo && cl.type(i - 1) == CubeType::A) || (i < hi && cl.type(i + 1) == CubeType::A))
      set(i, CubeType::D);
  }
  return cl;
}

CubeClassification classify_cubes(const Configuration& xi, const Configuration& phi_xi, double K, int n, double c,
                                  double rho, Exec exec) {
  ThinBoxSpec box{K, n, Orientation::vertical, {}, rho};
  box.validate(false);
  std::vector<double> d(static_cast<std::size_t>(box.cube_count()));
  for (int i = box.first(); i <= box.last(); ++i)
    d[static_cast<std::size_t>(i - box.first())] = defect(xi, phi_xi, box.cube(i), rho, exec).total;
  return classify_from_defects(std::move(d), n, c);
}

double proof_K(double eps, double rho) {
  require(eps > 0, ErrorKind::invalid_argument, "eps must be positive");
  const double k2 = (2000.0 / eps) * (2000.0 / eps);
  return std::max({5000.0 / eps, k2, 100.0 * rho, 1000.0 / eps}) + 1.0;
}

double k0_bound(double K, double delta0, double c) {
  const double per_cube = std::ceil((10 * K + 2) * (10 * K + 2) / kPi);
  return 1.0 + per_cube * 6.0 * delta0 / c;
}

double c0_bound(double K, double eps, double delta0, double c) {
  require(K > 20, ErrorKind::invalid_argument, "c0 bound needs K > 20");
  const double v = (K / (K - 20)) * std::ceil(100.0 / eps) * (6.0 * delta0 / c) * (10 * K + 2) * (10 * K + 2) / kPi;
  return 1.0 / v;
}

ThinBoxSpec repair_box(const RepairParams& p) { return ThinBoxSpec{p.K, p.n, Orientation::vertical, {}, p.rho}; }

Saturator box_saturator(const RepairParams& params, double pitch) {
  const Rect target = repair_box(params).R_prime();
  const double rho = params.rho;
  return [target, rho, pitch](const Configuration& xi) { return saturate(xi, target, rho, pitch); };
}

namespace {

struct Working {
  std::vector<Point> free;
  std::vector<Point> boundary;
  CellList all;  // free points occupy indices [0, free.size())
  Working(const Configuration& c, const Rect& bounds) : all(bounds, 2.0) {
    free.assign(c.free_points().begin(), c.free_points().end());
    boundary.assign(c.boundary_points().begin(), c.boundary_points().end());
    for (const Point& p : free) all.add(p);
    for (const Point& p : boundary) all.add(p);
  }
};

bool locally_valid(const CellList& all, std::size_t i) { return !all.any_within2(all.point(i), 4.0, i); }

}  // namespace

RepairTrace run_repair(const Configuration& xi, const RepairParams& p, const Saturator& saturator, Exec exec) {
  const ThinBoxSpec box = repair_box(p);
  require(p.eps > 0 && p.c > 0 && p.delta0 > 0, ErrorKind::invalid_argument, "eps, c, delta0 must be positive");
  require(xi.domain() == box.R(), ErrorKind::invalid_argument, "configuration domain must be R(K, n)");
  if (p.desk_mode)
    require(p.K > 2.0 && p.rho > 2.0, ErrorKind::invalid_argument, "desk mode still needs K > 2 and rho > 2");
  else
    require(p.K >= proof_K(p.eps, p.rho), ErrorKind::invalid_argument, "K below the proof's threshold");

  RepairTrace tr;
  tr.k0 = k0_bound(p.K, p.delta0, p.c);
  tr.states.push_back(xi);
  tr.state_valid.push_back(hard_core_valid(xi));

  const Configuration phi = saturator(xi);
  tr.classification = classify_cubes(xi, phi, p.K, p.n, p.c, p.rho, exec);
  const CubeClassification& cl = tr.classification;

  // Maximal runs of Type A cubes, bottom to top; their flanks are Type D.
  std::vector<std::pair<int, int>> runs;
  for (int i = cl.first(); i <= cl.last(); ++i) {
    if (cl.type(i) != CubeType::A) continue;
    int j = i;
    while (j + 1 <= cl.last() && cl.type(j + 1) == CubeType::A) ++j;
    runs.emplace_back(i - 1, j + 1);
    i = j;
  }
  if (runs.empty()) return tr;

  Working cur(xi, box.R_prime().expanded(4 * p.K));
  const Axis axis{};
  const double reach = 2.0 + p.eps;
  const int m_cap = p.desk_mode ? std::min(max_magnitude(p.eps), static_cast<int>(std::floor(10.0 * p.K / p.eps)))
                                : max_magnitude(p.eps);
  std::vector<char> moved(cur.free.size(), 0);
  std::vector<int> claimed(cur.free.size(), -1);

  for (std::size_t b = 0; b < runs.size(); ++b) {
    const auto [j1, j2] = runs[b];
    RepairBlock blk{j1, j2, {}, 0, false};
    const Point o1 = box.cube_center(j1), o2 = box.cube_center(j2);
    const double K2 = p.K * p.K;

    // w: lowest h_- among points of B_K(o_j2), ties broken lexicographically.
    std::optional<std::size_t> w;
    double hw = 0;
    for (std::size_t i = 0; i < cur.free.size(); ++i) {
      if (dist2(cur.free[i], o2) >= K2) continue;
      const double h = lower_height(cur.free[i], p.K, axis).h_minus;
      if (!w || h < hw || (h == hw && lex_less(cur.free[i], cur.free[*w]))) {
        w = i;
        hw = h;
      }
    }
    if (!w) {
      blk.skipped = true;
      tr.blocks.push_back(blk);
      continue;
    }
    blk.w = cur.free[*w];

    std::vector<std::pair<double, std::size_t>> order;
    for (std::size_t i = 0; i < cur.free.size(); ++i) {
      const Point x = cur.free[i];
      if (std::fabs(x.x - axis.a) >= p.K) continue;
      const double h = lower_height(x, p.K, axis).h_minus;
      if (h >= 10.0 * j1 * p.K && h <= hw) order.emplace_back(h, i);
    }
    std::sort(order.begin(), order.end(), [&](const auto& a, const auto& c) {
      return a.first < c.first || (a.first == c.first && lex_less(cur.free[a.second], cur.free[c.second]));
    });
    blk.affected = order.size();
    for (const auto& [h, i] : order) {
      if (claimed[i] >= 0) tr.regions_disjoint = false;
      claimed[i] = static_cast<int>(b);
    }

    // Anchor set: points of B_K(o_j1) (free or frozen) plus processed x'_i.
    std::vector<Point> anchors;
    for (const Point& q : cur.all.points())
      if (dist2(q, o1) < K2) anchors.push_back(q);
    CellList anchor_grid(box.R_prime().expanded(4 * p.K), reach);
    for (const Point& q : anchors) anchor_grid.add(q);

    for (const auto& [h, i] : order) {
      const Point x = cur.free[i];
      if (anchor_grid.any_within2(x, reach * reach)) {
        anchor_grid.add(x);
        continue;
      }
      std::optional<Point> target;
      int mag = 0;
      for (int m = 1; m <= m_cap && !target; ++m) {
        const Point xp = move_towards_axis(x, m * p.eps / 10.0, p.K, axis);
        bool blocked = false;
        const Point low = lower_height(x, p.K, axis).lower;
        cur.all.for_each_within(xp, 2.0, [&](std::size_t j, Point y) {
          if (j == i) return;
          blocked = true;
          ++tr.blocker_checks;
          if (dist2(y, low) >= K2) ++tr.blocker_violations;
        });
        if (blocked) continue;
        bool connects = false;
        anchor_grid.for_each_within(xp, reach, [&](std::size_t, Point y) {
          if (dist2(xp, y) < reach * reach) connects = true;
        });
        if (connects) {
          target = xp;
          mag = m;
        }
      }
      if (!target) {
        tr.termination = Termination::reported_empty_space;
        tr.terminated_at = x;
        tr.blocks.push_back(blk);
        return tr;
      }
      if (moved[i]) tr.regions_disjoint = false;
      moved[i] = 1;
      cur.free[i] = *target;
      cur.all.move(i, *target);
      anchor_grid.add(*target);
      tr.moves.push_back({i, {x, *target, mag, p.K}, static_cast<int>(b)});
      tr.states.push_back(Configuration(xi.domain(), cur.free, cur.boundary));
      tr.state_valid.push_back(locally_valid(cur.all, i));
    }
    tr.blocks.push_back(blk);
  }
  return tr;
}

nlohmann::json to_json(const RepairTrace& t, bool include_states) {
  nlohmann::json moves = nlohmann::json::array();
  for (const RepairMove& m : t.moves)
    moves.push_back({{"index", m.point_index},
                     {"from", {m.move.from.x, m.move.from.y}},
                     {"to", {m.move.to.x, m.move.to.y}},
                     {"magnitude", m.move.magnitude},
                     {"block", m.block}});
  std::string types;
  for (CubeType c : t.classification.types) types += to_char(c);
  nlohmann::json blocks = nlohmann::json::array();
  for (const RepairBlock& b : t.blocks)
    blocks.push_back({{"j1", b.j1}, {"j2", b.j2}, {"affected", b.affected}, {"skipped", b.skipped}});
  nlohmann::json j{{"length", t.length()},
                   {"k0", t.k0},
                   {"termination", t.termination == Termination::completed ? "completed" : "reported_empty_space"},
                   {"cube_types", types},
                   {"cube_defects", t.classification.defects},
                   {"blocks", blocks},
                   {"moves", moves},
                   {"state_valid", t.state_valid},
                   {"blocker_checks", t.blocker_checks},
                   {"blocker_violations", t.blocker_violations},
                   {"regions_disjoint", t.regions_disjoint}};
  if (t.terminated_at) j["terminated_at"] = {t.terminated_at->x, t.terminated_at->y};
  if (include_states) {
    nlohmann::json states = nlohmann::json::array();
    for (const Configuration& s : t.states) {
      nlohmann::json f = nlohmann::json::array();
      for (const Point& q : s.free_points()) f.push_back({q.x, q.y});
      states.push_back(f);
    }
    j["states"] = states;
  }
  return j;
}

KeyProperty3Report verify_key_property_3(const RepairParams& params, const std::vector<Point>& zeta, std::size_t s,
                                         const Saturator& saturator, int level, std::size_t trials, RngStream& rng,
                                         std::size_t sweeps, Exec exec) {
  require(level >= 1 && trials > 0, ErrorKind::invalid_argument, "need level >= 1 and trials > 0");
  const ThinBoxSpec box = repair_box(params);
  KeyProperty3Report rep;
  rep.level = level;
  rep.trials = trials;
  rep.c0 = params.K > 20 ? c0_bound(params.K, params.eps, params.delta0, params.c) : 0.0;
  const UniformModelSpec model{box.R(), s, zeta};
  std::vector<std::size_t> length(trials, 0);
  const std::uint64_t seed = rng.engine()();
  for_each_index(trials, exec, [&](std::size_t t) {
    RngStream r(seed, t);
    const Configuration eta = sample_hard_disk_mcmc(model, McmcParams::canonical(sweeps), r);
    length[t] = run_repair(eta, params, saturator, Exec::serial).length();
  });
  for (std::size_t L : length) {
    rep.reach_level += L >= static_cast<std::size_t>(level);
    rep.reach_next += L >= static_cast<std::size_t>(level) + 1;
  }
  const double n = static_cast<double>(trials);
  rep.p_next = rep.reach_next / n;
  rep.p_continue = rep.reach_level / n;
  if (rep.reach_level == 0) {
    rep.ratio = 0;
    rep.holds = true;  // both sides vanish
    return rep;
  }
  rep.ratio = static_cast<double>(rep.reach_next) / rep.reach_level;
  rep.ratio_se = std::sqrt(rep.ratio * (1 - rep.ratio) / rep.reach_level);
  rep.inconclusive = rep.reach_level < 30;
  rep.holds = rep.ratio + 3 * rep.ratio_se >= rep.c0;
  return rep;
}

Configuration desk_repair_input(const RepairParams& params, RngStream& rng) {
  const ThinBoxSpec box = repair_box(params);
  const Rect R = box.R();
  const double spacing = 2.0 + rng.uniform(1e-9, 1e-7);
  const double angle = rng.uniform(0.0, kPi / 3);
  const Point offset{rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0)};
  const std::vector<Point> lattice = triangular_lattice(box.R_prime().expanded(params.rho + 4.0), spacing, angle, offset);
  struct Hole {
    bool disk;
    Point c;
    double r;
  };
  std::vector<Hole> holes;
  const std::size_t count = rng.below(3);
  for (std::size_t k = 0; k < count; ++k) {
    if (rng.bernoulli(0.5))
      holes.push_back({true, rng.uniform_in(R), rng.uniform(1.0, 6.0)});
    else
      holes.push_back({false, {0.0, rng.uniform(R.y0, R.y1)}, rng.uniform(0.5, 3.0)});
  }
  std::vector<Point> free, frozen;
  for (const Point& p : lattice) {
    if (!R.contains(p)) {
      frozen.push_back(p);
      continue;
    }
    bool cut = false;
    for (const Hole& h : holes) cut = cut || (h.disk ? dist(p, h.c) < h.r : std::fabs(p.y - h.c.y) < h.r);
    if (!cut) free.push_back(p);
  }
  return Configuration(R, std::move(free), std::move(frozen));
}

}  // namespace hd
