#include "harddisk/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "harddisk/acceptance.hpp"
#include "harddisk/config_io.hpp"
#include "harddisk/connectivity.hpp"
#include "harddisk/defect.hpp"
#include "harddisk/discrete.hpp"
#include "harddisk/error.hpp"
#include "harddisk/oracles.hpp"
#include "harddisk/repair.hpp"
#include "harddisk/sampling.hpp"
#include "harddisk/svg.hpp"
#include "harddisk/voronoi.hpp"

namespace hd {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

void SweepSpec::validate() const {
  require(replicas >= 1, ErrorKind::invalid_argument, "replicas must be at least 1");
  require(sweeps >= 1, ErrorKind::invalid_argument, "sweeps must be at least 1");
  require(!lambdas.empty() && !epsilons.empty() && !l1s.empty() && !l2s.empty(), ErrorKind::invalid_argument,
          "every parameter grid needs at least one value");
  for (double l : lambdas) require(l > 0, ErrorKind::invalid_argument, "lambda must be positive");
  for (double e : epsilons) require(e > 0, ErrorKind::invalid_argument, "epsilon must be positive");
  for (double a : l1s)
    for (double b : l2s)
      require(a > 0 && a < b, ErrorKind::invalid_argument, "need 0 < L1 < L2 for every pair");
  require(L0 >= 0, ErrorKind::invalid_argument, "L0 must be nonnegative");
}

SweepSpec sweep_spec_from_json(const nlohmann::json& j) {
  SweepSpec s;
  if (j.contains("lambdas")) s.lambdas = j.at("lambdas").get<std::vector<double>>();
  if (j.contains("epsilons")) s.epsilons = j.at("epsilons").get<std::vector<double>>();
  if (j.contains("l1s")) s.l1s = j.at("l1s").get<std::vector<double>>();
  if (j.contains("l2s")) s.l2s = j.at("l2s").get<std::vector<double>>();
  s.L0 = j.value("L0", s.L0);
  s.replicas = j.value("replicas", s.replicas);
  s.sweeps = j.value("sweeps", s.sweeps);
  s.wired = j.value("wired", s.wired);
  s.timing = j.value("timing", s.timing);
  s.figure = j.value("figure", s.figure);
  s.seed = j.value("seed", s.seed);
  s.validate();
  return s;
}

nlohmann::json to_json(const SweepSpec& s) {
  return {{"lambdas", s.lambdas}, {"epsilons", s.epsilons}, {"l1s", s.l1s},       {"l2s", s.l2s},
          {"L0", s.L0},           {"replicas", s.replicas}, {"sweeps", s.sweeps}, {"wired", s.wired},
          {"timing", s.timing},   {"figure", s.figure},     {"seed", s.seed}};
}

std::vector<Point> wired_frame(double half, double thickness) {
  std::vector<Point> out;
  for (const Point& p : triangular_lattice(Rect::square(half + thickness), 2.0 + 1e-6))
    if (linf(p) >= half) out.push_back(p);
  return out;
}

Configuration sweep_sample(const SweepSpec& spec, double lambda, double L2, RngStream& rng) {
  const double half = L2 + spec.L0;
  PoissonModelSpec model{Rect::square(half), lambda, {}};
  if (spec.wired) model.boundary = wired_frame(half);
  McmcParams p;
  p.sweeps = spec.sweeps;
  return sample_hard_disk_mcmc(model, p, rng);
}

SweepResult run_sweep(const SweepSpec& spec, Exec exec) {
  spec.validate();
  const auto t0 = Clock::now();
  SweepResult res;
  res.spec = spec;
  const std::size_t ne = spec.epsilons.size(), n1 = spec.l1s.size();
  for (std::size_t li = 0; li < spec.lambdas.size(); ++li) {
    for (std::size_t ki = 0; ki < spec.l2s.size(); ++ki) {
      const double lambda = spec.lambdas[li], L2 = spec.l2s[ki];
      const auto tb = Clock::now();
      // hits[r * ne * n1 + e * n1 + a]
      std::vector<char> hits(spec.replicas * ne * n1, 0);
      std::vector<double> counts(spec.replicas, 0.0);
      for_each_index(spec.replicas, exec, [&](std::size_t r) {
        RngStream g(spec.seed, ((static_cast<std::uint64_t>(li) * 1024 + ki) << 32) | r);
        const Configuration eta = sweep_sample(spec, lambda, L2, g);
        counts[r] = static_cast<double>(eta.free_count());
        for (std::size_t e = 0; e < ne; ++e)
          for (std::size_t a = 0; a < n1; ++a)
            hits[(r * ne + e) * n1 + a] = annulus_crossing(eta.points(), spec.epsilons[e], spec.l1s[a], L2).crossed;
      });
      const double seconds = since(tb);
      double mean_points = 0;
      for (double c : counts) mean_points += c / static_cast<double>(spec.replicas);
      for (std::size_t e = 0; e < ne; ++e)
        for (std::size_t a = 0; a < n1; ++a) {
          if (spec.l1s[a] >= L2) continue;
          SweepRow row;
          row.lambda = lambda;
          row.eps = spec.epsilons[e];
          row.L1 = spec.l1s[a];
          row.L2 = L2;
          row.replicas = spec.replicas;
          for (std::size_t r = 0; r < spec.replicas; ++r) row.crossed += hits[(r * ne + e) * n1 + a];
          row.freq = static_cast<double>(row.crossed) / static_cast<double>(spec.replicas);
          row.ci = wilson_interval(row.crossed, spec.replicas);
          row.seconds = seconds;
          row.mean_points = mean_points;
          res.rows.push_back(row);
        }
    }
  }
  std::sort(res.rows.begin(), res.rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return std::tie(a.lambda, a.eps, a.L1, a.L2) < std::tie(b.lambda, b.eps, b.L1, b.L2);
  });

  // log(1 - freq) against L1, only points with freq < 1.
  std::map<std::tuple<double, double, double>, std::pair<std::vector<double>, std::vector<double>>> groups;
  for (const SweepRow& r : res.rows)
    if (r.freq < 1.0) {
      auto& g = groups[{r.lambda, r.eps, r.L2}];
      g.first.push_back(r.L1);
      g.second.push_back(std::log(1.0 - r.freq));
    }
  for (const auto& [key, xy] : groups) {
    if (xy.first.size() < 2) continue;
    SlopeFit f;
    std::tie(f.lambda, f.eps, f.L2) = key;
    f.points = xy.first.size();
    f.slope = ls_slope(xy.first, xy.second);
    res.fits.push_back(f);
  }
  res.wall_seconds = since(t0);
  return res;
}

void write_sweep_csv(std::ostream& os, const SweepResult& r) {
  os << "lambda,epsilon,L1,L2,replicas,crossed,freq,lo95,hi95,seconds\n";
  for (const SweepRow& row : r.rows) {
    os << fmt(row.lambda) << ',' << fmt(row.eps) << ',' << fmt(row.L1) << ',' << fmt(row.L2) << ',' << row.replicas
       << ',' << row.crossed << ',' << fmt(row.freq) << ',' << fmt(row.ci.lo) << ',' << fmt(row.ci.hi) << ',';
    if (r.spec.timing) os << fmt(row.seconds);
    os << '\n';
  }
}

nlohmann::json to_json(const SweepResult& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const SweepRow& x : r.rows)
    rows.push_back({{"lambda", x.lambda},
                    {"epsilon", x.eps},
                    {"L1", x.L1},
                    {"L2", x.L2},
                    {"replicas", x.replicas},
                    {"crossed", x.crossed},
                    {"freq", x.freq},
                    {"lo95", x.ci.lo},
                    {"hi95", x.ci.hi},
                    {"mean_points", x.mean_points}});
  nlohmann::json fits = nlohmann::json::array();
  for (const SlopeFit& f : r.fits)
    fits.push_back({{"lambda", f.lambda}, {"epsilon", f.eps}, {"L2", f.L2}, {"points", f.points},
                    {"slope", f.slope}, {"decay_rate", -f.slope}});
  nlohmann::json j = {{"spec", to_json(r.spec)}, {"rows", rows}, {"fits", fits}};
  if (r.spec.timing) j["wall_seconds"] = r.wall_seconds;
  return j;
}

void write_sweep_outputs(const SweepResult& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream os(dir / "results.csv");
    require(static_cast<bool>(os), ErrorKind::io, "cannot write " + (dir / "results.csv").string());
    write_sweep_csv(os, r);
  }
  {
    std::ofstream os(dir / "summary.json");
    require(static_cast<bool>(os), ErrorKind::io, "cannot write " + (dir / "summary.json").string());
    os << to_json(r).dump(2) << '\n';
  }
  if (!r.spec.figure) return;
  std::map<std::tuple<double, double, double>, Series> by_curve;
  for (const SweepRow& row : r.rows) {
    Series& s = by_curve[{row.eps, row.L1, row.L2}];
    if (s.label.empty())
      s.label = "eps=" + fmt(row.eps) + " L1=" + fmt(row.L1) + " L2=" + fmt(row.L2);
    s.x.push_back(row.lambda);
    s.y.push_back(row.freq);
    s.lo.push_back(row.ci.lo);
    s.hi.push_back(row.ci.hi);
  }
  std::vector<Series> series;
  for (auto& [k, s] : by_curve) series.push_back(std::move(s));
  std::ofstream os(dir / "figure.svg");
  require(static_cast<bool>(os), ErrorKind::io, "cannot write " + (dir / "figure.svg").string());
  os << render_plot_svg(series, "lambda", "crossing frequency", true);
}

bool SelftestReport::passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const SelftestEntry& e) { return e.passed; });
}

std::vector<std::string> SelftestReport::failed_modules() const {
  std::vector<std::string> out;
  for (const SelftestEntry& e : entries)
    if (!e.passed && std::find(out.begin(), out.end(), e.module) == out.end()) out.push_back(e.module);
  return out;
}

namespace {

CheckOutcome outcome(bool ok, std::string detail) { return {ok, std::move(detail)}; }

std::vector<Point> random_points(RngStream& g, const Rect& r, std::size_t n) {
  std::vector<Point> pts(n);
  for (Point& p : pts) p = g.uniform_in(r);
  return pts;
}

Configuration random_config(const SelftestContext& ctx, std::uint64_t id, double half, double lambda,
                            std::size_t sweeps = 20) {
  RngStream g(ctx.seed, id);
  McmcParams p;
  p.sweeps = sweeps;
  return sample_hard_disk_mcmc(PoissonModelSpec{Rect::square(half), lambda, {}}, p, g);
}

CheckOutcome geometry_neighbors(const SelftestContext& ctx) {
  const Configuration c = random_config(ctx, 101, 12, 5);
  RngStream g(ctx.seed, 102);
  std::size_t bad = 0;
  for (int q = 0; q < 1000; ++q) {
    const Point center = g.uniform_in(Rect::square(14));
    const double r = g.uniform(0.0, 6.0);
    auto got = neighbors_within(c, center, r);
    std::vector<Point> want;
    for (const Point& p : c.points())
      if (dist2(p, center) <= r * r) want.push_back(p);
    std::sort(got.begin(), got.end(), lex_less);
    std::sort(want.begin(), want.end(), lex_less);
    bad += got != want;
  }
  const double grid = min_pairwise_distance(c), brute = min_distance_bruteforce(c.points());
  const bool ok = bad == 0 && grid == brute && hard_core_valid(c);
  return outcome(ok, "1000 radius queries, " + std::to_string(bad) + " mismatches; min distance " + fmt(grid) +
                         " vs " + fmt(brute));
}

CheckOutcome sampling_validity(const SelftestContext& ctx) {
  std::size_t invalid = 0, nondeterministic = 0;
  const std::size_t n = ctx.quick ? 10 : 40;
  for (std::size_t k = 0; k < n; ++k) {
    const std::vector<Point> zeta = wired_frame(6.0, 3.0);
    const PoissonModelSpec spec{Rect::square(6.0), 0.5 + static_cast<double>(k), zeta};
    McmcParams p;
    p.sweeps = 20;
    RngStream a(ctx.seed, 200 + k), b(ctx.seed, 200 + k);
    const Configuration x = sample_hard_disk_mcmc(spec, p, a), y = sample_hard_disk_mcmc(spec, p, b);
    invalid += !hard_core_valid(x);
    nondeterministic += !(x == y);
    RngStream c(ctx.seed, 300 + k);
    const Configuration z = sample_poisson_hard_disk_rejection(PoissonModelSpec{Rect::square(2.0), 0.3, {}}, c);
    invalid += !hard_core_valid(z);
  }
  return outcome(invalid == 0 && nondeterministic == 0,
                 std::to_string(2 * n) + " samples, " + std::to_string(invalid) + " invalid, " +
                     std::to_string(nondeterministic) + " differing reruns");
}

CheckOutcome defect_additivity(const SelftestContext& ctx) {
  const std::size_t n = ctx.quick ? 5 : 20;
  double worst = 0;
  for (std::size_t k = 0; k < n; ++k) {
    RngStream g(ctx.seed, 400 + k);
    const Configuration base = random_config(ctx, 450 + k, 14, g.uniform(0.5, 4.0), 10);
    const double split = g.uniform(-1.5, 1.5);
    const Rect A{-3, -3, split, 3}, B{split, -3, 3, 3}, whole{-3, -3, 3, 3};
    const Configuration xp = saturate(base, whole, 4.0);
    const double da = defect(base, xp, A, 4.0, ctx.exec).total;
    double db = defect(base, xp, B, 4.0, ctx.exec).total;
    if (ctx.fault == "defect.additivity") db += 1e-3;
    const Rect both[] = {A, B};
    const double dab = defect(base, xp, both, 4.0, ctx.exec).total;
    const double dw = defect(base, xp, whole, 4.0, ctx.exec).total;
    const double scale = std::max(1.0, std::fabs(dab));
    worst = std::max({worst, std::fabs(da + db - dab) / scale, std::fabs(dab - dw) / scale});
  }
  return outcome(worst <= 1e-9, std::to_string(n) + " splits, max relative gap " + fmt(worst));
}

CheckOutcome voronoi_coverage(const SelftestContext& ctx) {
  const std::size_t n = ctx.quick ? 10 : 40;
  std::size_t bad = 0;
  double worst = 0;
  for (std::size_t k = 0; k < n; ++k) {
    RngStream g(ctx.seed, 500 + k);
    const Rect region = Rect::square(g.uniform(2.0, 5.0));
    const auto pts = random_points(g, region.expanded(2.0), 5 + g.below(60));
    const double brute = max_empty_circle_bruteforce(pts, region);
    const double cov = coverage_radius(NeighborGrid(pts, 2.5), region, ctx.exec);
    if (brute <= 4.0) {
      worst = std::max(worst, std::fabs(cov - brute));
      bad += std::fabs(cov - brute) > 1e-9;
    } else {
      bad += !(cov > 4.0);
    }
  }
  return outcome(bad == 0, std::to_string(n) + " regions, " + std::to_string(bad) + " disagreements with the "
                           "brute-force empty circle, max gap " + fmt(worst));
}

CheckOutcome connectivity_components(const SelftestContext& ctx) {
  const std::size_t n = ctx.quick ? 10 : 40;
  std::size_t bad = 0;
  for (std::size_t k = 0; k < n; ++k) {
    RngStream g(ctx.seed, 600 + k);
    const auto pts = random_points(g, Rect::square(g.uniform(3.0, 10.0)), 2 + g.below(120));
    const double eps = g.uniform(0.05, 1.5);
    const EpsGraph graph = build_graph(pts, eps, nullptr, ctx.exec);
    bad += graph.component != components_bruteforce(pts, eps);
  }
  // Lattice rings: the circuit must wind once, by both counts.
  std::size_t rings = 0, wind_bad = 0;
  for (double L : {6.0, 10.0, 16.0}) {
    RngStream g(ctx.seed, 650 + static_cast<std::uint64_t>(L));
    // a jittered square ring at 0.95 L planted in a lattice background
    const double r = 0.95 * L;
    const int n = 4 * static_cast<int>(std::ceil(2 * r / 2.2));  // a point on every corner
    std::vector<Point> ring;
    for (int i = 0; i < n; ++i) {
      const double s = 8 * r * i / n;
      const int side = static_cast<int>(s / (2 * r));
      const double t = s - side * 2 * r - r + g.uniform(-0.05, 0.05);
      const Point c[] = {{r, t}, {-t, r}, {-r, -t}, {t, -r}};
      ring.push_back(c[side]);
    }
    std::vector<Point> pts = ring;
    for (const Point& p : triangular_lattice(Rect::square(L + 3), 2.0 + 1e-6, g.uniform(0.0, kPi / 3))) {
      bool clear = true;
      for (const Point& q : ring) clear = clear && dist2(p, q) > 4.0;
      if (clear) pts.push_back(p);
    }
    const auto w = find_large_circuit(pts, 0.5, L);
    ++rings;
    if (!w) {
      ++wind_bad;
      continue;
    }
    const double ang = winding_by_angles(w->cycle);
    wind_bad += std::abs(w->winding_number) != 1 || std::fabs(ang - w->winding_number) > 1e-9;
  }
  return outcome(bad == 0 && wind_bad == 0, std::to_string(n) + " graphs, " + std::to_string(bad) +
                                                " component mismatches; " + std::to_string(rings) +
                                                " lattice rings, " + std::to_string(wind_bad) + " winding failures");
}

CheckOutcome repair_move_bound(const SelftestContext& ctx) {
  // With K large, a blocker of a move of x lies within K of x^K_-.
  const double eps = 0.5, K = 1e5;
  const std::size_t n = ctx.quick ? 2000 : 10000;
  RngStream g(ctx.seed, 700);
  std::size_t forbidden = 0, violations = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const Point x{g.uniform(-K / 2, K / 2), g.uniform(-50.0, 50.0)};
    const int m = 1 + static_cast<int>(g.below(static_cast<std::uint64_t>(max_magnitude(eps))));
    const Point target = move_towards_axis(x, m * eps / 10, K);
    const double a = g.uniform(0.0, 2 * kPi), r = 2.0 * std::sqrt(g.uniform());
    const Point y{target.x + r * std::cos(a), target.y + r * std::sin(a)};
    if (dist2(x, y) <= 4.0) continue;
    const Configuration cfg(Rect::square(1e6), {x, y});
    const MoveResult res = elementary_move(cfg, x, m, K, eps);
    if (!std::holds_alternative<Forbidden>(res)) continue;
    ++forbidden;
    violations += !(dist(std::get<Forbidden>(res).blocker, lower_height(x, K).lower) < K);
  }
  return outcome(violations == 0 && forbidden > 0,
                 std::to_string(forbidden) + " forbidden moves, " + std::to_string(violations) + " blockers at >= K");
}

CheckOutcome repair_dist(const SelftestContext& ctx) {
  // Equal-length moves of nearby points change their distance by < eps/10
  // once K exceeds (2000/eps)^2.
  const double eps = 0.1;
  const double K = std::pow(2000.0 / eps, 2) + 1;
  const std::size_t n = ctx.quick ? 2000 : 10000;
  RngStream g(ctx.seed, 710);
  double worst = 0;
  std::size_t bad = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const Point x{g.uniform(-K / 2, K / 2), g.uniform(-100.0, 100.0)};
    const double a = g.uniform(0.0, 2 * kPi), r = 10.0 * std::sqrt(g.uniform());
    const Point y{x.x + r * std::cos(a), x.y + r * std::sin(a)};
    const double b = g.uniform(0.0, 20.0);
    const double change = std::fabs(dist(move_towards_axis(x, b, K), move_towards_axis(y, b, K)) - dist(x, y));
    worst = std::max(worst, change);
    bad += !(change < eps / 10);
  }
  return outcome(bad == 0, std::to_string(n) + " pairs, max distance change " + fmt(worst) + " (bound " +
                               fmt(eps / 10) + ")");
}

CheckOutcome discrete_crossing(const SelftestContext& ctx) {
  const std::size_t n = ctx.quick ? 40 : 200;
  std::size_t bad = 0, contours = 0, contour_bad = 0;
  for (std::size_t k = 0; k < n; ++k) {
    RngStream g(ctx.seed, 800 + k);
    const int N = 2 + static_cast<int>(g.below(5));
    const SiteSet s = bernoulli_sites(N, g.uniform(0.2, 0.9))(g);
    for (int M = 1; M < N; ++M) {
      const bool crossed = is_mn_crossing(s, M, N).crossed;
      bad += crossed != mn_crossing_bruteforce(s, M, N);
      if (crossed) continue;
      const Contour c = extract_origin_contour(s, M, N);
      ++contours;
      contour_bad += !c.closed() || c.size() % 2 != 0 || !c.encloses({0.0, 0.0});
    }
  }
  return outcome(bad == 0 && contour_bad == 0 && contours > 0,
                 std::to_string(bad) + " crossing mismatches; " + std::to_string(contours) + " contours, " +
                     std::to_string(contour_bad) + " not closed, odd or not enclosing the origin");
}

CheckOutcome oracles_quadrature(const SelftestContext& ctx) {
  const std::size_t n = ctx.quick ? 6 : 20;
  std::size_t bad = 0;
  double worst = 0;
  for (std::size_t k = 0; k < n; ++k) {
    RngStream g(ctx.seed, 900 + k);
    std::vector<Rect> dom{Rect::centered({0, 0}, g.uniform(0.5, 3.0), g.uniform(0.5, 3.0))};
    if (k % 2) {
      const Rect& a = dom.front();
      dom.push_back(Rect::centered({a.x1 + 0.2 + g.uniform(0.5, 2.0), 0}, g.uniform(0.3, 1.5), g.uniform(0.3, 2.0)));
    }
    const Quadrature q = exact_two_point_acceptance(dom, 128, 256);
    const McEstimate m = monte_carlo_two_point_acceptance(dom, g, ctx.quick ? 20000 : 200000);
    const double z = std::fabs(q.value - m.value) / std::max(m.se, 1e-12);
    worst = std::max(worst, z);
    bad += !within_sigma(q.value, q.error, m.value, m.se, 4.0);
  }
  std::size_t dedekind[5];
  for (int g = 0; g <= 4; ++g) dedekind[g] = UpwardClosedFamily::all(g).size();
  const bool counts = dedekind[0] == 2 && dedekind[1] == 3 && dedekind[2] == 6 && dedekind[3] == 20 &&
                      dedekind[4] == 168;
  return outcome(bad == 0 && counts, std::to_string(n) + " domains, " + std::to_string(bad) +
                                         " quadrature/Monte Carlo disagreements (max z " + fmt(worst) +
                                         "); family counts " + (counts ? "2 3 6 20 168" : "WRONG"));
}

CheckOutcome harness_determinism(const SelftestContext& ctx) {
  SweepSpec s;
  s.lambdas = {2, 10};
  s.l1s = {3, 4};
  s.l2s = {7};
  s.L0 = 2;
  s.replicas = ctx.quick ? 6 : 12;
  s.sweeps = 10;
  s.seed = ctx.seed;
  std::ostringstream a, b, c;
  write_sweep_csv(a, run_sweep(s, ctx.exec));
  write_sweep_csv(b, run_sweep(s, ctx.exec));
  write_sweep_csv(c, run_sweep(s, Exec::serial));
  return outcome(a.str() == b.str() && a.str() == c.str(),
                 a.str() == b.str() ? (a.str() == c.str() ? "reruns and serial run byte-identical"
                                                          : "serial and parallel CSV differ")
                                    : "reruns differ");
}

}  // namespace

std::vector<SelftestBattery> selftest_batteries() {
  return {
      {"geometry", "neighbour queries and minimum distance vs brute force", geometry_neighbors},
      {"sampling", "validity and seeded determinism", sampling_validity},
      {"defect", "additivity", defect_additivity},
      {"voronoi", "coverage radius vs brute-force empty circle", voronoi_coverage},
      {"connectivity", "components and winding vs brute force", connectivity_components},
      {"repair", "blocker distance of forbidden moves", repair_move_bound},
      {"repair", "distance change under equal moves", repair_dist},
      {"discrete", "crossing vs reachability, contour shape", discrete_crossing},
      {"oracles", "two-point quadrature vs Monte Carlo, family counts", oracles_quadrature},
      {"harness", "CSV determinism", harness_determinism},
  };
}

SelftestReport run_selftest(const SelftestOptions& options) {
  SelftestReport rep;
  auto record = [&](SelftestEntry e) {
    if (options.progress)
      *options.progress << (e.passed ? "PASS " : "FAIL ") << '[' << e.module << "] " << e.name << ": " << e.detail
                        << " (" << fmt(e.seconds) << " s)" << std::endl;
    rep.entries.push_back(std::move(e));
  };
  for (const SelftestBattery& b : selftest_batteries()) {
    const auto t0 = Clock::now();
    SelftestEntry e{b.module, b.name, false, "", 0};
    try {
      const CheckOutcome o = b.run(options.context);
      e.passed = o.passed;
      e.detail = o.detail;
    } catch (const std::exception& ex) {
      e.detail = std::string("exception: ") + ex.what();
    }
    e.seconds = since(t0);
    record(std::move(e));
  }
  if (!options.acceptance) return rep;
  AcceptanceOptions ao;
  ao.quick = options.context.quick;
  ao.exec = options.context.exec;
  for (const Criterion& c : acceptance_criteria()) {
    const auto t0 = Clock::now();
    SelftestEntry e{c.module, "criterion " + std::to_string(c.id) + ": " + c.name, false, "", 0};
    try {
      const CriterionResult r = c.run(ao);
      e.passed = r.passed;
      e.detail = r.detail;
    } catch (const std::exception& ex) {
      e.detail = std::string("exception: ") + ex.what();
    }
    e.seconds = since(t0);
    record(std::move(e));
  }
  return rep;
}

nlohmann::json to_json(const SelftestReport& r) {
  nlohmann::json entries = nlohmann::json::array();
  for (const SelftestEntry& e : r.entries)
    entries.push_back(
        {{"module", e.module}, {"name", e.name}, {"passed", e.passed}, {"detail", e.detail}, {"seconds", e.seconds}});
  return {{"passed", r.passed()}, {"failed_modules", r.failed_modules()}, {"entries", entries}};
}

}  // namespace hd
