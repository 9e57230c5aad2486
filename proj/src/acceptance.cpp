#include "harddisk/acceptance.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <cmath>
#include <sstream>

#include "harddisk/connectivity.hpp"
#include "harddisk/defect.hpp"
#include "harddisk/discrete.hpp"
#include "harddisk/harness.hpp"
#include "harddisk/oracles.hpp"
#include "harddisk/repair.hpp"
#include "harddisk/sampling.hpp"
#include "harddisk/stats.hpp"
#include "harddisk/voronoi.hpp"

namespace hd {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string num(double v) {
  std::ostringstream o;
  o.precision(6);
  o << v;
  return o.str();
}

CriterionResult start(int id) {
  for (const Criterion& c : acceptance_criteria())
    if (c.id == id) return {c.id, c.name, c.module, false, "", 0.0, nlohmann::json::object()};
  return {};
}

// Exact hard-core check of the free points against each other and against
// every boundary point, with free points required inside the domain.
bool exact_valid(const Configuration& c) {
  const auto f = c.free_points();
  const auto all = c.points();
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!c.domain().contains(f[i])) return false;
    for (std::size_t j = i + 1; j < all.size(); ++j)
      if (dist2(f[i], all[j]) <= 4.0) return false;
  }
  return true;
}

}  // namespace

const std::vector<Criterion>& acceptance_criteria() {
  static const std::vector<Criterion> list = {
      {1, "hard-core preservation", "sampling", &accept_hard_core},
      {2, "Voronoi cell lower bound", "voronoi", &accept_voronoi_lower_bound},
      {3, "defect axioms and point counting", "defect", &accept_defect_axioms},
      {4, "Poisson model as a mixture of uniform models", "sampling", &accept_poisson_mixture},
      {5, "spatial Markov property", "sampling", &accept_spatial_markov},
      {6, "repair algorithm invariants", "repair", &accept_repair},
      {7, "index-elimination inequality", "oracles", &accept_index_elimination},
      {8, "Peierls layer", "discrete", &accept_peierls},
      {9, "annulus crossing trend and lattice bridge", "harness", &accept_main_trend},
  };
  return list;
}

CriterionResult accept_hard_core(const AcceptanceOptions& o) {
  CriterionResult r = start(1);
  const auto t0 = Clock::now();
  const std::size_t per = o.quick ? 2000 : 250000;

  const PoissonModelSpec pois_small{Rect::square(2.0), 0.15, {{2.6, 0.3}, {-1.0, 3.2}}};
  const UniformModelSpec unif_small{Rect{-3, -2, 3, 2}, 3, {{3.5, 0.0}, {0.0, -2.8}}};
  const std::vector<Point> zeta3{{3.9, 0.0}, {0.0, 3.5}, {-3.2, -3.2}};
  const PoissonModelSpec pois_mcmc{Rect::square(3.0), 2.0, zeta3};
  const UniformModelSpec unif_mcmc{Rect::square(3.0), 5, zeta3};
  McmcParams gc;
  gc.sweeps = 10;
  const McmcParams cn = McmcParams::canonical(10);

  struct Kind {
    const char* name;
    std::function<Configuration(RngStream&)> draw;
    std::size_t expected;  // required free count, or npos
  };
  const std::size_t any = static_cast<std::size_t>(-1);
  const std::vector<Kind> kinds = {
      {"poisson_rejection", [&](RngStream& g) { return sample_poisson_hard_disk_rejection(pois_small, g); }, any},
      {"uniform_rejection", [&](RngStream& g) { return sample_uniform_hard_disk_rejection(unif_small, g); }, 3},
      {"mcmc_grand_canonical", [&](RngStream& g) { return sample_hard_disk_mcmc(pois_mcmc, gc, g); }, any},
      {"mcmc_canonical", [&](RngStream& g) { return sample_hard_disk_mcmc(unif_mcmc, cn, g); }, 5},
  };
  std::size_t total = 0, bad = 0;
  nlohmann::json per_kind = nlohmann::json::object();
  for (std::size_t k = 0; k < kinds.size(); ++k) {
    std::vector<char> fail(per, 0);
    for_each_index(per, o.exec, [&](std::size_t i) {
      RngStream g(o.seed, (k + 1) * 10'000'000ull + i);
      const Configuration c = kinds[k].draw(g);
      fail[i] = !exact_valid(c) || (kinds[k].expected != any && c.free_count() != kinds[k].expected);
    });
    const auto nb = static_cast<std::size_t>(std::count(fail.begin(), fail.end(), 1));
    per_kind[kinds[k].name] = {{"outputs", per}, {"violations", nb}};
    total += per;
    bad += nb;
  }
  // A few large dense chains, checked the same way.
  const std::size_t large = o.quick ? 1 : 4;
  std::vector<char> fail(large, 0);
  for_each_index(large, o.exec, [&](std::size_t i) {
    RngStream g(o.seed, 90'000'000ull + i);
    McmcParams p;
    p.sweeps = 60;
    const Configuration c = sample_hard_disk_mcmc(PoissonModelSpec{Rect::square(15.0), 20.0, {}}, p, g);
    fail[i] = !exact_valid(c);
  });
  bad += static_cast<std::size_t>(std::count(fail.begin(), fail.end(), 1));
  total += large;
  r.seconds = since(t0);
  const bool in_budget = o.quick || r.seconds <= 120.0;
  r.passed = bad == 0 && in_budget;
  r.detail = std::to_string(total) + " outputs, " + std::to_string(bad) + " with a pair at distance <= 2, " +
             num(r.seconds) + " s (budget 120 s)";
  r.data = {{"outputs", total}, {"violations", bad}, {"per_sampler", per_kind}, {"seconds", r.seconds}};
  return r;
}

CriterionResult accept_voronoi_lower_bound(const AcceptanceOptions& o) {
  CriterionResult r = start(2);
  const auto t0 = Clock::now();
  const std::size_t count = o.quick ? 6 : 100;
  const Rect Q = Rect::square(20.0);
  const double rho = 3.0;
  const double floor = kHexArea - 1e-9;
  std::vector<std::size_t> cells(count, 0), below(count, 0), unsaturated(count, 0);
  std::vector<double> min_area(count, INFINITY);
  const double intensities[] = {0.3, 1.0, 3.0, 10.0};
  for_each_index(count, o.exec, [&](std::size_t k) {
    RngStream g(o.seed, 2'000'000ull + k);
    McmcParams p;
    p.sweeps = 20;
    const Configuration base = sample_hard_disk_mcmc(PoissonModelSpec{Q, intensities[k % 4], {}}, p, g);
    const Configuration sat = saturate(base, Q, rho, 0.5);
    const NeighborGrid grid(sat.points(), 2.0);
    unsaturated[k] = !is_saturated(grid, Q, rho, 2e-9, Exec::serial);
    for (const VoronoiCell& c : voronoi_cells(sat, Q, Exec::serial)) {
      if (!c.bounded) continue;
      ++cells[k];
      min_area[k] = std::min(min_area[k], c.area);
      below[k] += c.area < floor;
    }
  });
  std::size_t n_cells = 0, n_below = 0, n_unsat = 0;
  double amin = INFINITY;
  for (std::size_t k = 0; k < count; ++k) {
    n_cells += cells[k];
    n_below += below[k];
    n_unsat += unsaturated[k];
    amin = std::min(amin, min_area[k]);
  }
  r.seconds = since(t0);
  const bool in_budget = o.quick || r.seconds <= 60.0;
  r.passed = n_below == 0 && n_unsat == 0 && n_cells > 0 && in_budget;
  r.detail = std::to_string(count) + " saturated configurations, " + std::to_string(n_cells) +
             " bounded cells, min area " + num(amin) + " (2 sqrt3 = " + num(kHexArea) + "), " +
             std::to_string(n_below) + " below, " + std::to_string(n_unsat) + " not saturated, " + num(r.seconds) +
             " s (budget 60 s)";
  r.data = {{"configurations", count}, {"cells", n_cells}, {"min_area", amin}, {"below", n_below},
            {"unsaturated", n_unsat}, {"seconds", r.seconds}};
  return r;
}

CriterionResult accept_defect_axioms(const AcceptanceOptions& o) {
  CriterionResult r = start(3);
  const auto t0 = Clock::now();
  const std::size_t triples = o.quick ? 8 : 100;
  const double rho = 4.0;
  const char* axioms[] = {"positivity", "monotonicity", "additivity", "localization"};
  std::vector<std::string> failure(triples);
  std::vector<std::size_t> checked(triples, 0);
  for_each_index(triples, o.exec, [&](std::size_t k) {
    RngStream g(o.seed, 3'000'000ull + k);
    McmcParams p;
    p.sweeps = 15;
    const Rect dom = Rect::square(16.0);
    const Configuration base = sample_hard_disk_mcmc(PoissonModelSpec{dom, g.uniform(0.2, 5.0), {}}, p, g);
    const Point c{g.uniform(-2.0, 2.0), g.uniform(-2.0, 2.0)};
    const Rect D = Rect::centered(c, g.uniform(1.5, 4.0), g.uniform(1.5, 4.0));
    const Configuration xp = saturate(base, D, rho, 0.5);
    // xi: a random subset of xi' (drop about 10% of the points).
    std::vector<Point> keep_free, keep_bnd;
    for (std::size_t i = 0; i < xp.size(); ++i) {
      if (g.bernoulli(0.1)) continue;
      (xp.is_free(i) ? keep_free : keep_bnd).push_back(xp.points()[i]);
    }
    const Configuration xi(xp.domain(), keep_free, keep_bnd);
    DefectPropertyOptions opt;
    opt.rho = rho;
    opt.rel_tol = 1e-9;
    const Rect doms[] = {D};
    const PropertyReport rep = check_defect_properties(xi, xp, doms, opt, Exec::serial);
    for (const PropertyCheck& ck : rep.checks)
      for (const char* a : axioms)
        if (ck.property == a && ck.applicable) {
          ++checked[k];
          if (!ck.holds) failure[k] += ck.property + " on " + ck.instance + ": " + ck.detail + "; ";
        }
  });
  std::size_t n_checked = 0, n_failed = 0;
  std::string first;
  for (std::size_t k = 0; k < triples; ++k) {
    n_checked += checked[k];
    if (!failure[k].empty()) {
      ++n_failed;
      if (first.empty()) first = failure[k];
    }
  }

  // Point counting on triangular packings.
  std::size_t pc_checked = 0, pc_failed = 0;
  nlohmann::json packings = nlohmann::json::array();
  for (double L : {5.0, 10.0, 20.0})
    for (int variant = 0; variant < 3; ++variant) {
      RngStream g(o.seed, 3'500'000ull + static_cast<std::uint64_t>(L) * 10 + variant);
      const double angle = variant == 0 ? 0.0 : g.uniform(0.0, kPi / 3);
      const Point off = variant == 0 ? Point{} : Point{g.uniform(0.0, 2.0), g.uniform(0.0, 2.0)};
      const Rect big = Rect::square(L + rho + 10.0);
      const Configuration lat(big, triangular_lattice(big, 2.0 + 1e-9, angle, off));
      DefectPropertyOptions opt;
      opt.rho = rho;
      const Rect doms[] = {Rect::square(L)};
      const PropertyReport rep = check_defect_properties(lat, lat, doms, opt, Exec::serial);
      for (const PropertyCheck& ck : rep.checks)
        if (ck.property == "point_counting") {
          ++pc_checked;
          pc_failed += !ck.holds;
          packings.push_back({{"L", L}, {"variant", variant}, {"holds", ck.holds}, {"detail", ck.detail}});
        }
    }
  r.seconds = since(t0);
  r.passed = n_failed == 0 && n_checked >= 3 * triples && pc_failed == 0 && pc_checked == 9;
  r.detail = std::to_string(triples) + " triples, " + std::to_string(n_checked) + " axiom checks, " +
             std::to_string(n_failed) + " failing triples; point counting " + std::to_string(pc_checked - pc_failed) +
             "/" + std::to_string(pc_checked) + " packings" + (first.empty() ? "" : "; first failure: " + first);
  r.data = {{"triples", triples}, {"checks", n_checked}, {"failed_triples", n_failed}, {"packings", packings}};
  return r;
}

CriterionResult accept_poisson_mixture(const AcceptanceOptions& o) {
  CriterionResult r = start(4);
  const auto t0 = Clock::now();
  const std::size_t draws = o.quick ? 5000 : 100000;
  bool ok = true;
  std::ostringstream det;
  nlohmann::json data = nlohmann::json::object();

  auto histogram = [&](const PoissonModelSpec& spec, bool mcmc, std::uint64_t salt, std::size_t kmax) {
    std::vector<std::size_t> counts(draws);
    for_each_index(draws, o.exec, [&](std::size_t i) {
      RngStream g(o.seed, salt + i);
      McmcParams p;
      p.sweeps = 50;
      const Configuration c = mcmc ? sample_hard_disk_mcmc(spec, p, g) : sample_poisson_hard_disk_rejection(spec, g);
      counts[i] = c.free_count();
    });
    std::vector<double> f(kmax + 1, 0.0);
    for (std::size_t c : counts)
      if (c <= kmax) f[c] += 1.0 / static_cast<double>(draws);
    return f;
  };

  // Q_0.5, lambda = 3: at most one point fits, Pr(s = 1) = 3 / 4.
  const PoissonModelSpec half{Rect::square(0.5), 3.0, {}};
  for (bool mcmc : {false, true}) {
    const auto f = histogram(half, mcmc, mcmc ? 4'100'000'000ull : 4'000'000'000ull, 1);
    const double se = bernoulli_se(f[1], draws);
    const bool good = within_sigma(f[1], se, 0.75, 0.0);
    ok = ok && good;
    det << (mcmc ? "mcmc" : "rejection") << " Q_0.5 Pr(s=1)=" << num(f[1]) << " (0.75) " << (good ? "ok" : "FAIL")
        << "; ";
    data[mcmc ? "half_mcmc" : "half_rejection"] = {{"p1", f[1]}, {"se", se}};
  }

  // Q_1, lambda = 1 against the mixture weights.
  const PoissonModelSpec unit{Rect::square(1.0), 1.0, {}};
  RngStream wg(o.seed, 4'200'000'000ull);
  const MixtureWeights w = mixture_weights(unit.domain, unit.intensity, {}, wg, o.quick ? 20000 : 100000,
                                           o.quick ? 2000 : 10000);
  nlohmann::json weights = nlohmann::json::array();
  for (std::size_t k = 0; k <= 3; ++k) {
    const WeightEstimate e = k < w.probability.size() ? w.probability[k] : WeightEstimate{0.0, 0.0};
    weights.push_back({{"k", k}, {"value", e.value}, {"se", e.se}});
  }
  data["weights"] = weights;
  for (bool mcmc : {false, true}) {
    const auto f = histogram(unit, mcmc, mcmc ? 4'400'000'000ull : 4'300'000'000ull, 3);
    for (std::size_t k = 0; k <= 3; ++k) {
      const double wk = weights[k]["value"], sk = weights[k]["se"];
      const bool good = within_sigma(f[k], bernoulli_se(f[k], draws), wk, sk);
      ok = ok && good;
      if (!good)
        det << (mcmc ? "mcmc" : "rejection") << " Q_1 Pr(s=" << k << ")=" << num(f[k]) << " vs " << num(wk)
            << " FAIL; ";
    }
    data[mcmc ? "unit_mcmc" : "unit_rejection"] = f;
  }
  det << "Q_1 weights " << num(weights[0]["value"]) << ", " << num(weights[1]["value"]) << ", "
      << num(weights[2]["value"]) << ", " << num(weights[3]["value"]) << " (s0 = " << w.s_max << ")";
  r.seconds = since(t0);
  r.passed = ok;
  r.detail = det.str();
  r.data = data;
  return r;
}

CriterionResult accept_spatial_markov(const AcceptanceOptions& o) {
  CriterionResult r = start(5);
  const auto t0 = Clock::now();
  const std::size_t samples = o.quick ? 4000 : 100000;
  // D0 = (-5,5) x (-2,2); D1, D2 squares of side 1.2 (diameter < 2, so each
  // holds at most one point) at distance 4.8 > rho = 2.5. E_i = {D_i occupied}.
  const Rect D0{-5, -2, 5, 2};
  const Rect D[2] = {Rect::centered({-3, 0}, 0.6, 0.6), Rect::centered({3, 0}, 0.6, 0.6)};
  const double lambda = 1.5;
  const int grid = 64;
  std::vector<char> joint(samples, 0);
  std::vector<double> product(samples, 0.0);
  for_each_index(samples, o.exec, [&](std::size_t i) {
    RngStream g(o.seed, 5'000'000ull + i);
    McmcParams p;
    p.sweeps = 25;
    const Configuration eta = sample_hard_disk_mcmc(PoissonModelSpec{D0, lambda, {}}, p, g);
    bool both = true;
    double prod = 1.0;
    for (const Rect& d : D) {
      bool occupied = false;
      std::vector<Point> outside;
      for (const Point& q : eta.points()) {
        if (d.contains(q))
          occupied = true;
        else if (d.distance_to(q) < 2.0)
          outside.push_back(q);
      }
      both = both && occupied;
      // Poisson model in d given the outside: at most one point, placed
      // uniformly on the free area A, so Pr(occupied) = lambda A / (1 + lambda A).
      std::size_t free_cells = 0;
      for (int a = 0; a < grid; ++a)
        for (int b = 0; b < grid; ++b) {
          const Point y{d.x0 + (a + 0.5) * d.width() / grid, d.y0 + (b + 0.5) * d.height() / grid};
          bool ok = true;
          for (const Point& q : outside) ok = ok && dist2(y, q) > 4.0;
          free_cells += ok;
        }
      const double A = d.area() * static_cast<double>(free_cells) / (grid * grid);
      prod *= lambda * A / (1 + lambda * A);
    }
    joint[i] = both;
    product[i] = prod;
  });
  const double n = static_cast<double>(samples);
  const double pj = static_cast<double>(std::count(joint.begin(), joint.end(), 1)) / n;
  const MeanSe m = mean_se(product);
  const double se_j = bernoulli_se(pj, samples);
  r.seconds = since(t0);
  r.passed = within_sigma(pj, se_j, m.mean, m.se);
  r.detail = "Pr(E1 and E2) = " + num(pj) + " +- " + num(se_j) + ", E[P1 P2] = " + num(m.mean) + " +- " +
             num(m.se) + " over " + std::to_string(samples) + " samples";
  r.data = {{"joint", pj}, {"joint_se", se_j}, {"nested", m.mean}, {"nested_se", m.se}, {"samples", samples}};
  return r;
}

CriterionResult accept_repair(const AcceptanceOptions& o) {
  CriterionResult r = start(6);
  const auto t0 = Clock::now();
  const std::size_t inputs = o.quick ? 10 : 1000;
  struct Outcome {
    bool valid = true, counts = true, single = true, bounded = true;
    bool reported = false, report_confirmed = true;
    bool completed_confirmed = true;
    bool crossed = false;
    bool vacuous_nu = false;  // nu >= 4n - 1 makes the crossing condition empty
    std::size_t moves = 0, blocks = 0;
    std::string error;
  };
  std::vector<Outcome> out(inputs);
  for_each_index(inputs, o.exec, [&](std::size_t k) {
    Outcome& res = out[k];
    try {
      RngStream g(o.seed, 6'000'000ull + k);
      RepairParams p;
      p.K = k % 4 == 3 ? 6.0 : 5.0;
      p.n = k % 3 == 2 ? 3 : 2;
      p.eps = 0.5;
      p.c = 0.05;
      p.rho = 3.0;
      p.desk_mode = true;
      const Configuration xi = desk_repair_input(p, g);
      const Saturator sat = box_saturator(p);
      const ThinBoxSpec box = repair_box(p);
      const Configuration phi = sat(xi);
      const Saturator cached = [&](const Configuration& c) { return c == xi ? phi : sat(c); };
      p.delta0 = defect(xi, phi, box.R_prime(), p.rho, Exec::serial).total + 1.0;
      const RepairTrace tr = run_repair(xi, p, cached, Exec::serial);
      res.moves = tr.moves.size();
      res.blocks = tr.blocks.size();
      for (std::size_t s = 0; s < tr.states.size(); ++s) {
        res.valid = res.valid && tr.state_valid[s] && exact_valid(tr.states[s]);
        res.counts = res.counts && tr.states[s].free_count() == xi.free_count() &&
                     std::equal(tr.states[s].boundary_points().begin(), tr.states[s].boundary_points().end(),
                                xi.boundary_points().begin(), xi.boundary_points().end());
      }
      std::vector<std::size_t> idx;
      for (const RepairMove& m : tr.moves) idx.push_back(m.point_index);
      std::sort(idx.begin(), idx.end());
      res.single = std::adjacent_find(idx.begin(), idx.end()) == idx.end();
      res.bounded = static_cast<double>(tr.length()) <= tr.k0;
      const Configuration& last = tr.states.back();
      const double pitch = p.eps / 4;
      if (tr.termination == Termination::reported_empty_space) {
        res.reported = true;
        res.report_confirmed = admits_empty_space(last.points(), p.eps, box.R(), pitch).has_value();
      } else {
        const double nu = 6 * p.delta0 / p.c;
        res.vacuous_nu = nu >= box.cube_count();
        res.crossed = box_cross(last.points(), box, p.eps, nu, Exec::serial).crossed;
        res.completed_confirmed = res.crossed || admits_empty_space(last.points(), p.eps, box.R(), pitch).has_value();
      }
    } catch (const std::exception& e) {
      res.error = e.what();
    }
  });
  std::size_t invalid = 0, counts = 0, twice = 0, unbounded = 0, reported = 0, unconfirmed_report = 0,
              unconfirmed_completion = 0, errors = 0, moves = 0, blocks = 0, crossed = 0,
              vacuous = 0;
  std::string first_error;
  for (const Outcome& x : out) {
    invalid += !x.valid;
    counts += !x.counts;
    twice += !x.single;
    unbounded += !x.bounded;
    reported += x.reported;
    unconfirmed_report += !x.report_confirmed;
    unconfirmed_completion += !x.completed_confirmed;
    crossed += x.crossed;
    vacuous += x.vacuous_nu;
    moves += x.moves;
    blocks += x.blocks;
    if (!x.error.empty()) {
      ++errors;
      if (first_error.empty()) first_error = x.error;
    }
  }
  r.seconds = since(t0);
  r.passed = invalid + counts + twice + unbounded + unconfirmed_report + unconfirmed_completion + errors == 0;
  r.detail = std::to_string(inputs) + " inputs, " + std::to_string(blocks) + " blocks, " + std::to_string(moves) +
             " moves; invalid " + std::to_string(invalid) + ", count changes " + std::to_string(counts) +
             ", moved twice " + std::to_string(twice) + ", over k0 " + std::to_string(unbounded) + "; terminations " +
             std::to_string(reported) + " (unconfirmed " + std::to_string(unconfirmed_report) + "), completed " +
             std::to_string(inputs - reported - errors) + " (crossed " + std::to_string(crossed) + ", of which nu >= 4n-1 in " + std::to_string(vacuous) +
             ", unconfirmed " +
             std::to_string(unconfirmed_completion) + ")" +
             (errors ? ", errors " + std::to_string(errors) + ": " + first_error : "");
  r.data = {{"inputs", inputs},     {"blocks", blocks},
            {"moves", moves},       {"invalid", invalid},
            {"count_changes", counts}, {"moved_twice", twice},
            {"over_k0", unbounded}, {"terminations", reported},
            {"unconfirmed_terminations", unconfirmed_report},
            {"crossed", crossed},   {"vacuous_nu", vacuous},
            {"unconfirmed_completions", unconfirmed_completion},
            {"errors", errors}};
  return r;
}

CriterionResult accept_index_elimination(const AcceptanceOptions& o) {
  CriterionResult r = start(7);
  const auto t0 = Clock::now();
  std::size_t instances = 0, violations = 0, families = 0;
  double worst = -INFINITY;
  RngStream g(o.seed, 7'000'000ull);
  const std::size_t weights = o.quick ? 10 : 100;
  for (int n = 0; n <= 4; ++n) {
    const auto all = UpwardClosedFamily::all(n);
    families += all.size();
    for (const UpwardClosedFamily& f : all)
      for (std::size_t w = 0; w < weights; ++w) {
        std::vector<double> a(static_cast<std::size_t>(n));
        for (double& v : a) v = g.uniform();
        for (std::uint32_t J = 0; J < (1u << n); ++J) {
          const auto res = index_elimination_check(J, a, f);
          ++instances;
          violations += !res.holds;
          worst = std::max(worst, res.lhs - res.rhs);
        }
      }
  }
  const std::size_t random = o.quick ? 2000 : 100000;
  std::vector<double> gap(random);
  for_each_index(random, o.exec, [&](std::size_t i) {
    RngStream h(o.seed, 7'100'000ull + i);
    const UpwardClosedFamily f = UpwardClosedFamily::random(8, h);
    std::vector<double> a(8);
    for (double& v : a) v = h.uniform();
    const auto J = static_cast<std::uint32_t>(h.below(256));
    const auto res = index_elimination_check(J, a, f);
    gap[i] = res.holds ? res.lhs - res.rhs : INFINITY;
  });
  for (double d : gap) {
    violations += d == INFINITY;
    worst = std::max(worst, d);
  }
  instances += random;
  r.seconds = since(t0);
  r.passed = violations == 0 && families == 2 + 3 + 6 + 20 + 168;
  r.detail = std::to_string(families) + " upward-closed families on |I| <= 4, " + std::to_string(instances) +
             " instances, " + std::to_string(violations) + " violations, max lhs - rhs " + num(worst);
  r.data = {{"families", families}, {"instances", instances}, {"violations", violations}, {"max_gap", worst}};
  return r;
}

CriterionResult accept_peierls(const AcceptanceOptions& o) {
  CriterionResult r = start(8);
  const auto t0 = Clock::now();
  std::ostringstream det;
  bool ok = true;

  // BFS against Warshall reachability.
  const std::size_t per = o.quick ? 20 : 200;
  std::size_t compared = 0, mismatches = 0;
  for (int N = 1; N <= 6; ++N) {
    std::vector<std::size_t> bad(per, 0), cnt(per, 0);
    for_each_index(per, o.exec, [&](std::size_t t) {
      RngStream g(o.seed, 8'000'000ull + static_cast<std::uint64_t>(N) * 10'000 + t);
      const double theta = g.uniform(0.3, 0.9);
      const SiteSet s = bernoulli_sites(N, theta)(g);
      for (int M = 1; M <= N; ++M) {
        const LatticeChain c = is_mn_crossing(s, M, N);
        bool chain_ok = true;
        if (c.crossed) {
          chain_ok = !c.chain.empty() && linf(c.chain.front()) == M && linf(c.chain.back()) == N;
          for (std::size_t i = 0; i < c.chain.size(); ++i) {
            chain_ok = chain_ok && s.contains(c.chain[i]);
            if (i + 1 < c.chain.size())
              chain_ok = chain_ok && std::abs(c.chain[i].x - c.chain[i + 1].x) +
                                             std::abs(c.chain[i].y - c.chain[i + 1].y) ==
                                         1;
          }
        }
        ++cnt[t];
        bad[t] += c.crossed != mn_crossing_bruteforce(s, M, N) || !chain_ok;
      }
    });
    for (std::size_t t = 0; t < per; ++t) {
      compared += cnt[t];
      mismatches += bad[t];
    }
  }
  ok = ok && mismatches == 0;
  det << "crossing vs reachability: " << mismatches << "/" << compared << " mismatches; ";

  const auto counts = enumerate_contours(14);
  std::size_t odd = 0;
  for (const auto& [size, n] : counts)
    if (size % 2 == 1) odd += n;
  const std::uint64_t c4 = counts.count(4) ? counts.at(4) : 0;
  ok = ok && c4 == 1 && odd == 0;
  det << "contours count(4) = " << c4 << ", odd sizes total " << odd << "; ";
  nlohmann::json contour_counts = nlohmann::json::object();
  for (const auto& [size, n] : counts) contour_counts[std::to_string(size)] = n;

  // Bernoulli(0.95) sites, N = 12: crossing frequency in M.
  const int N = 12;
  const std::size_t trials = o.quick ? 400 : 4000;
  std::vector<double> freq, se;
  for (int M = 1; M <= 4; ++M) {
    std::vector<char> hit(trials, 0);
    for_each_index(trials, o.exec, [&](std::size_t t) {
      RngStream g(o.seed, 8'500'000ull + static_cast<std::uint64_t>(M) * 100'000 + t);
      hit[t] = is_mn_crossing(bernoulli_sites(N, 0.95)(g), M, N).crossed;
    });
    const double f = static_cast<double>(std::count(hit.begin(), hit.end(), 1)) / static_cast<double>(trials);
    freq.push_back(f);
    se.push_back(bernoulli_se(f, trials));
  }
  bool mono = true;
  for (std::size_t i = 0; i + 1 < freq.size(); ++i)
    mono = mono && freq[i + 1] + 3 * std::sqrt(se[i] * se[i] + se[i + 1] * se[i + 1]) + 1e-12 >= freq[i];
  const bool toward_one = freq.back() >= freq.front() - 1e-12 && freq.back() > 0.99;
  ok = ok && mono && toward_one;
  det << "Bernoulli(0.95) N=12 crossing freq M=1..4: " << num(freq[0]) << ", " << num(freq[1]) << ", "
      << num(freq[2]) << ", " << num(freq[3]) << (mono && toward_one ? "" : " FAIL");
  r.seconds = since(t0);
  r.passed = ok;
  r.detail = det.str();
  r.data = {{"compared", compared}, {"mismatches", mismatches}, {"contours", contour_counts}, {"freq", freq}};
  return r;
}

CriterionResult accept_main_trend(const AcceptanceOptions& o) {
  CriterionResult r = start(9);
  const auto t0 = Clock::now();
  SweepSpec spec;
  spec.lambdas = {1, 5, 20, 80};
  spec.epsilons = {0.5};
  spec.l1s = {5};
  spec.l2s = {15};
  spec.L0 = 5;
  spec.replicas = o.quick ? 24 : 200;
  spec.sweeps = o.quick ? 40 : 300;
  spec.seed = o.seed;
  std::ostringstream det;

  // Sampling is shared with the tau bridge: rerun the replicas here so the
  // samples are available, then aggregate exactly as run_sweep does.
  const double eps = 0.5, L1 = 5, L2 = 15, tauL = 5;
  const int tauN = 3;
  std::vector<double> freq, se;
  std::size_t tau_positive = 0, tau_bridge_fail = 0, tau_pair_fail = 0, nonempty_tau = 0;
  for (std::size_t li = 0; li < spec.lambdas.size(); ++li) {
    std::vector<char> crossed(spec.replicas, 0), positive(spec.replicas, 0), bridge_fail(spec.replicas, 0),
        pair_fail(spec.replicas, 0), nonempty(spec.replicas, 0);
    for_each_index(spec.replicas, o.exec, [&](std::size_t i) {
      RngStream g(spec.seed, (static_cast<std::uint64_t>(li) << 40) | i);
      const Configuration eta = sweep_sample(spec, spec.lambdas[li], L2, g);
      crossed[i] = annulus_crossing(eta.points(), eps, L1, L2).crossed;
      const TauResult tau = tau_from_configuration(eta.points(), eps, tauL, tauN, Exec::serial);
      nonempty[i] = tau.sites.size() > 0;
      for (int M = 1; M < tauN; ++M) {
        const LatticeChain ch = is_mn_crossing(tau.sites, M, tauN);
        if (!ch.crossed) continue;
        positive[i] = 1;
        const BridgeReport b = chain_to_annulus(eta.points(), eps, tauL, M, tauN, ch.chain, tau.circuits);
        bridge_fail[i] |= !b.holds;
        pair_fail[i] |= b.pair_bound_violations > 0;
      }
    });
    const double f = static_cast<double>(std::count(crossed.begin(), crossed.end(), 1)) / spec.replicas;
    freq.push_back(f);
    se.push_back(bernoulli_se(f, spec.replicas));
    tau_positive += static_cast<std::size_t>(std::count(positive.begin(), positive.end(), 1));
    tau_bridge_fail += static_cast<std::size_t>(std::count(bridge_fail.begin(), bridge_fail.end(), 1));
    tau_pair_fail += static_cast<std::size_t>(std::count(pair_fail.begin(), pair_fail.end(), 1));
    nonempty_tau += static_cast<std::size_t>(std::count(nonempty.begin(), nonempty.end(), 1));
  }
  bool mono = true;
  for (std::size_t i = 0; i + 1 < freq.size(); ++i)
    mono = mono && freq[i + 1] + 3 * std::sqrt(se[i] * se[i] + se[i + 1] * se[i + 1]) + 1e-12 >= freq[i];
  det << "crossing freq at lambda 1, 5, 20, 80: " << num(freq[0]) << ", " << num(freq[1]) << ", " << num(freq[2])
      << ", " << num(freq[3]) << " (" << spec.replicas << " samples each)" << (mono ? "" : " NOT MONOTONE") << "; ";
  det << "samples with nonempty tau " << nonempty_tau << ", discrete crossings " << tau_positive
      << ", bridge failures " << tau_bridge_fail << "; ";

  // Constructed lattice instances where tau is large.
  std::size_t built = 0, built_positive = 0, built_fail = 0, built_pairs = 0, built_pair_fail = 0;
  const double L = 40;
  const int N = 2;
  const Rect cover = Rect::square((N + 1) * L + 4);
  auto bridge = [&](const std::vector<Point>& pts) {
    ++built;
    const TauResult tau = tau_from_configuration(pts, eps, L, N, o.exec);
    const LatticeChain ch = is_mn_crossing(tau.sites, 1, N);
    if (!ch.crossed) return;
    ++built_positive;
    const BridgeReport b = chain_to_annulus(pts, eps, L, 1, N, ch.chain, tau.circuits);
    built_fail += !b.holds;
    built_pairs += b.intersecting_pairs;
    built_pair_fail += b.pair_bound_violations > 0 || b.links_without_intersection > 0;
  };
  const std::vector<Point> full = triangular_lattice(cover, 2.0 + 1e-6);
  bridge(full);
  std::vector<Point> strip;
  for (const Point& p : full)
    if (std::fabs(p.y) < L) strip.push_back(p);
  bridge(strip);
  const std::size_t random_instances = o.quick ? 1 : 6;
  for (std::size_t k = 0; k < random_instances; ++k) {
    RngStream g(o.seed, 9'900'000ull + k);
    std::vector<Point> pts;
    std::vector<std::pair<Point, double>> holes;
    for (int h = 0; h < 12; ++h) holes.push_back({g.uniform_in(cover), g.uniform(3.0, 15.0)});
    for (const Point& p : triangular_lattice(cover, 2.0 + g.uniform(1e-6, 0.3), g.uniform(0.0, kPi / 3),
                                             {g.uniform(0.0, 2.0), g.uniform(0.0, 2.0)})) {
      bool cut = false;
      for (const auto& [c, rad] : holes) cut = cut || dist(p, c) < rad;
      if (!cut) pts.push_back(p);
    }
    bridge(pts);
  }
  det << "lattice instances " << built << ", discrete crossings " << built_positive << ", bridge failures "
      << built_fail << ", intersecting edge pairs " << built_pairs;

  r.seconds = since(t0);
  const bool in_budget = o.quick || r.seconds <= 600.0;
  r.passed = mono && tau_bridge_fail == 0 && tau_pair_fail == 0 && built_positive >= 2 && built_fail == 0 &&
             built_pair_fail == 0 && in_budget;
  det << "; " << num(r.seconds) << " s (budget 600 s)";
  r.detail = det.str();
  r.data = {{"lambdas", spec.lambdas},        {"freq", freq},
            {"se", se},                       {"replicas", spec.replicas},
            {"sample_tau_nonempty", nonempty_tau}, {"sample_discrete_crossings", tau_positive},
            {"sample_bridge_failures", tau_bridge_fail}, {"lattice_instances", built},
            {"lattice_crossings", built_positive},      {"lattice_bridge_failures", built_fail},
            {"seconds", r.seconds}};
  return r;
}

}  // namespace hd
