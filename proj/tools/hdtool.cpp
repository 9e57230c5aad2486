// hdtool: command-line front end for the hard-disk toolkit.
#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "harddisk/config_io.hpp"
#include "harddisk/connectivity.hpp"
#include "harddisk/defect.hpp"
#include "harddisk/discrete.hpp"
#include "harddisk/error.hpp"
#include "harddisk/harness.hpp"
#include "harddisk/repair.hpp"
#include "harddisk/sampling.hpp"
#include "harddisk/svg.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace hd;

namespace {

struct Common {
  std::string config;
  std::uint64_t seed = 1;
  std::string out = "out";
  bool serial = false;

  Exec exec() const { return serial ? Exec::serial : Exec::parallel; }
};

json load_json(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream is(path);
  require(static_cast<bool>(is), ErrorKind::io, "cannot read " + path);
  return json::parse(is);
}

void write_text(const fs::path& p, const std::string& s) {
  fs::create_directories(p.parent_path());
  std::ofstream os(p);
  require(static_cast<bool>(os), ErrorKind::io, "cannot write " + p.string());
  os << s;
}

void write_json(const fs::path& p, const json& j) { write_text(p, j.dump(2) + "\n"); }

Rect domain_of(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return Rect::square(fallback);
  const json& d = j.at(key);
  return d.is_number() ? Rect::square(d.get<double>()) : rect_from_json(d);
}

// A configuration given inline ("configuration"), by file ("input"), or
// sampled from the grand-canonical model ("lambda", "L", "sweeps").
Configuration configuration_of(const json& cfg, std::uint64_t seed) {
  if (cfg.contains("configuration")) return configuration_from_json(cfg.at("configuration"));
  if (cfg.contains("input")) return load_configuration(cfg.at("input").get<std::string>());
  RngStream g(seed, 0);
  McmcParams p;
  p.sweeps = cfg.value("sweeps", std::size_t{200});
  PoissonModelSpec spec{domain_of(cfg, "L", 20.0), cfg.value("lambda", 20.0), {}};
  if (cfg.value("wired", false)) spec.boundary = wired_frame(spec.domain.half_x());
  return sample_hard_disk_mcmc(spec, p, g);
}

int cmd_sample(const Common& c) {
  const json cfg = load_json(c.config);
  const Rect D = domain_of(cfg, "L", 10.0);
  const std::string sampler = cfg.value("sampler", std::string("mcmc"));
  std::vector<Point> boundary;
  if (cfg.contains("boundary")) {
    const Configuration b = configuration_from_json(cfg.at("boundary"));
    boundary.assign(b.points().begin(), b.points().end());
  }
  if (cfg.value("wired", false)) boundary = wired_frame(D.half_x());
  const std::size_t replicas = cfg.value("replicas", std::size_t{1});
  require(replicas >= 1, ErrorKind::invalid_argument, "replicas must be at least 1");
  McmcParams p = cfg.contains("count") ? McmcParams::canonical() : McmcParams{};
  p.sweeps = cfg.value("sweeps", p.sweeps);
  json summary = json::array();
  for (std::size_t r = 0; r < replicas; ++r) {
    RngStream g(c.seed, r);
    Configuration x;
    if (cfg.contains("count")) {
      const UniformModelSpec spec{D, cfg.at("count").get<std::size_t>(), boundary};
      x = sampler == "rejection" ? sample_uniform_hard_disk_rejection(spec, g) : sample_hard_disk_mcmc(spec, p, g);
    } else {
      const PoissonModelSpec spec{D, cfg.value("lambda", 1.0), boundary};
      x = sampler == "rejection" ? sample_poisson_hard_disk_rejection(spec, g) : sample_hard_disk_mcmc(spec, p, g);
    }
    const std::string stem = replicas == 1 ? "sample" : "sample_" + std::to_string(r);
    save_configuration((fs::path(c.out) / (stem + ".json")).string(), x);
    std::ofstream csv(fs::path(c.out) / (stem + ".csv"));
    write_csv(csv, x);
    summary.push_back({{"replica", r}, {"free_points", x.free_count()}, {"valid", hard_core_valid(x)}});
    if (r == 0 && cfg.value("figure", false)) {
      SvgStyle st;
      st.frames = {D};
      write_text(fs::path(c.out) / "figure.svg", render_configuration_svg(x, st));
    }
  }
  write_json(fs::path(c.out) / "summary.json", {{"sampler", sampler}, {"seed", c.seed}, {"replicas", summary}});
  std::cout << "wrote " << replicas << " sample(s) to " << c.out << "\n";
  return 0;
}

int cmd_defect(const Common& c) {
  const json cfg = load_json(c.config);
  const Configuration xi = configuration_of(cfg, c.seed);
  const double rho = cfg.value("rho", 4.0);
  std::vector<Rect> dom;
  if (cfg.contains("domain") && cfg.at("domain").is_array())
    for (const json& r : cfg.at("domain")) dom.push_back(rect_from_json(r));
  else
    dom.push_back(domain_of(cfg, "domain", 4.0));
  Rect hull = dom.front();
  for (const Rect& r : dom) hull = {std::min(hull.x0, r.x0), std::min(hull.y0, r.y0), std::max(hull.x1, r.x1),
                                     std::max(hull.y1, r.y1)};
  const Configuration xp = cfg.contains("xi_prime") ? configuration_from_json(cfg.at("xi_prime"))
                                                     : saturate(xi, hull, rho, cfg.value("pitch", 0.5));
  const DefectReport rep = defect(xi, xp, dom, rho, c.exec());
  write_json(fs::path(c.out) / "defect.json", to_json(rep));
  std::ofstream csv(fs::path(c.out) / "defect.csv");
  write_csv(csv, rep);
  if (cfg.value("check_properties", false)) {
    DefectPropertyOptions opt;
    opt.rho = rho;
    opt.eps = cfg.value("eps", opt.eps);
    opt.c = cfg.value("c", opt.c);
    const PropertyReport pr = check_defect_properties(xi, xp, dom, opt, c.exec());
    json checks = json::array();
    for (const PropertyCheck& k : pr.checks)
      checks.push_back({{"property", k.property}, {"instance", k.instance}, {"applicable", k.applicable},
                        {"holds", k.holds}, {"detail", k.detail}});
    write_json(fs::path(c.out) / "properties.json", checks);
  }
  std::cout << "defect " << rep.total << " over " << rep.contributions.size() << " sites\n";
  return 0;
}

int cmd_cross(const Common& c) {
  const json cfg = load_json(c.config);
  const Configuration x = configuration_of(cfg, c.seed);
  const double eps = cfg.value("eps", 0.5), l1 = cfg.value("L1", 5.0), l2 = cfg.value("L2", 15.0);
  const CrossingWitness w = annulus_crossing(x.points(), eps, l1, l2);
  write_json(fs::path(c.out) / "cross.json", {{"eps", eps}, {"L1", l1}, {"L2", l2}, {"result", to_json(w)}});
  if (cfg.value("figure", false)) {
    SvgStyle st;
    st.edges_eps = eps;
    st.frames = {Rect::square(l1), Rect::square(l2)};
    write_text(fs::path(c.out) / "figure.svg", render_configuration_svg(x, st));
  }
  std::cout << (w.crossed ? "crossed" : "not crossed") << "\n";
  return 0;
}

int cmd_circuit(const Common& c) {
  const json cfg = load_json(c.config);
  const Configuration x = configuration_of(cfg, c.seed);
  const double eps = cfg.value("eps", 0.5), L = cfg.value("L", 10.0);
  const Point center{cfg.value("cx", 0.0), cfg.value("cy", 0.0)};
  const auto w = find_large_circuit(x.points(), eps, L, center);
  json out = {{"eps", eps}, {"L", L}, {"found", w.has_value()}};
  if (w) out["circuit"] = to_json(*w);
  write_json(fs::path(c.out) / "circuit.json", out);
  if (cfg.value("figure", false)) {
    SvgStyle st;
    st.edges_eps = eps;
    st.frames = {Rect::square(L, center), Rect::square(0.9 * L, center)};
    if (w) st.highlight_path = w->cycle;
    st.close_path = true;
    write_text(fs::path(c.out) / "figure.svg", render_configuration_svg(x, st));
  }
  std::cout << (w ? "circuit of length " + std::to_string(w->cycle.size()) : std::string("no circuit")) << "\n";
  return 0;
}

int cmd_repair(const Common& c) {
  const json cfg = load_json(c.config);
  RepairParams p;
  p.K = cfg.value("K", 5.0);
  p.n = cfg.value("n", 1);
  p.eps = cfg.value("eps", 0.5);
  p.c = cfg.value("c", 0.05);
  p.rho = cfg.value("rho", 3.0);
  p.desk_mode = cfg.value("desk_mode", true);
  RngStream g(c.seed, 0);
  const Configuration xi = cfg.contains("configuration") || cfg.contains("input") ? configuration_of(cfg, c.seed)
                                                                                   : desk_repair_input(p, g);
  const Saturator sat = box_saturator(p);
  const ThinBoxSpec box = repair_box(p);
  const Configuration phi = sat(xi);
  const Saturator cached = [&](const Configuration& x) { return x == xi ? phi : sat(x); };
  p.delta0 = cfg.contains("delta0") ? cfg.at("delta0").get<double>()
                                    : defect(xi, phi, box.R_prime(), p.rho, c.exec()).total + 1.0;
  const RepairTrace t = run_repair(xi, p, cached, c.exec());
  json out = to_json(t, cfg.value("states", false));
  out["delta0"] = p.delta0;
  if (t.termination == Termination::completed)
    out["box_cross"] = to_json(box_cross(t.states.back().points(), box, p.eps, 6 * p.delta0 / p.c, c.exec()));
  write_json(fs::path(c.out) / "repair.json", out);
  save_configuration((fs::path(c.out) / "final.json").string(), t.states.back());
  std::cout << t.moves.size() << " moves, "
            << (t.termination == Termination::completed ? "completed" : "reported empty space") << "\n";
  return 0;
}

int cmd_sweep(const Common& c, bool figure, bool timing) {
  json cfg = load_json(c.config);
  if (!cfg.contains("seed")) cfg["seed"] = c.seed;
  SweepSpec s = sweep_spec_from_json(cfg);
  s.figure = s.figure || figure;
  s.timing = s.timing || timing;
  const SweepResult r = run_sweep(s, c.exec());
  write_sweep_outputs(r, c.out);
  write_sweep_csv(std::cout, r);
  return 0;
}

int cmd_peierls(const Common& c) {
  const json cfg = load_json(c.config);
  const int N = cfg.value("N", 12);
  const double theta = cfg.value("theta", 0.95);
  const std::size_t trials = cfg.value("trials", std::size_t{2000});
  const int max_size = cfg.value("max_size", 16);
  const int max_M = cfg.value("max_M", 4);
  const SiteSampler sampler = bernoulli_sites(N, theta);
  std::vector<int> Ms;
  std::vector<double> freqs;
  std::ofstream csv((fs::create_directories(c.out), fs::path(c.out) / "peierls.csv"));
  csv << "M,N,trials,crossed,freq,lo95,hi95\n";
  for (int M = 1; M <= max_M && M < N; ++M) {
    std::vector<char> hit(trials, 0);
    for_each_index(trials, c.exec(), [&](std::size_t t) {
      RngStream g(c.seed, (static_cast<std::uint64_t>(M) << 32) | t);
      hit[t] = is_mn_crossing(sampler(g), M, N).crossed;
    });
    const auto k = static_cast<std::size_t>(std::count(hit.begin(), hit.end(), 1));
    const Interval ci = wilson_interval(k, trials);
    Ms.push_back(M);
    freqs.push_back(static_cast<double>(k) / static_cast<double>(trials));
    csv << M << ',' << N << ',' << trials << ',' << k << ',' << freqs.back() << ',' << ci.lo << ',' << ci.hi << '\n';
  }
  const double p = cfg.value("p", 1.0 - theta);
  const auto counts = enumerate_contours(max_size);
  json jc = json::object();
  for (const auto& [s, n] : counts) jc[std::to_string(s)] = n;
  const GrowthFit gf = contour_growth(counts);
  json out = {{"N", N}, {"theta", theta}, {"trials", trials}, {"M", Ms}, {"freq", freqs}, {"contours", jc},
              {"growth", {{"max_ratio", gf.max_ratio}, {"per_step", gf.per_step}}}};
  if (p > 0 && p < 1) {
    const PeierlsFit f = fit_peierls_constants(Ms, freqs, p);
    json bounds = json::array();
    for (int M : Ms) {
      const PeierlsBound b = peierls_bound(M, p, f.c1, f.C1, f.C2);
      bounds.push_back({{"M", M}, {"value", b.value}, {"vacuous", b.vacuous}});
    }
    out["fit"] = {{"p", p}, {"c1", f.c1}, {"C1", f.C1}, {"C2", f.C2}, {"bounds", bounds}};
  }
  write_json(fs::path(c.out) / "peierls.json", out);
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_selftest(const Common& c, bool quick, const std::string& fault, bool no_acceptance) {
  SelftestOptions o;
  o.context.seed = c.seed;
  o.context.quick = quick;
  o.context.fault = fault;
  o.context.exec = c.exec();
  o.acceptance = !no_acceptance;
  o.progress = &std::cout;
  const SelftestReport r = run_selftest(o);
  write_json(fs::path(c.out) / "selftest.json", to_json(r));
  if (!r.passed()) {
    std::cout << "FAILED modules:";
    for (const std::string& m : r.failed_modules()) std::cout << ' ' << m;
    std::cout << "\n";
    return 1;
  }
  std::cout << "all " << r.entries.size() << " checks passed\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hard-disk model toolkit: sampling, defects, crossings, repair, sweeps"};
  app.require_subcommand(1);
  Common common;
  bool figure = false, timing = false, quick = false, no_acceptance = false;
  std::string fault;

  auto add_common = [&](CLI::App* s) {
    s->add_option("--config", common.config, "JSON configuration file");
    s->add_option("--seed", common.seed, "master seed");
    s->add_option("--out", common.out, "output directory");
    s->add_flag("--serial", common.serial, "run the serial reference path");
  };
  std::map<std::string, std::function<int()>> run;
  auto sub = [&](const char* name, const char* help, std::function<int()> f) {
    CLI::App* s = app.add_subcommand(name, help);
    add_common(s);
    run[name] = std::move(f);
    return s;
  };
  sub("sample", "draw hard-disk configurations", [&] { return cmd_sample(common); });
  sub("defect", "defect of a configuration over a domain", [&] { return cmd_defect(common); });
  sub("cross", "annulus crossing test", [&] { return cmd_cross(common); });
  sub("circuit", "search for a large circuit", [&] { return cmd_circuit(common); });
  sub("repair", "run the repair algorithm on a thin box", [&] { return cmd_repair(common); });
  CLI::App* sw = sub("sweep", "crossing-frequency sweep", [&] { return cmd_sweep(common, figure, timing); });
  sw->add_flag("--figure", figure, "also write figure.svg");
  sw->add_flag("--timing", timing, "fill the seconds column");
  sub("peierls", "lattice crossing and contour statistics", [&] { return cmd_peierls(common); });
  CLI::App* st = sub("selftest", "run every invariant battery and acceptance criterion",
                     [&] { return cmd_selftest(common, quick, fault, no_acceptance); });
  st->add_flag("--quick", quick, "reduced sample sizes");
  st->add_option("--fault", fault, "corrupt a named battery (test fixture)");
  st->add_flag("--no-acceptance", no_acceptance, "skip the acceptance criteria");

  CLI11_PARSE(app, argc, argv);
  try {
    for (CLI::App* s : app.get_subcommands()) {
      fs::create_directories(common.out);
      return run.at(s->get_name())();
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
