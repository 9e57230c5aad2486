#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "harddisk/harness.hpp"

using namespace hd;

namespace {

SweepSpec small_spec() {
  SweepSpec s;
  s.lambdas = {1, 80};
  s.l1s = {5};
  s.l2s = {15};
  s.L0 = 2;
  s.replicas = 30;
  s.sweeps = 60;
  s.seed = 7;
  return s;
}

std::string csv(const SweepResult& r) {
  std::ostringstream os;
  write_sweep_csv(os, r);
  return os.str();
}

}  // namespace

TEST_CASE("sweep spec validation") {
  CHECK_NOTHROW(SweepSpec{}.validate());
  auto bad = [](auto edit) {
    SweepSpec s;
    edit(s);
    return s;
  };
  CHECK_THROWS_AS(bad([](SweepSpec& s) { s.replicas = 0; }).validate(), Error);
  CHECK_THROWS_AS(bad([](SweepSpec& s) { s.sweeps = 0; }).validate(), Error);
  CHECK_THROWS_AS(bad([](SweepSpec& s) { s.lambdas.clear(); }).validate(), Error);
  CHECK_THROWS_AS(bad([](SweepSpec& s) { s.lambdas = {0}; }).validate(), Error);
  CHECK_THROWS_AS(bad([](SweepSpec& s) { s.epsilons = {-1}; }).validate(), Error);
  CHECK_THROWS_AS(bad([](SweepSpec& s) { s.l1s = {15}; }).validate(), Error);
  CHECK_THROWS_AS(bad([](SweepSpec& s) { s.L0 = -1; }).validate(), Error);
  CHECK_THROWS_AS(sweep_spec_from_json(nlohmann::json{{"replicas", 0}}), Error);
}

TEST_CASE("sweep spec json round trip") {
  SweepSpec s = small_spec();
  s.wired = true;
  s.epsilons = {0.25, 0.5};
  const SweepSpec t = sweep_spec_from_json(to_json(s));
  CHECK(t.lambdas == s.lambdas);
  CHECK(t.epsilons == s.epsilons);
  CHECK(t.replicas == s.replicas);
  CHECK(t.sweeps == s.sweeps);
  CHECK(t.wired);
  CHECK(t.seed == s.seed);
  CHECK(to_json(t) == to_json(s));
}

TEST_CASE("wired frame is a valid lattice in the shell") {
  const auto f = wired_frame(10, 4);
  REQUIRE(!f.empty());
  CHECK(hard_core_valid(f));
  for (const Point& p : f) {
    CHECK(linf(p) >= 10);
    CHECK(linf(p) < 14);
  }
}

TEST_CASE("sweep rows, intervals and determinism") {
  const SweepSpec s = small_spec();
  const SweepResult a = run_sweep(s);
  REQUIRE(a.rows.size() == 2);
  CHECK(a.rows[0].lambda < a.rows[1].lambda);
  for (const SweepRow& r : a.rows) {
    CHECK(r.replicas == s.replicas);
    CHECK(r.freq >= 0);
    CHECK(r.freq <= 1);
    CHECK(r.ci.lo <= r.freq);
    CHECK(r.ci.hi >= r.freq);
  }
  // denser packings cross more often
  const SweepRow &lo = a.rows[0], &hi = a.rows[1];
  const double se = std::sqrt(lo.freq * (1 - lo.freq) / lo.replicas + hi.freq * (1 - hi.freq) / hi.replicas);
  CHECK(hi.freq >= lo.freq - 3 * se);
  const std::string text = csv(a);
  CHECK(text.rfind("lambda,epsilon,L1,L2,replicas,crossed,freq,lo95,hi95,seconds\n", 0) == 0);
  CHECK(csv(run_sweep(s)) == text);
  CHECK(csv(run_sweep(s, Exec::serial)) == text);
  SweepSpec other = s;
  other.seed = 8;
  CHECK(csv(run_sweep(other)) != text);
}

TEST_CASE("slope fits and output files") {
  SweepSpec s = small_spec();
  s.lambdas = {20};
  s.l1s = {3, 4, 5};
  s.replicas = 10;
  s.sweeps = 20;
  s.figure = true;
  const SweepResult r = run_sweep(s);
  CHECK(r.rows.size() == 3);
  REQUIRE(r.fits.size() == 1);
  CHECK(r.fits[0].lambda == 20);
  const auto dir = std::filesystem::temp_directory_path() / "hd_harness_test";
  std::filesystem::remove_all(dir);
  write_sweep_outputs(r, dir);
  for (const char* f : {"results.csv", "summary.json", "figure.svg"}) CHECK(std::filesystem::exists(dir / f));
  std::ifstream js(dir / "summary.json");
  const nlohmann::json j = nlohmann::json::parse(js);
  CHECK(j.at("rows").size() == 3);
  std::filesystem::remove_all(dir);
}

TEST_CASE("selftest batteries cover every module and surface a planted fault") {
  std::set<std::string> modules;
  for (const SelftestBattery& b : selftest_batteries()) modules.insert(b.module);
  for (const char* m : {"geometry", "sampling", "defect", "voronoi", "connectivity", "repair", "discrete", "oracles",
                        "harness"})
    CHECK(modules.count(m) == 1);
  SelftestOptions o;
  o.context.quick = true;
  o.context.fault = "defect.additivity";
  o.acceptance = false;
  const SelftestReport r = run_selftest(o);
  CHECK_FALSE(r.passed());
  CHECK(r.failed_modules() == std::vector<std::string>{"defect"});
  o.context.fault.clear();
  CHECK(run_selftest(o).passed());
}
