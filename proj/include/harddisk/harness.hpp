#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "harddisk/exec.hpp"
#include "harddisk/geometry.hpp"
#include "harddisk/rng.hpp"
#include "harddisk/stats.hpp"
#include "json.hpp"

namespace hd {

struct SweepSpec {
  std::vector<double> lambdas{1, 5, 20, 80};
  std::vector<double> epsilons{0.5};
  std::vector<double> l1s{5};
  std::vector<double> l2s{15};
  double L0 = 5.0;  // buffer between Q_L2 and the sampled domain
  std::size_t replicas = 200;
  std::size_t sweeps = 300;
  bool wired = false;   // frozen lattice frame outside Q_{L2+L0}
  bool timing = false;  // fill the seconds column of results.csv
  bool figure = false;
  std::uint64_t seed = 1;

  void validate() const;
};

SweepSpec sweep_spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SweepSpec& s);

struct SweepRow {
  double lambda = 0, eps = 0, L1 = 0, L2 = 0;
  std::size_t replicas = 0;
  std::size_t crossed = 0;
  double freq = 0;
  Interval ci;
  double seconds = 0;     // wall time of the (lambda, L2) sampling batch
  double mean_points = 0;  // free points per sample
};

// Slope of log(1 - freq) against L1 at fixed (lambda, eps, L2); -slope is
// the empirical decay rate.
struct SlopeFit {
  double lambda = 0, eps = 0, L2 = 0;
  std::size_t points = 0;
  double slope = 0;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRow> rows;
  std::vector<SlopeFit> fits;
  double wall_seconds = 0;
};

// Triangular lattice (spacing 2 + 1e-6) filling Q_{half + thickness} \ Q_half.
std::vector<Point> wired_frame(double half, double thickness = 4.0);

// One replica: eta^[lambda](Q_{L2+L0}, zeta) by grand-canonical MCMC.
Configuration sweep_sample(const SweepSpec& spec, double lambda, double L2, RngStream& rng);

SweepResult run_sweep(const SweepSpec& spec, Exec exec = Exec::parallel);
void write_sweep_csv(std::ostream& os, const SweepResult& r);
nlohmann::json to_json(const SweepResult& r);
// results.csv, summary.json and, if requested, figure.svg.
void write_sweep_outputs(const SweepResult& r, const std::filesystem::path& dir);

struct CheckOutcome {
  bool passed = false;
  std::string detail;
};

struct SelftestContext {
  std::uint64_t seed = 1;
  bool quick = false;
  std::string fault;  // name of a battery to corrupt, for harness tests
  Exec exec = Exec::parallel;
};

struct SelftestBattery {
  std::string module;
  std::string name;
  std::function<CheckOutcome(const SelftestContext&)> run;
};

struct SelftestEntry {
  std::string module;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

struct SelftestReport {
  std::vector<SelftestEntry> entries;
  bool passed() const;
  std::vector<std::string> failed_modules() const;
};

struct SelftestOptions {
  SelftestContext context;
  bool acceptance = true;  // also run the acceptance criteria
  std::ostream* progress = nullptr;
};

std::vector<SelftestBattery> selftest_batteries();
SelftestReport run_selftest(const SelftestOptions& options);
nlohmann::json to_json(const SelftestReport& r);

}  // namespace hd
