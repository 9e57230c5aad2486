#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "harddisk/exec.hpp"
#include "json.hpp"

namespace hd {

struct AcceptanceOptions {
  std::uint64_t seed = 20170611;
  bool quick = false;  // reduced sample sizes, no runtime budgets
  Exec exec = Exec::parallel;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  std::string module;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  nlohmann::json data;
};

struct Criterion {
  int id;
  std::string name;
  std::string module;
  CriterionResult (*run)(const AcceptanceOptions&);
};

const std::vector<Criterion>& acceptance_criteria();

CriterionResult accept_hard_core(const AcceptanceOptions& o);
CriterionResult accept_voronoi_lower_bound(const AcceptanceOptions& o);
CriterionResult accept_defect_axioms(const AcceptanceOptions& o);
CriterionResult accept_poisson_mixture(const AcceptanceOptions& o);
CriterionResult accept_spatial_markov(const AcceptanceOptions& o);
CriterionResult accept_repair(const AcceptanceOptions& o);
CriterionResult accept_index_elimination(const AcceptanceOptions& o);
CriterionResult accept_peierls(const AcceptanceOptions& o);
CriterionResult accept_main_trend(const AcceptanceOptions& o);

}  // namespace hd
