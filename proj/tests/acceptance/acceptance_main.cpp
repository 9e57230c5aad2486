// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "harddisk/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  hd::AcceptanceOptions o;
  std::string out;
  std::vector<int> only;
  bool serial = false;
  app.add_option("--seed", o.seed, "master seed");
  app.add_flag("--quick", o.quick, "reduced sample sizes, no runtime budgets");
  app.add_flag("--serial", serial, "serial reference path");
  app.add_option("--only", only, "criterion ids to run");
  app.add_option("--out", out, "directory for acceptance.json");
  CLI11_PARSE(app, argc, argv);
  if (serial) o.exec = hd::Exec::serial;

  nlohmann::json report = nlohmann::json::array();
  int failed = 0;
  for (const hd::Criterion& c : hd::acceptance_criteria()) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    hd::CriterionResult r;
    try {
      r = c.run(o);
    } catch (const std::exception& e) {
      r = {c.id, c.name, c.module, false, std::string("exception: ") + e.what(), 0.0, nullptr};
    }
    failed += !r.passed;
    std::cout << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << " [" << r.module << "] " << r.name << ": "
              << r.detail << " (" << r.seconds << " s)" << std::endl;
    report.push_back({{"id", r.id},
                      {"name", r.name},
                      {"module", r.module},
                      {"passed", r.passed},
                      {"detail", r.detail},
                      {"seconds", r.seconds},
                      {"data", r.data}});
  }
  if (!out.empty()) {
    std::filesystem::create_directories(out);
    std::ofstream(std::filesystem::path(out) / "acceptance.json") << report.dump(2) << '\n';
  }
  return failed == 0 ? 0 : 1;
}
