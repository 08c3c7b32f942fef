// Acceptance suite: one scenario per criterion, fixed seeds and orders, one
// pass/fail line each. Runs every criterion when no name is given.

#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "germcalc/scenarios.hpp"

namespace {

struct Criterion {
  std::string scenario;
  double budget_seconds;  // 0 = untimed
};

const std::vector<Criterion> kCriteria = {
    {"expm1-div-series", 1.0},
    {"deram-identity", 1.0},
    {"shift-elementary", 0.0},
    {"shift-deram-growth", 0.0},
    {"compose-oracle", 10.0},
    {"implicit-backsub", 0.0},
    {"closure-constructions", 0.0},
    {"blowdown-roundtrip", 5.0},
    {"deram-identity-random", 0.0},
};

}  // namespace

int main(int argc, char** argv) {
  std::string only = argc > 1 ? argv[1] : "";
  germcalc::ScenarioOptions opts;  // fixed recorded seed, default orders

  bool all_pass = true;
  bool matched = false;
  int index = 0;
  for (const auto& criterion : kCriteria) {
    ++index;
    if (!only.empty() && only != criterion.scenario && only != std::to_string(index)) continue;
    matched = true;
    germcalc::ScenarioReport report = germcalc::run_scenario(criterion.scenario, opts);
    bool pass = report.pass();
    bool in_budget =
        criterion.budget_seconds == 0.0 || report.elapsed_seconds < criterion.budget_seconds;
    pass = pass && in_budget;
    all_pass = all_pass && pass;

    std::cout << "[" << index << "/" << kCriteria.size() << "] " << std::left << std::setw(24)
              << criterion.scenario << (pass ? "PASS" : "FAIL") << "  (" << std::fixed
              << std::setprecision(3) << report.elapsed_seconds << "s)";
    if (!in_budget) std::cout << "  [over the " << criterion.budget_seconds << "s budget]";
    std::cout << "\n";
    if (!report.pass())
      for (const auto& c : report.checks)
        if (!c.pass) std::cout << "      failed: " << c.name << " -- " << c.detail << "\n";
  }
  if (!matched) {
    std::cerr << "unknown criterion '" << only << "'\n";
    return 2;
  }
  return all_pass ? 0 : 1;
}
