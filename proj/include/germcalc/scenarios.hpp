#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace germcalc {

struct ScenarioOptions {
  int order = 16;               // default truncation order (GERMCALC_ORDER / --order)
  std::uint64_t seed = 20250810;
  int cases = 0;                // 0 = scenario default
  int degree = 0;               // 0 = scenario default (blowdown jet order)
};

struct CheckLine {
  std::string name;
  bool pass;
  std::string detail;
};

struct ScenarioReport {
  std::string scenario;
  std::vector<std::string> notes;
  std::vector<CheckLine> checks;
  double elapsed_seconds = 0.0;
  bool pass() const;
};

/// Registered scenario names, sorted.
std::vector<std::string> scenario_names();

/// Runs one scenario; throws BadArgument for unknown names. Every check is
/// an exact equality or an exact boolean; there are no numeric tolerances.
ScenarioReport run_scenario(const std::string& name, const ScenarioOptions& opts);

/// Renders the report with checks sorted by name; one line per check.
void print_report(std::ostream& os, const ScenarioReport& report);

}  // namespace germcalc
