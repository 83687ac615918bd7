#ifndef SEEDSHARE_SCENARIO_HPP
#define SEEDSHARE_SCENARIO_HPP

#include <iosfwd>
#include <string>

#include "seedshare/demand.hpp"
#include "seedshare/fluid.hpp"
#include "seedshare/market.hpp"

namespace seedshare {

/// One complete runnable description: demand process, both swarms,
/// economics, and run controls.
struct Scenario {
  DemandProcess demand;
  SwarmParams legal;
  SwarmParams illicit;
  EconParams econ;
  double horizon = 0.0;
  double dt = 0.01;
  double recording_interval = 0.1;
  MarketState initial_state;
  double y_floor = 1.0;

  void validate() const;
};

/// Parses and validates a scenario file (INI-style sections of key = value
/// lines, '#' comments). Unknown sections or keys are errors; missing
/// optional keys take the documented defaults. Throws std::runtime_error
/// with file/line context on parse failure and std::invalid_argument
/// naming the violated invariant on validation failure.
Scenario load_scenario(const std::string& path);

/// Parses a scenario from already-loaded text (same format).
Scenario parse_scenario(std::istream& in, const std::string& origin);

/// Writes a scenario in the same format load_scenario reads. A written
/// scenario reloads to an equal value.
void write_scenario(const Scenario& scenario, std::ostream& out);
std::string scenario_to_string(const Scenario& scenario);

bool operator==(const Scenario& a, const Scenario& b);

}  // namespace seedshare

#endif
