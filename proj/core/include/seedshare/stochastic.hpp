#ifndef SEEDSHARE_STOCHASTIC_HPP
#define SEEDSHARE_STOCHASTIC_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "seedshare/fluid.hpp"

namespace seedshare {

struct Scenario;

/// One logged jump of the stochastic process.
struct Event {
  double time = 0.0;
  enum class Kind { arrival, completion, departure } kind;
  Swarm swarm;
  MarketState state;  // state after the event
};

/// Results of an ensemble of independent replications.
struct StochasticRun {
  std::uint64_t base_seed = 0;
  std::vector<MarketState> final_states;   // one per replication, in order
  std::vector<double> net_revenues;        // gross - shared per replication
  double mean_net_revenue = 0.0;
  double var_net_revenue = 0.0;            // unbiased sample variance
  MarketState mean_final;                  // componentwise ensemble mean

  std::size_t replication_count() const { return final_states.size(); }
};

/// Deterministic seed-splitting rule for replication i of a base seed
/// (splitmix64 of base_seed + i).
std::uint64_t mix_seed(std::uint64_t base_seed, std::uint64_t index);

/// Exact-jump simulation of the finite market. Arrivals use thinning
/// against the static rate bound of the demand process; the join choice is
/// the hard (temperature 0) rule; completion fates and illicit seeding are
/// categorical draws. Populations are integer-valued throughout. The
/// trajectory is sampled on the scenario recording grid. If event_log is
/// non-null every jump is appended to it.
std::pair<Trajectory, MarketState> simulate_once(
    const Scenario& scenario, double horizon, std::uint64_t seed,
    std::vector<Event>* event_log = nullptr);

/// Runs n independent replications with seeds mix_seed(base_seed, i),
/// optionally across threads. Results and summaries depend only on
/// (scenario, horizon, base_seed, n), never on execution order.
StochasticRun simulate_ensemble(const Scenario& scenario, double horizon,
                                std::uint64_t base_seed, std::size_t n,
                                unsigned threads = 0);

}  // namespace seedshare

#endif
