#ifndef SEEDSHARE_FLUID_HPP
#define SEEDSHARE_FLUID_HPP

#include <vector>

#include "seedshare/market.hpp"

namespace seedshare {

struct Scenario;

enum class EfficiencyMode { efficient, inefficient };

/// Capacity and churn parameters of one swarm. efficiency_mode is a preset
/// over downloader_upload_factor: efficient forces 1, inefficient forces 0.
struct SwarmParams {
  double peer_upload = 0.0;               // mu, copies per unit time per peer
  double downloader_upload_factor = 1.0;  // eta
  double download_cap = 0.0;              // c_d, per-downloader rate limit
  double server_capacity = 0.0;           // s, 0 for the illicit swarm
  double seed_departure_rate = 0.0;       // gamma
  EfficiencyMode efficiency_mode = EfficiencyMode::efficient;
  bool enabled = true;

  void validate() const;
};

/// Fluid state of the two-swarm market plus cumulative ledgers.
struct MarketState {
  double x_legal = 0.0;     // downloaders
  double y_legal = 0.0;     // seeds
  double x_illicit = 0.0;
  double y_illicit = 0.0;
  double adopters = 0.0;    // A, cumulative arrivals into either swarm
  double gross_revenue = 0.0;
  double shared_revenue = 0.0;
  double completed_legal = 0.0;
  double completed_illicit = 0.0;

  void validate() const;
  bool all_finite() const;
};

/// Sampled solution of one run (fluid or stochastic).
struct Trajectory {
  std::vector<double> times;
  std::vector<MarketState> states;
  double step_size = 0.0;

  const MarketState& final_state() const { return states.back(); }
};

/// Aggregate download completion rate of a swarm:
/// min(download_cap * x, peer_upload * (eta * x + y) + server_capacity).
/// Zero when there are no downloaders.
double service_rate(double x, double y, const SwarmParams& params);

/// Instantaneous Little's-law delay x / service_rate. Zero for an empty
/// queue, infinite for a dead swarm with waiting downloaders.
double delay_estimate(double x, double y, const SwarmParams& params);

/// Signals shared by the fluid right-hand side and the stochastic
/// simulator: arrival rate, delays, the self-consistent expected seed
/// reward, the resulting join split, and the completion fates.
struct MarketSignals {
  double arrival_rate = 0.0;
  double delay_legal = 0.0;
  double delay_illicit = 0.0;
  double reward = 0.0;
  JoinSplit split;
  SeedFate legal_fate;
  SeedFate illicit_fate;
  double service_legal = 0.0;
  double service_illicit = 0.0;
};

/// hard_choice replaces the configured choice temperature with 0 (the
/// stochastic simulator's join rule).
MarketSignals market_signals(const MarketState& state, const Scenario& scenario,
                             bool hard_choice);

/// Time derivative of the fluid state. Flow terms that would drive an
/// empty population negative vanish through the service-rate and
/// arrival-rate boundary behavior.
MarketState fluid_rhs(const MarketState& state, double t,
                      const Scenario& scenario);

/// Classical fixed-step RK4 over [0, horizon] with post-step projection of
/// populations onto >= 0 and adopters onto [0, market_cap]. Samples are
/// stored every scenario.recording_interval. Throws std::runtime_error if
/// the state becomes non-finite.
Trajectory integrate(const MarketState& initial, const Scenario& scenario,
                     double horizon, double dt);

}  // namespace seedshare

#endif
