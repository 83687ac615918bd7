#ifndef SEEDSHARE_ECONOMICS_HPP
#define SEEDSHARE_ECONOMICS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "seedshare/fluid.hpp"

namespace seedshare {

struct Scenario;

/// Final revenue and completion summary of one run.
struct RevenueReport {
  double gross = 0.0;
  double shared = 0.0;
  double net = 0.0;
  double completed_legal = 0.0;
  double completed_illicit = 0.0;
  double legal_share_of_completions = 0.0;
};

RevenueReport revenue_report(const Trajectory& traj, const EconParams& econ);

/// Which engine evaluates a scenario's net revenue.
struct Engine {
  enum class Kind { fluid, stochastic } kind = Kind::fluid;
  std::size_t replications = 0;      // stochastic only
  std::uint64_t base_seed = 0;       // stochastic only
  unsigned threads = 0;

  static Engine fluid() { return {}; }
  static Engine stochastic(std::size_t reps, std::uint64_t seed,
                           unsigned threads = 0) {
    return {Kind::stochastic, reps, seed, threads};
  }
};

/// Net revenue of the scenario under the given engine (fluid integration
/// or stochastic ensemble mean), together with the full report.
RevenueReport evaluate_scenario(const Scenario& scenario, const Engine& engine);

/// Grid sweep over the revenue-share fraction.
struct SweepResult {
  std::vector<double> deltas;
  std::vector<double> net_revenues;
  double best_delta = 0.0;
  double best_net = 0.0;
  double baseline_net = 0.0;  // net at delta = 0
  double gain_ratio = 0.0;    // best_net / max(baseline_net, eps)
  bool baseline_collapsed = false;  // baseline below the epsilon guard
};

/// Evaluates net revenue at every delta in the grid and returns the argmax
/// (smallest delta on ties). The grid must be nonempty, lie in [0,1], and
/// contain 0. Engine failures propagate tagged with the offending delta.
SweepResult sweep_delta(const Scenario& scenario,
                        const std::vector<double>& grid, const Engine& engine);

/// Uniform delta grid {0, step, 2*step, ...} capped at max_delta.
std::vector<double> delta_grid(double step = 0.025, double max_delta = 1.0);

/// One (efficiency, demand-kind) cell of the scaling experiment.
struct Regime {
  EfficiencyMode efficiency = EfficiencyMode::efficient;
  enum class Demand { bass, constant } demand = Demand::bass;

  std::string name() const;
};

/// Parses "efficient-bass", "inefficient-constant", etc.
Regime parse_regime(const std::string& text);

struct ExperimentRow {
  std::string regime;
  std::string demand_kind;
  double market_size = 0.0;
  std::string engine;  // "fluid" or "stochastic"
  double delta_star = 0.0;
  double net_no_share = 0.0;
  double net_with_share = 0.0;
  double gain_ratio = 0.0;
  double legal_completion_share = 0.0;
  double fluid_stoch_rel_err = 0.0;  // NaN on fluid rows
};

struct ExperimentReport {
  std::vector<ExperimentRow> rows;

  std::string to_csv() const;
  std::string to_text_table() const;
};

/// Rescales a template scenario to market size m: demand volume, legal
/// server capacity, the y floor, and initial populations scale linearly;
/// all per-user rates are held fixed. The regime overrides both swarms'
/// efficiency mode and the demand kind (the constant variant spreads the
/// market over the horizon: rate = m / horizon, capped at m).
Scenario scaled_scenario(const Scenario& templ, const Regime& regime, double m);

/// Runs sweep_delta for every (regime, market size) cell under the fluid
/// engine and, when stoch_engine is non-null, re-evaluates the delta = 0
/// and delta* points stochastically. Rows come out in canonical
/// (regime, M, engine) order. Market sizes must be strictly increasing,
/// at least two.
ExperimentReport scaling_experiment(const Scenario& templ,
                                    const std::vector<double>& market_sizes,
                                    const std::vector<Regime>& regimes,
                                    const std::vector<double>& grid,
                                    const Engine* stoch_engine = nullptr);

}  // namespace seedshare

#endif
