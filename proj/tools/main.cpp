// Command-line front end: fluid runs, stochastic ensembles, share-fraction
// sweeps, scaling experiments, SVG plots, and the built-in validation
// suite. Exit codes: 0 success, 1 usage error, 2 runtime error.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "seedshare/csv.hpp"
#include "seedshare/economics.hpp"
#include "seedshare/scenario.hpp"
#include "seedshare/stochastic.hpp"
#include "seedshare/svg.hpp"

namespace {

using namespace seedshare;

struct ScenarioArgs {
  std::string path;
  std::string dump_path;

  Scenario load() const {
    Scenario sc = load_scenario(path);
    if (!dump_path.empty()) {
      write_file_atomic(dump_path, scenario_to_string(sc));
    }
    return sc;
  }
};

void add_scenario_options(CLI::App* cmd, ScenarioArgs& args) {
  cmd->add_option("--scenario", args.path, "Scenario file")->required();
  cmd->add_option("--dump-config", args.dump_path,
                  "Write the parsed scenario back out to this path");
}

int cmd_fluid(const ScenarioArgs& args, const std::string& out) {
  const Scenario sc = args.load();
  const Trajectory traj =
      integrate(sc.initial_state, sc, sc.horizon, sc.dt);
  write_file_atomic(out, trajectory_csv(traj));
  const RevenueReport rep = revenue_report(traj, sc.econ);
  std::cout << "fluid run: net=" << rep.net << " gross=" << rep.gross
            << " legal_completion_share=" << rep.legal_share_of_completions
            << '\n';
  return 0;
}

int cmd_stoch(const ScenarioArgs& args, const std::string& out,
              std::size_t reps, std::uint64_t seed, unsigned threads,
              const std::string& event_log_prefix) {
  const Scenario sc = args.load();
  if (!event_log_prefix.empty()) {
    for (std::size_t i = 0; i < reps; ++i) {
      std::vector<Event> log;
      simulate_once(sc, sc.horizon, mix_seed(seed, i), &log);
      write_file_atomic(event_log_prefix + std::to_string(i) + ".csv",
                        event_log_csv(log));
    }
  }
  const StochasticRun run =
      simulate_ensemble(sc, sc.horizon, seed, reps, threads);
  write_file_atomic(out, ensemble_csv(run));
  std::cout << "stochastic ensemble: n=" << reps
            << " mean_net=" << run.mean_net_revenue
            << " std_err=" << std::sqrt(run.var_net_revenue /
                                        static_cast<double>(reps))
            << '\n';
  return 0;
}

Engine make_engine(const std::string& kind, std::size_t reps,
                   std::uint64_t seed, bool seed_given, unsigned threads) {
  if (kind == "fluid") {
    return Engine::fluid();
  }
  if (kind == "stochastic") {
    if (!seed_given) {
      throw CLI::ValidationError("--seed is required for the stochastic engine");
    }
    return Engine::stochastic(reps, seed, threads);
  }
  throw CLI::ValidationError("--engine must be fluid or stochastic");
}

int cmd_sweep(const ScenarioArgs& args, const std::string& out,
              double grid_step, double max_delta, const Engine& engine) {
  const Scenario sc = args.load();
  const SweepResult sweep =
      sweep_delta(sc, delta_grid(grid_step, max_delta), engine);
  write_file_atomic(out, sweep_csv(sweep));
  std::cout << "sweep: best_delta=" << sweep.best_delta
            << " best_net=" << sweep.best_net
            << " baseline_net=" << sweep.baseline_net
            << " gain_ratio=" << sweep.gain_ratio
            << (sweep.baseline_collapsed ? " (baseline collapsed, ratio capped)"
                                         : "")
            << '\n';
  return 0;
}

int cmd_scale(const ScenarioArgs& args, const std::string& out,
              const std::vector<double>& sizes,
              const std::vector<std::string>& regime_names, double grid_step,
              double max_delta, bool with_stoch, const Engine& stoch_engine) {
  const Scenario sc = args.load();
  std::vector<Regime> regimes;
  regimes.reserve(regime_names.size());
  for (const auto& name : regime_names) {
    regimes.push_back(parse_regime(name));
  }
  const ExperimentReport report = scaling_experiment(
      sc, sizes, regimes, delta_grid(grid_step, max_delta),
      with_stoch ? &stoch_engine : nullptr);
  write_file_atomic(out, report.to_csv());
  std::cout << report.to_text_table();
  return 0;
}

int cmd_plot(const std::string& in, const std::string& out) {
  const CsvTable table = read_csv(in);
  if (table.header.empty()) {
    throw std::runtime_error("'" + in + "': no header row");
  }
  if (table.header.front() == "time") {
    LinePlot plot("Swarm populations", "time", "population");
    const auto& t = table.column("time");
    plot.add_series("legal downloaders", t, table.column("x_L"));
    plot.add_series("legal seeds", t, table.column("y_L"));
    plot.add_series("illicit downloaders", t, table.column("x_I"));
    plot.add_series("illicit seeds", t, table.column("y_I"));
    plot.add_series("net revenue", t, table.column("net"));
    write_file_atomic(out, plot.render());
  } else if (table.header.front() == "delta") {
    LinePlot plot("Net revenue vs share fraction", "share fraction delta",
                  "net revenue");
    plot.add_series("net revenue", table.column("delta"),
                    table.column("net_revenue"));
    write_file_atomic(out, plot.render());
  } else {
    throw std::runtime_error("'" + in +
                             "': unrecognized CSV kind (want a trajectory or "
                             "sweep file)");
  }
  return 0;
}

bool report_check(const std::string& name, bool ok, const std::string& detail) {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << ": " << detail << '\n';
  return ok;
}

// Built-in invariant suite: Bass market exhaustion, the single-swarm
// fixed point, and fluid-vs-stochastic agreement at a small market size.
int cmd_validate(std::uint64_t seed) {
  bool all_ok = true;
  {
    BassParams bass{0.03, 0.38, 1000.0};
    Scenario sc;
    sc.demand.kind = bass;
    sc.legal = {1.0, 1.0, 2.0, 5.0, 0.4, EfficiencyMode::efficient, true};
    sc.illicit = {1.0, 1.0, 2.0, 0.0, 0.4, EfficiencyMode::efficient, false};
    sc.econ.price = 0.0;
    sc.econ.base_seed_prob_legal = 0.5;
    sc.horizon = 5.0 * bass_peak_time(bass);
    sc.dt = 0.005;
    const Trajectory traj = integrate({}, sc, sc.horizon, sc.dt);
    const double final_adopters = traj.final_state().adopters;
    all_ok &= report_check(
        "bass normalization", std::abs(final_adopters - 1000.0) < 10.0,
        "A(5*peak)=" + std::to_string(final_adopters) + " vs M=1000");
  }
  {
    Scenario sc;
    sc.demand.kind = ConstantDemand{1.0};
    sc.legal = {0.5, 1.0, 1e9, 0.0, 1.0, EfficiencyMode::efficient, true};
    sc.illicit = {1.0, 1.0, 1e9, 0.0, 1.0, EfficiencyMode::efficient, false};
    sc.econ.price = 0.0;
    sc.econ.base_seed_prob_legal = 1.0;
    sc.horizon = 60.0;
    MarketState init;
    init.x_legal = 0.1;
    const Trajectory traj = integrate(init, sc, sc.horizon, sc.dt);
    const MarketState& fs = traj.final_state();
    const bool ok = std::abs(fs.x_legal - 1.0) < 1e-3 &&
                    std::abs(fs.y_legal - 1.0) < 1e-3;
    all_ok &= report_check(
        "single-swarm fixed point", ok,
        "x=" + std::to_string(fs.x_legal) + " y=" + std::to_string(fs.y_legal) +
            " vs (1, 1)");
  }
  {
    BassParams bass{0.03, 0.38, 200.0};
    Scenario sc;
    sc.demand.kind = bass;
    sc.legal = {1.0, 1.0, 2.0, 1.0, 0.4, EfficiencyMode::efficient, true};
    sc.illicit = {1.0, 0.0, 2.0, 0.0, 0.4, EfficiencyMode::inefficient, true};
    sc.econ = {1.0, 0.2, 0.5, 0.01, 0.3, 0.5, 0.3, 2.0, 2.0};
    sc.horizon = 40.0;
    const RevenueReport fluid = evaluate_scenario(sc, Engine::fluid());
    const StochasticRun run = simulate_ensemble(sc, sc.horizon, seed, 200);
    const double se = std::sqrt(run.var_net_revenue / 200.0);
    const double diff = std::abs(run.mean_net_revenue - fluid.net);
    // At M=200 the finite-size gap to the fluid limit is about 6%; budget
    // 10% so the check only trips on real disagreements.
    const bool ok = diff <= std::max(3.0 * se, 0.10 * std::abs(fluid.net));
    all_ok &= report_check(
        "fluid vs stochastic consistency", ok,
        "fluid net=" + std::to_string(fluid.net) +
            " stochastic mean=" + std::to_string(run.mean_net_revenue) +
            " (200 reps, se=" + std::to_string(se) + ")");
  }
  return all_ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid P2P content distribution: fluid and stochastic swarm "
               "models with revenue sharing"};
  app.require_subcommand(1);

  ScenarioArgs fluid_args;
  std::string fluid_out = "trajectory.csv";
  auto* fluid_cmd = app.add_subcommand("fluid", "One deterministic fluid run");
  add_scenario_options(fluid_cmd, fluid_args);
  fluid_cmd->add_option("--out", fluid_out, "Trajectory CSV path");

  ScenarioArgs stoch_args;
  std::string stoch_out = "ensemble.csv";
  std::size_t stoch_reps = 100;
  std::uint64_t stoch_seed = 0;
  unsigned stoch_threads = 0;
  std::string event_log_prefix;
  auto* stoch_cmd = app.add_subcommand("stoch", "Stochastic ensemble");
  add_scenario_options(stoch_cmd, stoch_args);
  stoch_cmd->add_option("--out", stoch_out, "Ensemble summary CSV path");
  stoch_cmd->add_option("--reps", stoch_reps, "Replication count");
  stoch_cmd->add_option("--seed", stoch_seed, "Base RNG seed")->required();
  stoch_cmd->add_option("--threads", stoch_threads,
                        "Worker threads (0 = hardware)");
  stoch_cmd->add_option("--event-log", event_log_prefix,
                        "Write per-replication event logs to <prefix><i>.csv");

  ScenarioArgs sweep_args;
  std::string sweep_out = "sweep.csv";
  std::string sweep_engine = "fluid";
  double sweep_step = 0.025;
  double sweep_max = 1.0;
  std::size_t sweep_reps = 100;
  std::uint64_t sweep_seed = 0;
  unsigned sweep_threads = 0;
  auto* sweep_cmd =
      app.add_subcommand("sweep", "Optimize the revenue-share fraction");
  add_scenario_options(sweep_cmd, sweep_args);
  sweep_cmd->add_option("--out", sweep_out, "Sweep CSV path");
  sweep_cmd->add_option("--engine", sweep_engine, "fluid or stochastic");
  sweep_cmd->add_option("--grid-step", sweep_step, "Delta grid step");
  sweep_cmd->add_option("--max-delta", sweep_max, "Largest delta in the grid");
  sweep_cmd->add_option("--reps", sweep_reps, "Replications (stochastic)");
  auto* sweep_seed_opt =
      sweep_cmd->add_option("--seed", sweep_seed, "Base RNG seed (stochastic)");
  sweep_cmd->add_option("--threads", sweep_threads, "Worker threads");

  ScenarioArgs scale_args;
  std::string scale_out = "experiment.csv";
  std::vector<double> scale_sizes;
  std::vector<std::string> scale_regimes = {"efficient-bass"};
  double scale_step = 0.025;
  double scale_max = 1.0;
  bool scale_stoch = false;
  std::size_t scale_reps = 100;
  std::uint64_t scale_seed = 0;
  unsigned scale_threads = 0;
  auto* scale_cmd =
      app.add_subcommand("scale", "Market-size scaling experiment");
  add_scenario_options(scale_cmd, scale_args);
  scale_cmd->add_option("--out", scale_out, "Report CSV path");
  scale_cmd->add_option("--sizes", scale_sizes, "Market sizes, ascending")
      ->required()
      ->delimiter(',');
  scale_cmd->add_option("--regimes", scale_regimes,
                        "Regimes, e.g. efficient-bass,inefficient-constant")
      ->delimiter(',');
  scale_cmd->add_option("--grid-step", scale_step, "Delta grid step");
  scale_cmd->add_option("--max-delta", scale_max, "Largest delta in the grid");
  scale_cmd->add_flag("--stoch", scale_stoch,
                      "Also evaluate with the stochastic engine");
  scale_cmd->add_option("--reps", scale_reps, "Replications (stochastic)");
  auto* scale_seed_opt =
      scale_cmd->add_option("--seed", scale_seed, "Base RNG seed (stochastic)");
  scale_cmd->add_option("--threads", scale_threads, "Worker threads");

  std::string plot_in;
  std::string plot_out = "plot.svg";
  auto* plot_cmd = app.add_subcommand("plot", "Render a CSV as an SVG chart");
  plot_cmd->add_option("--in", plot_in, "Trajectory or sweep CSV")->required();
  plot_cmd->add_option("--out", plot_out, "SVG output path");

  std::uint64_t validate_seed = 0;
  auto* validate_cmd =
      app.add_subcommand("validate", "Run the built-in invariant suite");
  validate_cmd->add_option("--seed", validate_seed, "Base RNG seed")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (fluid_cmd->parsed()) {
      return cmd_fluid(fluid_args, fluid_out);
    }
    if (stoch_cmd->parsed()) {
      return cmd_stoch(stoch_args, stoch_out, stoch_reps, stoch_seed,
                       stoch_threads, event_log_prefix);
    }
    if (sweep_cmd->parsed()) {
      const Engine engine =
          make_engine(sweep_engine, sweep_reps, sweep_seed,
                      sweep_seed_opt->count() > 0, sweep_threads);
      return cmd_sweep(sweep_args, sweep_out, sweep_step, sweep_max, engine);
    }
    if (scale_cmd->parsed()) {
      Engine stoch = Engine::fluid();
      if (scale_stoch) {
        stoch = make_engine("stochastic", scale_reps, scale_seed,
                            scale_seed_opt->count() > 0, scale_threads);
      }
      return cmd_scale(scale_args, scale_out, scale_sizes, scale_regimes,
                       scale_step, scale_max, scale_stoch, stoch);
    }
    if (plot_cmd->parsed()) {
      return cmd_plot(plot_in, plot_out);
    }
    if (validate_cmd->parsed()) {
      return cmd_validate(validate_seed);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
