#include "seedshare/economics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "seedshare/scenario.hpp"
#include "seedshare/stochastic.hpp"

namespace seedshare {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

RevenueReport report_from_final(const MarketState& fs) {
  RevenueReport r;
  r.gross = fs.gross_revenue;
  r.shared = fs.shared_revenue;
  r.net = fs.gross_revenue - fs.shared_revenue;
  r.completed_legal = fs.completed_legal;
  r.completed_illicit = fs.completed_illicit;
  r.legal_share_of_completions =
      fs.completed_legal /
      std::max(fs.completed_legal + fs.completed_illicit, 1.0);
  return r;
}

}  // namespace

RevenueReport revenue_report(const Trajectory& traj, const EconParams&) {
  if (traj.states.empty()) {
    throw std::invalid_argument("revenue_report: empty trajectory");
  }
  return report_from_final(traj.final_state());
}

RevenueReport evaluate_scenario(const Scenario& scenario,
                                const Engine& engine) {
  if (engine.kind == Engine::Kind::fluid) {
    const Trajectory traj = integrate(scenario.initial_state, scenario,
                                      scenario.horizon, scenario.dt);
    return revenue_report(traj, scenario.econ);
  }
  const StochasticRun run =
      simulate_ensemble(scenario, scenario.horizon, engine.base_seed,
                        engine.replications, engine.threads);
  return report_from_final(run.mean_final);
}

std::vector<double> delta_grid(double step, double max_delta) {
  if (!(step > 0.0)) {
    throw std::invalid_argument("delta_grid: step must be > 0");
  }
  std::vector<double> grid;
  for (double d = 0.0; d <= max_delta + 1e-12; d += step) {
    grid.push_back(std::min(d, 1.0));
  }
  return grid;
}

SweepResult sweep_delta(const Scenario& scenario,
                        const std::vector<double>& grid,
                        const Engine& engine) {
  if (grid.empty()) {
    throw std::invalid_argument("sweep_delta: empty delta grid");
  }
  std::vector<double> deltas = grid;
  std::sort(deltas.begin(), deltas.end());
  if (deltas.front() != 0.0) {
    throw std::invalid_argument("sweep_delta: grid must contain 0");
  }
  if (deltas.back() > 1.0 || deltas.front() < 0.0) {
    throw std::invalid_argument("sweep_delta: deltas must lie in [0,1]");
  }

  SweepResult result;
  result.deltas = deltas;
  result.net_revenues.reserve(deltas.size());
  for (double d : deltas) {
    Scenario sc = scenario;
    sc.econ.share_fraction = d;
    try {
      result.net_revenues.push_back(evaluate_scenario(sc, engine).net);
    } catch (const std::exception& e) {
      throw std::runtime_error("sweep_delta: engine failed at delta=" +
                               fmt(d) + ": " + e.what());
    }
  }

  // Ascending scan with strict improvement keeps the smallest delta on ties.
  std::size_t best = 0;
  for (std::size_t i = 1; i < deltas.size(); ++i) {
    if (result.net_revenues[i] > result.net_revenues[best]) {
      best = i;
    }
  }
  result.best_delta = deltas[best];
  result.best_net = result.net_revenues[best];
  result.baseline_net = result.net_revenues.front();
  const double eps = 1e-9 * scenario.econ.price;
  result.baseline_collapsed = result.baseline_net < eps;
  result.gain_ratio = result.best_net / std::max(result.baseline_net, eps);
  return result;
}

std::string Regime::name() const {
  std::string s =
      efficiency == EfficiencyMode::efficient ? "efficient" : "inefficient";
  s += demand == Demand::bass ? "-bass" : "-constant";
  return s;
}

Regime parse_regime(const std::string& text) {
  Regime r;
  std::string body = text;
  if (body.rfind("efficient-", 0) == 0) {
    r.efficiency = EfficiencyMode::efficient;
    body = body.substr(10);
  } else if (body.rfind("inefficient-", 0) == 0) {
    r.efficiency = EfficiencyMode::inefficient;
    body = body.substr(12);
  } else {
    throw std::invalid_argument("unknown regime '" + text +
                                "' (want efficient|inefficient - bass|constant)");
  }
  if (body == "bass") {
    r.demand = Regime::Demand::bass;
  } else if (body == "constant") {
    r.demand = Regime::Demand::constant;
  } else {
    throw std::invalid_argument("unknown demand kind in regime '" + text + "'");
  }
  return r;
}

Scenario scaled_scenario(const Scenario& templ, const Regime& regime,
                         double m) {
  if (!(m > 0.0)) {
    throw std::invalid_argument("scaled_scenario: market size must be > 0");
  }
  const double m0 = templ.demand.market_cap();
  if (!std::isfinite(m0) || !(m0 > 0.0)) {
    throw std::invalid_argument(
        "scaled_scenario: template demand must have a finite market cap");
  }
  const double c = m / m0;

  Scenario sc = templ;
  if (regime.demand == Regime::Demand::bass) {
    const auto* bass = std::get_if<BassParams>(&templ.demand.kind);
    if (!bass) {
      throw std::invalid_argument(
          "scaled_scenario: bass regime needs a bass demand template");
    }
    BassParams b = *bass;
    b.market_size = m;
    sc.demand.kind = b;
  } else {
    // Spread the same market over the run: rate m / horizon, capped at m.
    sc.demand.kind = ConstantDemand{m / templ.horizon, m};
  }

  // The efficiency label describes the provider's own P2P resharing; the
  // illicit swarm keeps whatever the template configured.
  sc.legal.efficiency_mode = regime.efficiency;
  sc.legal.downloader_upload_factor =
      regime.efficiency == EfficiencyMode::efficient ? 1.0 : 0.0;

  sc.legal.server_capacity *= c;
  sc.y_floor *= c;
  sc.initial_state.x_legal *= c;
  sc.initial_state.y_legal *= c;
  sc.initial_state.x_illicit *= c;
  sc.initial_state.y_illicit *= c;
  sc.initial_state.adopters *= c;
  return sc;
}

ExperimentReport scaling_experiment(const Scenario& templ,
                                    const std::vector<double>& market_sizes,
                                    const std::vector<Regime>& regimes,
                                    const std::vector<double>& grid,
                                    const Engine* stoch_engine) {
  if (market_sizes.size() < 2) {
    throw std::invalid_argument(
        "scaling_experiment: need at least two market sizes");
  }
  if (!std::is_sorted(market_sizes.begin(), market_sizes.end()) ||
      std::adjacent_find(market_sizes.begin(), market_sizes.end()) !=
          market_sizes.end()) {
    throw std::invalid_argument(
        "scaling_experiment: market sizes must be strictly increasing");
  }
  if (regimes.empty()) {
    throw std::invalid_argument("scaling_experiment: no regimes given");
  }

  ExperimentReport report;
  std::uint64_t cell = 0;
  for (const Regime& regime : regimes) {
    for (double m : market_sizes) {
      const Scenario sc = scaled_scenario(templ, regime, m);

      const SweepResult fluid_sweep = sweep_delta(sc, grid, Engine::fluid());
      Scenario at_star = sc;
      at_star.econ.share_fraction = fluid_sweep.best_delta;
      const RevenueReport fluid_star =
          evaluate_scenario(at_star, Engine::fluid());

      ExperimentRow fluid_row;
      fluid_row.regime = regime.name();
      fluid_row.demand_kind =
          regime.demand == Regime::Demand::bass ? "bass" : "constant";
      fluid_row.market_size = m;
      fluid_row.engine = "fluid";
      fluid_row.delta_star = fluid_sweep.best_delta;
      fluid_row.net_no_share = fluid_sweep.baseline_net;
      fluid_row.net_with_share = fluid_sweep.best_net;
      fluid_row.gain_ratio = fluid_sweep.gain_ratio;
      fluid_row.legal_completion_share = fluid_star.legal_share_of_completions;
      fluid_row.fluid_stoch_rel_err =
          std::numeric_limits<double>::quiet_NaN();
      report.rows.push_back(fluid_row);

      if (stoch_engine) {
        // Decorrelate cells without coupling them to execution order.
        Engine eng = *stoch_engine;
        eng.base_seed = mix_seed(stoch_engine->base_seed, cell);
        const SweepResult st_sweep = sweep_delta(sc, grid, eng);
        Scenario st_star = sc;
        st_star.econ.share_fraction = st_sweep.best_delta;
        const RevenueReport st_report = evaluate_scenario(st_star, eng);

        // Prediction error measured at the fluid optimum, which both
        // engines evaluated.
        const auto it = std::lower_bound(st_sweep.deltas.begin(),
                                         st_sweep.deltas.end(),
                                         fluid_sweep.best_delta - 1e-12);
        const std::size_t idx =
            static_cast<std::size_t>(it - st_sweep.deltas.begin());
        const double stoch_at_fluid_star = st_sweep.net_revenues[idx];
        const double denom =
            std::max(std::abs(fluid_sweep.best_net), 1e-9 * sc.econ.price);
        ExperimentRow st_row = fluid_row;
        st_row.engine = "stochastic";
        st_row.delta_star = st_sweep.best_delta;
        st_row.net_no_share = st_sweep.baseline_net;
        st_row.net_with_share = st_sweep.best_net;
        st_row.gain_ratio = st_sweep.gain_ratio;
        st_row.legal_completion_share = st_report.legal_share_of_completions;
        st_row.fluid_stoch_rel_err =
            std::abs(stoch_at_fluid_star - fluid_sweep.best_net) / denom;
        report.rows.push_back(st_row);
      }
      ++cell;
    }
  }
  return report;
}

std::string ExperimentReport::to_csv() const {
  std::string out =
      "regime,demand_kind,M,engine,delta_star,net_no_share,net_with_share,"
      "gain_ratio,legal_completion_share,fluid_stoch_rel_err\n";
  for (const auto& r : rows) {
    out += r.regime + ',' + r.demand_kind + ',' + fmt(r.market_size) + ',' +
           r.engine + ',' + fmt(r.delta_star) + ',' + fmt(r.net_no_share) +
           ',' + fmt(r.net_with_share) + ',' + fmt(r.gain_ratio) + ',' +
           fmt(r.legal_completion_share) + ',' +
           (std::isnan(r.fluid_stoch_rel_err) ? std::string()
                                              : fmt(r.fluid_stoch_rel_err)) +
           '\n';
  }
  return out;
}

std::string ExperimentReport::to_text_table() const {
  std::ostringstream os;
  os << std::left << std::setw(20) << "regime" << std::setw(9) << "demand"
     << std::right << std::setw(9) << "M" << "  " << std::left << std::setw(11)
     << "engine" << std::right << std::setw(8) << "delta*" << std::setw(14)
     << "net(d=0)" << std::setw(14) << "net(d*)" << std::setw(10) << "gain"
     << std::setw(12) << "legal_cmpl" << std::setw(12) << "rel_err" << '\n';
  for (const auto& r : rows) {
    os << std::left << std::setw(20) << r.regime << std::setw(9)
       << r.demand_kind << std::right << std::setw(9) << std::setprecision(0)
       << std::fixed << r.market_size << "  " << std::left << std::setw(11)
       << r.engine << std::right << std::setprecision(3) << std::setw(8)
       << r.delta_star << std::setprecision(2) << std::setw(14)
       << r.net_no_share << std::setw(14) << r.net_with_share
       << std::setprecision(3) << std::setw(10) << r.gain_ratio
       << std::setw(12) << r.legal_completion_share;
    if (std::isnan(r.fluid_stoch_rel_err)) {
      os << std::setw(12) << "-";
    } else {
      os << std::setw(12) << std::setprecision(4) << r.fluid_stoch_rel_err;
    }
    os << '\n';
    os.unsetf(std::ios::fixed);
  }
  return os.str();
}

}  // namespace seedshare
