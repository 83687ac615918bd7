// Acceptance suite: one check per release criterion, one PASS/FAIL line
// each. Usage: acceptance <path-to-seedshare-cli>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "seedshare/csv.hpp"
#include "seedshare/economics.hpp"
#include "seedshare/scenario.hpp"
#include "seedshare/stochastic.hpp"
#include "test_support.hpp"

using namespace seedshare;
using namespace seedshare::test;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool ok,
            const std::string& detail) {
  std::printf("[%s] %2d. %s: %s\n", ok ? "PASS" : "FAIL", number, name.c_str(),
              detail.c_str());
  if (!ok) {
    ++failures;
  }
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.5g", v);
  return buf;
}

struct BassDraw {
  BassParams params;
  double t_star;
};

std::vector<BassDraw> bass_draws(std::size_t n) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> p_draw(0.01, 0.05);
  std::uniform_real_distribution<double> ratio_draw(5.0, 15.0);
  std::uniform_real_distribution<double> m_draw(200.0, 5000.0);
  std::vector<BassDraw> draws;
  for (std::size_t i = 0; i < n; ++i) {
    BassDraw d;
    d.params = {p_draw(rng), 0.0, m_draw(rng)};
    d.params.q_imit = d.params.p_innov * ratio_draw(rng);
    d.t_star = bass_peak_time(d.params);
    draws.push_back(d);
  }
  return draws;
}

// Demand-only RK4, independent of the fluid integrator.
struct AdoptionCurve {
  std::vector<double> times;
  std::vector<double> rates;
  double final_adopters = 0.0;
};

AdoptionCurve integrate_adoption(const BassParams& params, double horizon,
                                 double dt) {
  DemandProcess d;
  d.kind = params;
  const double cap = params.market_size;
  const auto rate = [&](double a) {
    return d.arrival_rate(std::min(std::max(a, 0.0), cap));
  };
  AdoptionCurve curve;
  double a = 0.0;
  const long long steps = static_cast<long long>(std::ceil(horizon / dt));
  for (long long i = 0; i <= steps; ++i) {
    curve.times.push_back(dt * static_cast<double>(i));
    curve.rates.push_back(rate(a));
    const double k1 = rate(a);
    const double k2 = rate(a + dt / 2 * k1);
    const double k3 = rate(a + dt / 2 * k2);
    const double k4 = rate(a + dt * k3);
    a = std::min(a + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4), cap);
  }
  curve.final_adopters = a;
  return curve;
}

void criterion_bass_normalization_and_peak() {
  const auto draws = bass_draws(20);
  const std::clock_t start = std::clock();
  bool norm_ok = true;
  bool peak_ok = true;
  std::string norm_detail = "A(5 t*) within 1% of M on 20 draws";
  std::string peak_detail = "argmax within one recording interval on 20 draws";
  for (const auto& d : draws) {
    const double horizon = 5.0 * d.t_star;
    const double dt = d.t_star / 2000.0;
    const AdoptionCurve curve = integrate_adoption(d.params, horizon, dt);
    if (std::abs(curve.final_adopters - d.params.market_size) >
        0.01 * d.params.market_size) {
      norm_ok = false;
      norm_detail = "p=" + fmt(d.params.p_innov) + " q=" +
                    fmt(d.params.q_imit) + " reached only " +
                    fmt(curve.final_adopters) + " of " +
                    fmt(d.params.market_size);
    }
    // Recording interval: every 10th integrator sample.
    const std::size_t stride = 10;
    std::size_t best = 0;
    for (std::size_t i = 0; i < curve.rates.size(); i += stride) {
      if (curve.rates[i] > curve.rates[best]) {
        best = i;
      }
    }
    if (std::abs(curve.times[best] - d.t_star) >
        static_cast<double>(stride) * dt + 1e-12) {
      peak_ok = false;
      peak_detail = "peak at " + fmt(curve.times[best]) + " vs closed form " +
                    fmt(d.t_star);
    }
  }
  const double secs =
      static_cast<double>(std::clock() - start) / CLOCKS_PER_SEC;
  if (secs >= 1.0) {
    norm_ok = false;
    norm_detail += " (took " + fmt(secs) + "s, budget 1s)";
  }
  report(1, "Bass normalization", norm_ok,
         norm_detail + " [" + fmt(secs) + "s]");
  report(2, "closed-form peak location", peak_ok, peak_detail);
}

void criterion_fixed_point() {
  const Scenario sc = fixed_point_scenario();
  const Trajectory traj = integrate(sc.initial_state, sc, sc.horizon, sc.dt);
  const MarketState& fs = traj.final_state();
  const bool ok = std::abs(fs.x_legal - 1.0) <= 1e-3 &&
                  std::abs(fs.y_legal - 1.0) <= 1e-3;
  report(3, "single-swarm fixed point", ok,
         "final (x, y) = (" + fmt(fs.x_legal) + ", " + fmt(fs.y_legal) +
             ") vs analytic (1, 1)");
}

void criterion_conservation_and_ledger() {
  const Scenario sc = default_scenario();
  const double m = sc.demand.market_cap();
  const double delta = sc.econ.share_fraction;

  double worst_balance = 0.0;
  double worst_ledger = 0.0;
  const Trajectory fluid_traj =
      integrate(sc.initial_state, sc, sc.horizon, sc.dt);
  for (const MarketState& s : fluid_traj.states) {
    worst_balance = std::max(
        worst_balance,
        std::abs(s.adopters - (s.x_legal + s.x_illicit + s.completed_legal +
                               s.completed_illicit)));
    worst_ledger = std::max(
        worst_ledger, std::abs(s.shared_revenue - delta * s.gross_revenue) /
                          std::max(s.gross_revenue, 1.0));
  }

  bool stoch_exact = true;
  double worst_stoch_ledger = 0.0;
  for (std::uint64_t seed : {11ull, 12ull, 13ull}) {
    const auto [traj, fs] = simulate_once(sc, sc.horizon, seed);
    for (const MarketState& s : traj.states) {
      if (s.adopters != s.x_legal + s.x_illicit + s.completed_legal +
                            s.completed_illicit) {
        stoch_exact = false;
      }
      worst_stoch_ledger = std::max(
          worst_stoch_ledger,
          std::abs(s.shared_revenue - delta * s.gross_revenue) /
              std::max(s.gross_revenue, 1.0));
    }
  }

  report(4, "adopter conservation", worst_balance <= 1e-6 * m && stoch_exact,
         "fluid drift " + fmt(worst_balance) + " (budget " + fmt(1e-6 * m) +
             "), stochastic " + (stoch_exact ? "exact" : "VIOLATED"));
  report(5, "shared = delta * gross ledger identity",
         worst_ledger <= 1e-9 && worst_stoch_ledger <= 1e-12,
         "fluid rel err " + fmt(worst_ledger) + ", stochastic rel err " +
             fmt(worst_stoch_ledger));
}

void criterion_fluid_limit() {
  const std::clock_t start = std::clock();
  const Scenario templ = default_scenario();
  const Regime regime = parse_regime("efficient-bass");
  std::vector<double> rels;
  std::string detail;
  for (double m : {100.0, 1000.0, 10000.0}) {
    const Scenario sc = scaled_scenario(templ, regime, m);
    const double fluid_net = evaluate_scenario(sc, Engine::fluid()).net;
    const StochasticRun run = simulate_ensemble(sc, sc.horizon, 42, 200);
    const double rel =
        std::abs(run.mean_net_revenue - fluid_net) / std::abs(fluid_net);
    rels.push_back(rel);
    detail += "M=" + fmt(m) + ": " + fmt(rel) + "  ";
  }
  const double secs =
      static_cast<double>(std::clock() - start) / CLOCKS_PER_SEC;
  const bool ok = rels[0] > rels[1] && rels[1] > rels[2] && secs < 120.0;
  report(6, "fluid-limit predictiveness", ok,
         detail + "(200 reps each, " + fmt(secs) + "s)");
}

void criterion_revenue_sharing_benefit() {
  const Scenario templ = default_scenario();
  const Regime regime = parse_regime("efficient-bass");
  const std::vector<double> grid = delta_grid(0.025, 0.5);
  std::vector<double> ratios;
  std::string detail;
  for (double m : {500.0, 2000.0, 8000.0}) {
    const Scenario sc = scaled_scenario(templ, regime, m);
    const SweepResult sweep = sweep_delta(sc, grid, Engine::fluid());
    ratios.push_back(sweep.gain_ratio);
    detail += "M=" + fmt(m) + ": gain " + fmt(sweep.gain_ratio) + " at d*=" +
              fmt(sweep.best_delta) + "  ";
  }
  bool ok = true;
  for (double r : ratios) {
    ok = ok && r > 1.0;
  }
  for (std::size_t i = 1; i < ratios.size(); ++i) {
    ok = ok && ratios[i] >= ratios[i - 1] * (1.0 - 1e-6);
  }
  report(7, "revenue-sharing benefit", ok, detail);
}

void criterion_sanity_pole() {
  const Scenario sc = no_competition_scenario();
  const SweepResult sweep =
      sweep_delta(sc, delta_grid(0.1, 0.5), Engine::fluid());
  const double gross0 = sweep.net_revenues.front();
  bool ok = sweep.best_delta == 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < sweep.deltas.size(); ++i) {
    const double expected = (1.0 - sweep.deltas[i]) * gross0;
    worst = std::max(worst, std::abs(sweep.net_revenues[i] - expected) /
                                std::max(std::abs(expected), 1e-12));
    if (i > 0 && sweep.net_revenues[i] >= sweep.net_revenues[i - 1]) {
      ok = false;
    }
  }
  ok = ok && worst <= 1e-9;
  report(8, "no-competition sanity pole", ok,
         "net(delta) vs (1-delta)*gross rel err " + fmt(worst) +
             ", d*=" + fmt(sweep.best_delta));
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void criterion_determinism(const std::string& cli) {
  const std::string scenario = scenario_dir() + "/default.cfg";
  const std::string base = cli + " stoch --scenario \"" + scenario +
                           "\" --reps 50 --seed 7 --threads 2 --out ";
  const int rc1 = std::system((base + "acc_det_a.csv > /dev/null").c_str());
  const int rc2 = std::system((base + "acc_det_b.csv > /dev/null").c_str());
  const std::string a = slurp("acc_det_a.csv");
  const std::string b = slurp("acc_det_b.csv");
  std::remove("acc_det_a.csv");
  std::remove("acc_det_b.csv");

  const Scenario sc = default_scenario();
  const StochasticRun r1 = simulate_ensemble(sc, sc.horizon, 7, 32, 1);
  const StochasticRun r5 = simulate_ensemble(sc, sc.horizon, 7, 32, 5);
  const bool perm_ok = ensemble_csv(r1) == ensemble_csv(r5) &&
                       r1.mean_net_revenue == r5.mean_net_revenue;

  const bool ok =
      rc1 == 0 && rc2 == 0 && !a.empty() && a == b && perm_ok;
  report(9, "seeded determinism", ok,
         std::string("CLI outputs ") +
             (a == b && !a.empty() ? "byte-identical" : "DIFFER") +
             ", replication order " +
             (perm_ok ? "irrelevant" : "AFFECTS SUMMARY"));
}

void criterion_rk4_order() {
  const Scenario sc = smooth_scenario();
  const auto final_y = [&](double dt) {
    return integrate(sc.initial_state, sc, sc.horizon, dt)
        .final_state()
        .gross_revenue;
  };
  const double c = final_y(0.2);
  const double f = final_y(0.1);
  const double ff = final_y(0.05);
  const double order = std::log2(std::abs(c - f) / std::abs(f - ff));
  report(10, "RK4 convergence order", order > 3.5 && order < 4.5,
         "measured order " + fmt(order) + " (budget [3.5, 4.5])");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <path-to-seedshare-cli>\n");
    return 2;
  }
  const std::string cli = argv[1];

  criterion_bass_normalization_and_peak();
  criterion_fixed_point();
  criterion_conservation_and_ledger();
  criterion_fluid_limit();
  criterion_revenue_sharing_benefit();
  criterion_sanity_pole();
  criterion_determinism(cli);
  criterion_rk4_order();

  if (failures > 0) {
    std::printf("%d criterion(s) FAILED\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
