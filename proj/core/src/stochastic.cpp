#include "seedshare/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include "seedshare/scenario.hpp"

namespace seedshare {

std::uint64_t mix_seed(std::uint64_t base_seed, std::uint64_t index) {
  // splitmix64 over the golden-ratio stream starting at base_seed.
  std::uint64_t z = base_seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

MarketState rounded_initial(const MarketState& s) {
  MarketState r = s;
  r.x_legal = std::round(s.x_legal);
  r.y_legal = std::round(s.y_legal);
  r.x_illicit = std::round(s.x_illicit);
  r.y_illicit = std::round(s.y_illicit);
  r.adopters = std::round(s.adopters);
  r.completed_legal = std::round(s.completed_legal);
  r.completed_illicit = std::round(s.completed_illicit);
  return r;
}

}  // namespace

std::pair<Trajectory, MarketState> simulate_once(const Scenario& scenario,
                                                 double horizon,
                                                 std::uint64_t seed,
                                                 std::vector<Event>* event_log) {
  if (!(horizon > 0.0)) {
    throw std::invalid_argument("simulate_once: horizon must be > 0");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  MarketState state = rounded_initial(scenario.initial_state);
  state.validate();

  const double rec = scenario.recording_interval;
  Trajectory traj;
  traj.step_size = rec;
  traj.times.push_back(0.0);
  traj.states.push_back(state);
  // Sample times are k * rec computed from the integer index, so the final
  // sample lands on the horizon instead of drifting past it.
  std::uint64_t next_sample = 1;
  const auto record_up_to = [&](double t_limit) {
    for (;;) {
      const double ts = static_cast<double>(next_sample) * rec;
      if (ts > t_limit + 1e-9 * rec || ts > horizon + 1e-9 * rec) {
        break;
      }
      traj.times.push_back(std::min(ts, horizon));
      traj.states.push_back(state);
      ++next_sample;
    }
  };

  const double arrival_bound = scenario.demand.rate_bound();
  const double price = scenario.econ.price;
  const double delta = scenario.econ.share_fraction;
  double t = 0.0;

  while (t < horizon) {
    const MarketSignals sig = market_signals(state, scenario, true);
    const double lam = sig.arrival_rate;
    const double rate_arrival = lam > 0.0 ? arrival_bound : 0.0;
    const double rate_complete_legal = sig.service_legal;
    const double rate_complete_illicit = sig.service_illicit;
    const double rate_depart_legal =
        scenario.legal.seed_departure_rate * state.y_legal;
    const double rate_depart_illicit =
        scenario.illicit.enabled
            ? scenario.illicit.seed_departure_rate * state.y_illicit
            : 0.0;
    const double total = rate_arrival + rate_complete_legal +
                         rate_complete_illicit + rate_depart_legal +
                         rate_depart_illicit;
    if (!std::isfinite(total)) {
      throw std::runtime_error("simulate_once: non-finite event rate");
    }
    if (total <= 0.0) {
      break;  // nothing can ever happen again; fast-forward to horizon
    }

    t += -std::log1p(-unit(rng)) / total;
    if (t > horizon) {
      break;
    }
    record_up_to(t);

    double pick = unit(rng) * total;
    if (pick < rate_arrival) {
      // Thinning acceptance against the static envelope.
      if (unit(rng) * arrival_bound >= lam) {
        continue;
      }
      state.adopters += 1.0;
      if (sig.split.frac_legal >= 1.0 ||
          (sig.split.frac_legal > 0.0 && unit(rng) < sig.split.frac_legal)) {
        state.x_legal += 1.0;
        state.gross_revenue += price;
        state.shared_revenue += delta * price;
        if (event_log) {
          event_log->push_back({t, Event::Kind::arrival, Swarm::legal, state});
        }
      } else {
        state.x_illicit += 1.0;
        if (event_log) {
          event_log->push_back(
              {t, Event::Kind::arrival, Swarm::illicit, state});
        }
      }
      continue;
    }
    pick -= rate_arrival;
    if (pick < rate_complete_legal) {
      state.x_legal -= 1.0;
      state.completed_legal += 1.0;
      const double u = unit(rng);
      if (u < sig.legal_fate.prob_seed_legal) {
        state.y_legal += 1.0;
      } else if (u < sig.legal_fate.prob_seed_legal +
                         sig.legal_fate.prob_seed_illicit &&
                 scenario.illicit.enabled) {
        state.y_illicit += 1.0;
      }
      if (event_log) {
        event_log->push_back({t, Event::Kind::completion, Swarm::legal, state});
      }
      continue;
    }
    pick -= rate_complete_legal;
    if (pick < rate_complete_illicit) {
      state.x_illicit -= 1.0;
      state.completed_illicit += 1.0;
      if (unit(rng) < sig.illicit_fate.prob_seed_illicit) {
        state.y_illicit += 1.0;
      }
      if (event_log) {
        event_log->push_back(
            {t, Event::Kind::completion, Swarm::illicit, state});
      }
      continue;
    }
    pick -= rate_complete_illicit;
    if (pick < rate_depart_legal) {
      state.y_legal -= 1.0;
      if (event_log) {
        event_log->push_back({t, Event::Kind::departure, Swarm::legal, state});
      }
      continue;
    }
    state.y_illicit -= 1.0;
    if (event_log) {
      event_log->push_back({t, Event::Kind::departure, Swarm::illicit, state});
    }
  }

  record_up_to(horizon);
  return {std::move(traj), state};
}

StochasticRun simulate_ensemble(const Scenario& scenario, double horizon,
                                std::uint64_t base_seed, std::size_t n,
                                unsigned threads) {
  if (n < 1) {
    throw std::invalid_argument("simulate_ensemble: need at least 1 replication");
  }
  StochasticRun run;
  run.base_seed = base_seed;
  run.final_states.resize(n);

  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, n));

  std::vector<std::string> errors(threads);
  const auto worker = [&](unsigned tid) {
    for (std::size_t i = tid; i < n; i += threads) {
      try {
        run.final_states[i] =
            simulate_once(scenario, horizon, mix_seed(base_seed, i)).second;
      } catch (const std::exception& e) {
        errors[tid] = "replication " + std::to_string(i) + ": " + e.what();
        return;
      }
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned tid = 0; tid < threads; ++tid) {
      pool.emplace_back(worker, tid);
    }
    for (auto& th : pool) {
      th.join();
    }
  }
  for (const auto& err : errors) {
    if (!err.empty()) {
      throw std::runtime_error("simulate_ensemble: " + err);
    }
  }

  // Summaries run over the index-ordered results, so scheduling cannot
  // affect them.
  run.net_revenues.reserve(n);
  double sum = 0.0;
  for (const auto& fs : run.final_states) {
    const double net = fs.gross_revenue - fs.shared_revenue;
    run.net_revenues.push_back(net);
    sum += net;
    run.mean_final.x_legal += fs.x_legal;
    run.mean_final.y_legal += fs.y_legal;
    run.mean_final.x_illicit += fs.x_illicit;
    run.mean_final.y_illicit += fs.y_illicit;
    run.mean_final.adopters += fs.adopters;
    run.mean_final.gross_revenue += fs.gross_revenue;
    run.mean_final.shared_revenue += fs.shared_revenue;
    run.mean_final.completed_legal += fs.completed_legal;
    run.mean_final.completed_illicit += fs.completed_illicit;
  }
  const double inv = 1.0 / static_cast<double>(n);
  run.mean_net_revenue = sum * inv;
  run.mean_final.x_legal *= inv;
  run.mean_final.y_legal *= inv;
  run.mean_final.x_illicit *= inv;
  run.mean_final.y_illicit *= inv;
  run.mean_final.adopters *= inv;
  run.mean_final.gross_revenue *= inv;
  run.mean_final.shared_revenue *= inv;
  run.mean_final.completed_legal *= inv;
  run.mean_final.completed_illicit *= inv;

  double ss = 0.0;
  for (double net : run.net_revenues) {
    const double d = net - run.mean_net_revenue;
    ss += d * d;
  }
  run.var_net_revenue = n > 1 ? ss / static_cast<double>(n - 1) : 0.0;
  return run;
}

}  // namespace seedshare
