#include "seedshare/fluid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "seedshare/scenario.hpp"

namespace seedshare {

void SwarmParams::validate() const {
  if (!(peer_upload >= 0.0)) {
    throw std::invalid_argument("swarm.peer_upload must be >= 0");
  }
  if (!(download_cap > 0.0)) {
    throw std::invalid_argument("swarm.download_cap must be > 0");
  }
  if (!(server_capacity >= 0.0)) {
    throw std::invalid_argument("swarm.server_capacity must be >= 0");
  }
  if (!(seed_departure_rate > 0.0)) {
    throw std::invalid_argument("swarm.seed_departure_rate must be > 0");
  }
  const double expected =
      efficiency_mode == EfficiencyMode::efficient ? 1.0 : 0.0;
  if (downloader_upload_factor != expected) {
    throw std::invalid_argument(
        "swarm.downloader_upload_factor must match efficiency_mode "
        "(efficient: 1, inefficient: 0)");
  }
}

void MarketState::validate() const {
  const double fields[] = {x_legal,       y_legal,        x_illicit,
                           y_illicit,     adopters,       gross_revenue,
                           shared_revenue, completed_legal, completed_illicit};
  for (double f : fields) {
    if (!(f >= 0.0) || !std::isfinite(f)) {
      throw std::invalid_argument(
          "market state fields must be finite and >= 0");
    }
  }
}

bool MarketState::all_finite() const {
  return std::isfinite(x_legal) && std::isfinite(y_legal) &&
         std::isfinite(x_illicit) && std::isfinite(y_illicit) &&
         std::isfinite(adopters) && std::isfinite(gross_revenue) &&
         std::isfinite(shared_revenue) && std::isfinite(completed_legal) &&
         std::isfinite(completed_illicit);
}

double service_rate(double x, double y, const SwarmParams& params) {
  if (x <= 0.0) {
    return 0.0;
  }
  const double upload =
      params.peer_upload * (params.downloader_upload_factor * x + y) +
      params.server_capacity;
  return std::min(params.download_cap * x, upload);
}

double delay_estimate(double x, double y, const SwarmParams& params) {
  if (x <= 0.0) {
    return 0.0;
  }
  const double rate = service_rate(x, y, params);
  if (rate <= 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return x / rate;
}

MarketSignals market_signals(const MarketState& state, const Scenario& scenario,
                             bool hard_choice) {
  MarketSignals s;
  // Guard against tiny negative excursions of intermediate RK4 stages.
  const double x_l = std::max(state.x_legal, 0.0);
  const double y_l = std::max(state.y_legal, 0.0);
  const double x_i = std::max(state.x_illicit, 0.0);
  const double y_i = std::max(state.y_illicit, 0.0);
  const double adopters =
      std::clamp(state.adopters, 0.0, scenario.demand.market_cap());

  s.arrival_rate = scenario.demand.arrival_rate(adopters);
  s.service_legal = service_rate(x_l, y_l, scenario.legal);
  s.delay_legal = delay_estimate(x_l, y_l, scenario.legal);
  if (scenario.illicit.enabled) {
    s.service_illicit = service_rate(x_i, y_i, scenario.illicit);
    s.delay_illicit = delay_estimate(x_i, y_i, scenario.illicit);
  } else {
    s.service_illicit = 0.0;
    s.delay_illicit = std::numeric_limits<double>::infinity();
  }

  EconParams choice_econ = scenario.econ;
  if (hard_choice) {
    choice_econ.choice_temperature = 0.0;
  }

  // The reward depends on the legal purchase rate, which depends on the
  // join split, which depends on the reward. One Picard step from the
  // reward-free split resolves the loop; the composition stays smooth.
  JoinSplit split0 = {1.0, 0.0};
  if (scenario.illicit.enabled) {
    split0 = join_split(s.delay_legal, s.delay_illicit, 0.0, choice_econ);
  }
  const double purchase0 = s.arrival_rate * split0.frac_legal;
  s.reward = expected_seed_reward(state, scenario.econ, purchase0,
                                  scenario.legal.seed_departure_rate,
                                  scenario.y_floor);
  if (scenario.illicit.enabled) {
    s.split = join_split(s.delay_legal, s.delay_illicit, s.reward, choice_econ);
  } else {
    s.split = {1.0, 0.0};
  }
  s.legal_fate = seeding_decision(Swarm::legal, s.reward, scenario.econ);
  s.illicit_fate = seeding_decision(Swarm::illicit, s.reward, scenario.econ);
  return s;
}

MarketState fluid_rhs(const MarketState& state, double /*t*/,
                      const Scenario& scenario) {
  const MarketSignals s = market_signals(state, scenario, /*hard_choice=*/false);
  const double lam = s.arrival_rate;
  const double r_l = s.service_legal;
  const double r_i = s.service_illicit;
  const double legal_sales = lam * s.split.frac_legal;

  MarketState d;
  d.x_legal = legal_sales - r_l;
  d.y_legal = s.legal_fate.prob_seed_legal * r_l -
              scenario.legal.seed_departure_rate * std::max(state.y_legal, 0.0);
  if (scenario.illicit.enabled) {
    d.x_illicit = lam * s.split.frac_illicit - r_i;
    d.y_illicit = s.legal_fate.prob_seed_illicit * r_l +
                  s.illicit_fate.prob_seed_illicit * r_i -
                  scenario.illicit.seed_departure_rate *
                      std::max(state.y_illicit, 0.0);
  }
  d.adopters = lam;
  d.gross_revenue = scenario.econ.price * legal_sales;
  d.shared_revenue = scenario.econ.share_fraction * d.gross_revenue;
  d.completed_legal = r_l;
  d.completed_illicit = r_i;
  return d;
}

namespace {

MarketState axpy(const MarketState& s, double c, const MarketState& d) {
  MarketState r;
  r.x_legal = s.x_legal + c * d.x_legal;
  r.y_legal = s.y_legal + c * d.y_legal;
  r.x_illicit = s.x_illicit + c * d.x_illicit;
  r.y_illicit = s.y_illicit + c * d.y_illicit;
  r.adopters = s.adopters + c * d.adopters;
  r.gross_revenue = s.gross_revenue + c * d.gross_revenue;
  r.shared_revenue = s.shared_revenue + c * d.shared_revenue;
  r.completed_legal = s.completed_legal + c * d.completed_legal;
  r.completed_illicit = s.completed_illicit + c * d.completed_illicit;
  return r;
}

// Projects populations onto >= 0. A downloader undershoot is folded into
// the matching completion counter so the adopter balance
// A = x_L + x_I + completed_L + completed_I survives the projection.
void project(MarketState& s, double market_cap) {
  if (s.x_legal < 0.0) {
    s.completed_legal += s.x_legal;
    s.x_legal = 0.0;
  }
  if (s.x_illicit < 0.0) {
    s.completed_illicit += s.x_illicit;
    s.x_illicit = 0.0;
  }
  s.y_legal = std::max(s.y_legal, 0.0);
  s.y_illicit = std::max(s.y_illicit, 0.0);
  s.adopters = std::clamp(s.adopters, 0.0, market_cap);
  s.gross_revenue = std::max(s.gross_revenue, 0.0);
  s.shared_revenue = std::max(s.shared_revenue, 0.0);
  s.completed_legal = std::max(s.completed_legal, 0.0);
  s.completed_illicit = std::max(s.completed_illicit, 0.0);
}

}  // namespace

Trajectory integrate(const MarketState& initial, const Scenario& scenario,
                     double horizon, double dt) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("integrate: dt must be > 0");
  }
  if (!(horizon >= dt)) {
    throw std::invalid_argument("integrate: horizon must be >= dt");
  }
  initial.validate();

  // Fit an integer number of equal steps into the horizon, padded so the
  // recording stride divides the step count; sample spacing stays uniform
  // and the last sample lands exactly on the horizon.
  long long steps = static_cast<long long>(std::ceil(horizon / dt - 1e-12));
  steps = std::max<long long>(steps, 1);
  long long stride = std::max<long long>(
      1, std::llround(scenario.recording_interval / (horizon / steps)));
  stride = std::min(stride, steps);
  steps = stride * ((steps + stride - 1) / stride);
  const double step = horizon / static_cast<double>(steps);
  const double cap = scenario.demand.market_cap();

  Trajectory traj;
  traj.step_size = step;
  traj.times.reserve(static_cast<std::size_t>(steps / stride) + 1);
  traj.states.reserve(traj.times.capacity());
  traj.times.push_back(0.0);
  traj.states.push_back(initial);

  MarketState state = initial;
  for (long long i = 0; i < steps; ++i) {
    const double t = step * static_cast<double>(i);
    const MarketState k1 = fluid_rhs(state, t, scenario);
    const MarketState k2 =
        fluid_rhs(axpy(state, step / 2.0, k1), t + step / 2.0, scenario);
    const MarketState k3 =
        fluid_rhs(axpy(state, step / 2.0, k2), t + step / 2.0, scenario);
    const MarketState k4 = fluid_rhs(axpy(state, step, k3), t + step, scenario);

    MarketState incr = axpy(k1, 2.0, k2);
    incr = axpy(incr, 2.0, k3);
    incr = axpy(incr, 1.0, k4);
    state = axpy(state, step / 6.0, incr);
    project(state, cap);

    if (!state.all_finite()) {
      throw std::runtime_error("integrate: state became non-finite at t=" +
                               std::to_string(t + step));
    }
    if ((i + 1) % stride == 0) {
      traj.times.push_back(step * static_cast<double>(i + 1));
      traj.states.push_back(state);
    }
  }
  return traj;
}

}  // namespace seedshare
