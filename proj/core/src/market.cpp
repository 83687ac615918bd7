#include "seedshare/market.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "seedshare/fluid.hpp"

namespace seedshare {

namespace {

void check_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument(std::string("econ.") + name +
                                " must be in [0,1]");
  }
}

void check_nonneg(double v, const char* name) {
  if (!(v >= 0.0)) {
    throw std::invalid_argument(std::string("econ.") + name +
                                " must be >= 0");
  }
}

}  // namespace

void EconParams::validate() const {
  check_nonneg(price, "price");
  check_unit(share_fraction, "share_fraction");
  check_nonneg(delay_sensitivity, "delay_sensitivity");
  check_nonneg(choice_temperature, "choice_temperature");
  check_unit(base_seed_prob_legal, "base_seed_prob_legal");
  check_unit(base_seed_prob_illicit, "base_seed_prob_illicit");
  check_unit(rogue_base_prob, "rogue_base_prob");
  check_nonneg(reward_response, "reward_response");
  check_nonneg(rogue_response, "rogue_response");
}

double expected_seed_reward(const MarketState& state, const EconParams& econ,
                            double legal_purchase_rate,
                            double legal_seed_departure_rate, double y_floor) {
  if (econ.share_fraction == 0.0) {
    return 0.0;
  }
  const double pool = std::max(state.y_legal, y_floor);
  const double per_seed_flow =
      econ.share_fraction * econ.price * legal_purchase_rate / pool;
  return per_seed_flow / legal_seed_departure_rate;
}

JoinSplit join_split(double delay_legal, double delay_illicit, double reward,
                     const EconParams& econ) {
  const double alpha = econ.delay_sensitivity;
  const double effective_price = std::max(econ.price - reward, 0.0);
  const double cost_legal = effective_price + alpha * delay_legal;
  const double cost_illicit = alpha * delay_illicit;

  const bool legal_dead = std::isinf(cost_legal);
  const bool illicit_dead = std::isinf(cost_illicit);
  if (legal_dead || illicit_dead) {
    // Ties (both dead) go legal.
    const double f = (legal_dead && !illicit_dead) ? 0.0 : 1.0;
    return {f, 1.0 - f};
  }

  const double tau = econ.choice_temperature;
  if (tau == 0.0) {
    const double f = cost_legal <= cost_illicit ? 1.0 : 0.0;
    return {f, 1.0 - f};
  }
  const double z = std::clamp((cost_legal - cost_illicit) / tau, -500.0, 500.0);
  const double f = 1.0 / (1.0 + std::exp(z));
  return {f, 1.0 - f};
}

SeedFate seeding_decision(Swarm completed_in, double reward,
                          const EconParams& econ) {
  if (completed_in == Swarm::illicit) {
    return {0.0, econ.base_seed_prob_illicit,
            1.0 - econ.base_seed_prob_illicit};
  }
  const double p_legal = std::clamp(
      econ.base_seed_prob_legal + econ.reward_response * reward, 0.0, 1.0);
  const double p_rogue =
      std::clamp(econ.rogue_base_prob - econ.rogue_response * reward, 0.0,
                 1.0 - p_legal);
  // 1 - (a + b) keeps a + b + exit == 1 exact in floating point.
  return {p_legal, p_rogue, 1.0 - (p_legal + p_rogue)};
}

}  // namespace seedshare
