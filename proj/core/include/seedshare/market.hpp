#ifndef SEEDSHARE_MARKET_HPP
#define SEEDSHARE_MARKET_HPP

namespace seedshare {

struct MarketState;

enum class Swarm { legal, illicit };

/// Economic parameters: pricing, the revenue-share fraction, and the
/// behavioral responses of users to shared revenue.
struct EconParams {
  double price = 1.0;
  double share_fraction = 0.0;       // delta, fraction of each sale paid to seeds
  double delay_sensitivity = 1.0;    // alpha, currency per unit delay
  double choice_temperature = 0.0;   // tau, softness of the join choice
  double base_seed_prob_legal = 0.0;    // rho0
  double base_seed_prob_illicit = 0.0;  // rhoI
  double rogue_base_prob = 0.0;         // rho_r0
  double reward_response = 0.0;         // kappa
  double rogue_response = 0.0;          // kappa_r

  void validate() const;
};

/// Split of arriving users between the two swarms. Components are in [0,1]
/// and sum to 1 (no balking).
struct JoinSplit {
  double frac_legal = 0.0;
  double frac_illicit = 0.0;
};

/// Fate probabilities of a user that just finished a download.
struct SeedFate {
  double prob_seed_legal = 0.0;
  double prob_seed_illicit = 0.0;
  double prob_exit = 0.0;
};

/// Myopic expected lifetime share income of a single legitimate seed:
/// the current per-seed share flow times the mean seeding duration.
/// y_floor guards the per-seed division when the seed pool is empty.
double expected_seed_reward(const MarketState& state, const EconParams& econ,
                            double legal_purchase_rate,
                            double legal_seed_departure_rate, double y_floor);

/// Price-vs-delay join choice. Generalized costs are
///   c_legal   = max(price - reward, 0) + alpha * delay_legal
///   c_illicit = alpha * delay_illicit.
/// With choice_temperature == 0 all mass goes to the strictly cheaper
/// swarm (ties favor legal); otherwise a two-option soft-min split.
/// Infinite delays are valid and represent a dead swarm.
JoinSplit join_split(double delay_legal, double delay_illicit, double reward,
                     const EconParams& econ);

/// Post-completion decision. Legal completers respond linearly (with
/// clamping) to the expected reward; illicit completers seed illicitly
/// with the base probability and never seed legally.
SeedFate seeding_decision(Swarm completed_in, double reward,
                          const EconParams& econ);

}  // namespace seedshare

#endif
