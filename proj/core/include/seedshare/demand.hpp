#ifndef SEEDSHARE_DEMAND_HPP
#define SEEDSHARE_DEMAND_HPP

#include <limits>
#include <variant>

namespace seedshare {

/// Parameters of the Bass diffusion process: spontaneous adoption at rate
/// p_innov, word-of-mouth adoption at rate q_imit, over a finite market.
struct BassParams {
  double p_innov = 0.0;
  double q_imit = 0.0;
  double market_size = 0.0;

  /// Throws std::invalid_argument if any field is out of range.
  void validate() const;

  bool operator==(const BassParams&) const = default;
};

/// Constant-rate arrival baseline. max_total caps cumulative arrivals;
/// infinity means unbounded.
struct ConstantDemand {
  double rate = 0.0;
  double max_total = std::numeric_limits<double>::infinity();

  void validate() const;

  bool operator==(const ConstantDemand&) const = default;
};

/// Arrival process of newly interested users.
struct DemandProcess {
  std::variant<BassParams, ConstantDemand> kind;

  /// Instantaneous arrival rate given cumulative adopters. For the Bass
  /// kind, throws std::domain_error outside [0, market_size].
  double arrival_rate(double cum_adopters) const;

  /// Total number of users that can ever arrive (market_size, max_total,
  /// or infinity).
  double market_cap() const;

  /// Static upper bound on arrival_rate over the whole domain, used as the
  /// thinning envelope by the stochastic simulator.
  double rate_bound() const;

  bool is_bass() const { return std::holds_alternative<BassParams>(kind); }

  void validate() const;
};

/// Time of the arrival-rate maximum of the noise-free Bass curve started
/// from zero adopters: ln(q/p)/(p+q). Throws std::domain_error unless
/// q_imit > p_innov.
double bass_peak_time(const BassParams& params);

}  // namespace seedshare

#endif
