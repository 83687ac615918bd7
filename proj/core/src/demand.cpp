#include "seedshare/demand.hpp"

#include <cmath>
#include <stdexcept>

namespace seedshare {

void BassParams::validate() const {
  if (!(p_innov > 0.0)) {
    throw std::invalid_argument("demand.p_innov must be > 0");
  }
  if (!(q_imit >= 0.0)) {
    throw std::invalid_argument("demand.q_imit must be >= 0");
  }
  if (!(market_size > 0.0)) {
    throw std::invalid_argument("demand.market_size must be > 0");
  }
}

void ConstantDemand::validate() const {
  if (!(rate >= 0.0)) {
    throw std::invalid_argument("demand.rate must be >= 0");
  }
  if (!(max_total >= 0.0)) {
    throw std::invalid_argument("demand.max_total must be >= 0");
  }
}

void DemandProcess::validate() const {
  std::visit([](const auto& k) { k.validate(); }, kind);
}

double DemandProcess::arrival_rate(double cum_adopters) const {
  if (const auto* bass = std::get_if<BassParams>(&kind)) {
    const double m = bass->market_size;
    if (cum_adopters < 0.0 || cum_adopters > m) {
      throw std::domain_error("cumulative adopters outside [0, market_size]");
    }
    return (bass->p_innov + bass->q_imit * cum_adopters / m) *
           (m - cum_adopters);
  }
  const auto& constant = std::get<ConstantDemand>(kind);
  if (cum_adopters >= constant.max_total) {
    return 0.0;
  }
  return constant.rate;
}

double DemandProcess::market_cap() const {
  if (const auto* bass = std::get_if<BassParams>(&kind)) {
    return bass->market_size;
  }
  return std::get<ConstantDemand>(kind).max_total;
}

double DemandProcess::rate_bound() const {
  if (const auto* bass = std::get_if<BassParams>(&kind)) {
    // (p + q A/M)(M - A) <= (p + q) M on [0, M]
    return (bass->p_innov + bass->q_imit) * bass->market_size;
  }
  return std::get<ConstantDemand>(kind).rate;
}

double bass_peak_time(const BassParams& params) {
  params.validate();
  if (!(params.q_imit > params.p_innov)) {
    throw std::domain_error(
        "peak time requires q_imit > p_innov (no interior peak)");
  }
  return std::log(params.q_imit / params.p_innov) /
         (params.p_innov + params.q_imit);
}

}  // namespace seedshare
