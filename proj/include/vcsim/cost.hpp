#pragma once

#include <optional>
#include <stdexcept>

namespace vcsim {

// Equipment-cost comparison: paying per offloaded request versus buying an
// edge box outright. The request rate is an explicit input rather than a
// baked-in constant because the break-even horizon is directly proportional
// to it.
struct CostInputs {
  double price_per_request_usd = 2e-5;
  double request_rate_per_s = 0.0;
  double edge_capex_usd = 1000.0;

  void validate() const {
    if (price_per_request_usd < 0.0)
      throw std::invalid_argument("cost: price_per_request_usd must be >= 0");
    if (request_rate_per_s < 0.0)
      throw std::invalid_argument("cost: request_rate_per_s must be >= 0");
    if (edge_capex_usd <= 0.0) throw std::invalid_argument("cost: edge_capex_usd must be > 0");
  }
};

// Pay-per-request spend over a horizon.
inline double vcc_spend(const CostInputs& in, double horizon_s) {
  in.validate();
  if (horizon_s < 0.0) throw std::invalid_argument("cost: horizon_s must be >= 0");
  return in.price_per_request_usd * in.request_rate_per_s * horizon_s;
}

// Seconds until the per-request spend equals the edge capex; nullopt when
// the spend never accrues (zero price or zero rate).
inline std::optional<double> breakeven_time_s(const CostInputs& in) {
  in.validate();
  double usd_per_s = in.price_per_request_usd * in.request_rate_per_s;
  if (usd_per_s == 0.0) return std::nullopt;
  return in.edge_capex_usd / usd_per_s;
}

// Requests needed to spend the capex; nullopt for a free service.
inline std::optional<double> breakeven_requests(const CostInputs& in) {
  in.validate();
  if (in.price_per_request_usd == 0.0) return std::nullopt;
  return in.edge_capex_usd / in.price_per_request_usd;
}

}  // namespace vcsim
