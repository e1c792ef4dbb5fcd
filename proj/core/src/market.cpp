#include "sliceadm/market.hpp"

#include <cmath>

#include "sliceadm/errors.hpp"

namespace sliceadm {

void validate(const EconomicParams& params, std::size_t dimension) {
  if (!(params.beta > 0.0 && params.beta < 1.0)) {
    throw InvalidModel("beta must lie in the open interval (0,1)");
  }
  if (params.own_revenue_rates.size() != dimension) {
    throw InvalidModel("own_revenue_rates must have one rate per resource type");
  }
  for (double c : params.own_revenue_rates) {
    if (!std::isfinite(c) || c < 0.0) throw InvalidModel("own revenue rates must be >= 0");
  }
}

MarketState::MarketState(ResourceVector initial_pool, int time)
    : time_(time),
      initial_pool_(initial_pool),
      idle_pool_(initial_pool),
      reserved_(ResourceVector::zero(initial_pool.dimension())) {}

void MarketState::admit(ActiveContract contract) {
  idle_pool_ = pool_subtract(idle_pool_, contract.bundle);
  reserved_ += contract.bundle;
  ledger_.push_back(std::move(contract));
}

std::vector<ActiveContract> MarketState::release_expired() {
  std::vector<ActiveContract> released;
  std::vector<ActiveContract> kept;
  kept.reserve(ledger_.size());
  for (auto& c : ledger_) {
    if (c.end() <= time_) {
      released.push_back(std::move(c));
    } else {
      kept.push_back(std::move(c));
    }
  }
  ledger_ = std::move(kept);
  for (const auto& c : released) {
    reserved_ = pool_subtract(reserved_, c.bundle);
    idle_pool_ += c.bundle;
  }
  return released;
}

double MarketState::active_payments() const {
  double total = 0.0;
  for (const auto& c : ledger_) {
    if (c.active_at(time_)) total += c.payment;
  }
  return total;
}

}  // namespace sliceadm
