#pragma once

#include <vector>

#include "sliceadm/resource.hpp"

namespace sliceadm {

enum class ContractMode { non_expiring, expiring };

/// Discount factor and the linear own-slice revenue q(w) = rates . w.
struct EconomicParams {
  double beta = 0.9;
  std::vector<double> own_revenue_rates;  // money per period per unit of each resource

  friend bool operator==(const EconomicParams&, const EconomicParams&) = default;
};

/// Throws InvalidModel unless 0 < beta < 1 and all rates are finite and >= 0.
void validate(const EconomicParams& params, std::size_t dimension);

/// A tenant request arriving at `arrival_time`. A zero bundle is the null
/// request (no arrival this period).
struct Request {
  int arrival_time = 0;
  ResourceVector bundle;
  int period = 1;

  bool is_null() const { return bundle.is_zero(); }
  static Request null_at(int t, std::size_t dimension) {
    return Request{t, ResourceVector::zero(dimension), 1};
  }

  friend bool operator==(const Request&, const Request&) = default;
};

/// An accepted contract, holding its bundle during {start, ..., start+period-1}.
struct ActiveContract {
  int start = 0;
  int period = 1;
  ResourceVector bundle;
  double payment = 0.0;

  int end() const { return start + period; }
  bool active_at(int t) const { return start <= t && t < end(); }

  friend bool operator==(const ActiveContract&, const ActiveContract&) = default;
};

/// The single evolving state of one market trajectory. Keeps
/// idle_pool + reserved == initial_pool exactly at all times.
class MarketState {
 public:
  MarketState() = default;
  explicit MarketState(ResourceVector initial_pool, int time = 0);

  int time() const { return time_; }
  const ResourceVector& initial_pool() const { return initial_pool_; }
  const ResourceVector& idle_pool() const { return idle_pool_; }
  const ResourceVector& reserved() const { return reserved_; }
  const std::vector<ActiveContract>& ledger() const { return ledger_; }

  /// Reserve the contract's bundle. Throws InfeasibleSubtraction when it
  /// does not fit the idle pool.
  void admit(ActiveContract contract);

  /// Drop contracts whose window ended at or before the current time and
  /// return them in ledger order.
  std::vector<ActiveContract> release_expired();

  void advance() { ++time_; }

  /// Sum of periodic payments of contracts active at the current time.
  double active_payments() const;

 private:
  int time_ = 0;
  ResourceVector initial_pool_;
  ResourceVector idle_pool_;
  ResourceVector reserved_;
  std::vector<ActiveContract> ledger_;
};

}  // namespace sliceadm
