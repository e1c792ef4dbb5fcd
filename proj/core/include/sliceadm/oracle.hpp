#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "sliceadm/instance.hpp"
#include "sliceadm/strategy.hpp"

namespace sliceadm {

struct DpSettings {
  std::uint64_t state_budget = 1'000'000;  // reachable (time, state) pairs
  int expiring_horizon_limit = 6;
};

/// Exact finite-horizon policy maximizing expected discounted profit, with
/// the same accounting as the simulator. Decisions are keyed like OC table
/// entries; ties accept.
class DpPolicy {
 public:
  double v0() const { return v0_; }
  /// V(t, s); throws std::out_of_range for unreached states.
  double value(const StateKey& key) const { return values_.at(key); }
  std::optional<bool> accepts(const OcKey& key) const;

  const std::map<StateKey, double>& values() const { return values_; }
  const std::map<OcKey, bool>& decisions() const { return decisions_; }
  std::size_t state_count() const { return values_.size(); }

 private:
  friend DpPolicy dp_solve(const Instance&, const DpSettings&);
  double v0_ = 0.0;
  std::map<StateKey, double> values_;
  std::map<OcKey, bool> decisions_;
};

/// Backward induction over every state reachable from the initial pool.
/// Throws BudgetExceeded when the reachable set exceeds the budget or an
/// expiring market runs longer than expiring_horizon_limit.
DpPolicy dp_solve(const Instance& instance, const DpSettings& settings = {});

/// Strategy view of a solved policy, for simulation against the oracle.
/// Unreached states fall back to declining.
RolloutPolicy as_rollout_policy(const DpPolicy& policy, const Instance& instance);

struct TwoStepValues {
  double accept = 0.0;   // expected profit when the t=0 request is accepted
  double decline = 0.0;
  double difference() const { return accept - decline; }
};

struct TwoStepComparison {
  TwoStepValues paper_policy;    // t=1: accept whatever fits
  TwoStepValues optimal_policy;  // t=1: accept iff p(w,1) >= q(w)
  double closed_form_payoff = 0.0;
};

/// Exhaustive expectation over the t=1 request for both t=0 decisions of a
/// two-period non-expiring market. Throws InvalidModel unless t_max = 2 and
/// the mode is non-expiring, InfeasibleRequest if the request does not fit.
TwoStepComparison two_step_enumerate(const Instance& instance, const ResourceVector& bundle);

}  // namespace sliceadm
