#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "sliceadm/instance.hpp"
#include "sliceadm/opportunity_cost.hpp"

namespace sliceadm {

/// Decision-relevant summary of a MarketState. Non-expiring markets are
/// Markov in (time, idle pool); expiring markets also carry the active
/// contracts as sorted (remaining-period bucket, bundle) pairs.
struct StateKey {
  int time = 0;
  ResourceVector idle_pool;
  std::vector<std::pair<int, ResourceVector>> ledger;

  friend bool operator==(const StateKey&, const StateKey&) = default;
  friend auto operator<=>(const StateKey&, const StateKey&) = default;
};

/// Remaining periods r >= 1 fall into bucket (r - 1) / bucket_width.
StateKey make_state_key(const Instance& instance, const MarketState& state, int bucket_width = 1);

/// A state consistent with `key`, used to evaluate table entries so that the
/// stored value depends on the key alone. Each bucket is represented by its
/// shortest remaining period.
MarketState canonical_state(const Instance& instance, const StateKey& key, int bucket_width = 1);

/// Table index: state plus requested option. `period` is 0 in non-expiring
/// mode, where the horizon fixes the contract period.
struct OcKey {
  StateKey state;
  ResourceVector bundle;
  int period = 0;

  friend bool operator==(const OcKey&, const OcKey&) = default;
  friend auto operator<=>(const OcKey&, const OcKey&) = default;
};

OcKey make_oc_key(const Instance& instance, const MarketState& state, const Request& request,
                  int bucket_width = 1);

struct OcTableSettings {
  OcMethod method = OcMethod::monte_carlo;
  std::int64_t n_samples = 2000;
  std::uint64_t seed = 0;
  PaymentVariant variant = PaymentVariant::literal;
  int bucket_width = 1;
  std::uint64_t leaf_budget = 10'000'000;

  friend bool operator==(const OcTableSettings&, const OcTableSettings&) = default;
};

/// What a table was computed for; lookups against another market are refused.
struct TableScope {
  int horizon = 1;
  ContractMode mode = ContractMode::non_expiring;
  int resolution = 100;

  friend bool operator==(const TableScope&, const TableScope&) = default;
};

class Strategy;

/// Opportunity costs per (state, request) under a fixed base strategy that
/// drives the future trajectory. Missing entries are computed on first use
/// and memoized; lookups are safe from concurrent threads.
class OcTable {
 public:
  OcTable(TableScope scope, OcTableSettings settings, std::shared_ptr<const Strategy> base,
          int iteration = 0);

  const TableScope& scope() const { return scope_; }
  const OcTableSettings& settings() const { return settings_; }
  const std::shared_ptr<const Strategy>& base() const { return base_; }
  int iteration() const { return iteration_; }

  OcEstimate lookup(const Instance& instance, const MarketState& state,
                    const Request& request) const;

  /// Stores a precomputed value (deserialization, tests).
  void insert(const OcKey& key, const OcEstimate& estimate);

  std::vector<std::pair<OcKey, OcEstimate>> entries() const;
  std::size_t size() const;

 private:
  OcEstimate compute(const Instance& instance, const OcKey& key) const;

  TableScope scope_;
  OcTableSettings settings_;
  std::shared_ptr<const Strategy> base_;
  int iteration_;
  mutable std::mutex mutex_;
  mutable std::map<OcKey, OcEstimate> entries_;
};

enum class StrategyKind { always_accept, never_accept, price_threshold, oc_optimal };

std::string_view to_string(StrategyKind k);

/// The decision rule F. Copies share the same OC table.
class Strategy {
 public:
  static Strategy always_accept();
  static Strategy never_accept();
  /// Accepts when the contracted periodic payment is at least `min_payment`.
  static Strategy price_threshold(double min_payment);
  /// Accepts when the payoff against the table's opportunity cost is >= 0.
  static Strategy oc_optimal(std::shared_ptr<OcTable> table);

  StrategyKind kind() const { return kind_; }
  double threshold() const { return threshold_; }
  const std::shared_ptr<OcTable>& table() const { return table_; }

 private:
  Strategy(StrategyKind kind, double threshold, std::shared_ptr<OcTable> table)
      : kind_(kind), threshold_(threshold), table_(std::move(table)) {}

  StrategyKind kind_;
  double threshold_ = 0.0;
  std::shared_ptr<OcTable> table_;
};

enum class Decision { accept, decline };

struct DecisionResult {
  Decision decision = Decision::decline;
  Admissibility admissibility = Admissibility::null_request;
  MarketState state;                  // after the decision, same time
  std::optional<OcEstimate> oc;       // oc-optimal only
  std::optional<double> payoff;       // oc-optimal only
};

/// Null, infeasible and overhanging requests are always declined. Accepted
/// requests are added to the ledger and shrink the idle pool.
DecisionResult decide(const Strategy& strategy, const Instance& instance,
                      const MarketState& state, const Request& request);

/// Rollout adapter; `strategy` and `instance` must outlive the policy.
RolloutPolicy as_rollout_policy(const Strategy& strategy, const Instance& instance);

/// OC-threshold strategy whose table is evaluated under `base`. With the
/// default base this is the first update of the default strategy.
Strategy make_oc_optimal(const Instance& instance, const OcTableSettings& settings,
                         const Strategy& base = Strategy::always_accept(), int iteration = 0);

struct LearnerSettings {
  int i_max = 50;
  std::optional<double> gamma;      // absolute threshold; overrides gamma_relative
  double gamma_relative = 1e-2;     // times sum |C| of the first iteration
  OcTableSettings table;
};

struct IterationRecord {
  int iteration = 0;
  std::vector<double> oc_at_initial;  // one per request class, see request_classes()
  std::optional<double> metric;       // sum |C^i - C^{i-1}|, from the second iteration on
};

struct ConvergenceReport {
  std::vector<IterationRecord> iterations;
  double gamma = 0.0;
  bool converged = false;
  std::optional<int> converged_at;
};

/// Requests whose OC at the initial pool is tracked by the learner: one per
/// non-null bundle (non-expiring) or per catalog entry (expiring), skipping
/// those that do not fit the initial pool.
std::vector<Request> request_classes(const Instance& instance);

struct LearnResult {
  Strategy strategy;
  ConvergenceReport report;
};

/// Iterative strategy approximation: evaluate the OC of every request class
/// at the initial pool under the current strategy, replace the strategy by
/// the OC-threshold rule on those costs, and stop once the summed change of
/// the initial-pool OC drops below gamma or after i_max iterations.
LearnResult learn_strategy(const Instance& instance, const LearnerSettings& settings,
                           const Strategy& initial = Strategy::always_accept());

}  // namespace sliceadm
