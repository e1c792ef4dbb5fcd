#include "sliceadm/strategy.hpp"

#include <algorithm>
#include <cmath>

#include "sliceadm/errors.hpp"

namespace sliceadm {

namespace {

std::uint64_t hash_vector(std::uint64_t h, const ResourceVector& v) {
  for (auto u : v.units()) h = hash_combine(h, static_cast<std::uint64_t>(u));
  return h;
}

std::uint64_t hash_key(const OcKey& key) {
  std::uint64_t h = hash_combine(0x5eed, static_cast<std::uint64_t>(key.state.time));
  h = hash_vector(h, key.state.idle_pool);
  for (const auto& [bucket, bundle] : key.state.ledger) {
    h = hash_combine(h, static_cast<std::uint64_t>(bucket));
    h = hash_vector(h, bundle);
  }
  h = hash_vector(h, key.bundle);
  return hash_combine(h, static_cast<std::uint64_t>(key.period));
}

int catalog_period_of(const Instance& instance, const ResourceVector& bundle) {
  for (const auto& e : instance.catalog.entries()) {
    if (e.bundle == bundle) return e.period;
  }
  throw UnknownBundle("bundle " + format_units(bundle) + " is not in the catalog");
}

}  // namespace

StateKey make_state_key(const Instance& instance, const MarketState& state, int bucket_width) {
  StateKey key{state.time(), state.idle_pool(), {}};
  if (instance.mode == ContractMode::non_expiring) return key;
  if (bucket_width < 1) throw InvalidModel("bucket width must be >= 1");
  for (const auto& c : state.ledger()) {
    const int remaining = c.end() - state.time();
    if (remaining < 1) throw InvalidModel("state key requested before expiries were released");
    key.ledger.emplace_back((remaining - 1) / bucket_width, c.bundle);
  }
  std::sort(key.ledger.begin(), key.ledger.end());
  return key;
}

MarketState canonical_state(const Instance& instance, const StateKey& key, int bucket_width) {
  MarketState s(instance.initial_pool, key.time);
  if (instance.mode == ContractMode::non_expiring) {
    const auto reserved = pool_subtract(instance.initial_pool, key.idle_pool);
    if (!reserved.is_zero()) {
      s.admit(ActiveContract{key.time, std::max(1, instance.horizon - key.time), reserved, 0.0});
    }
  } else {
    for (const auto& [bucket, bundle] : key.ledger) {
      s.admit(ActiveContract{key.time, bucket * bucket_width + 1, bundle, 0.0});
    }
  }
  if (s.idle_pool() != key.idle_pool) {
    throw InvalidModel("state key is inconsistent with the initial pool");
  }
  return s;
}

OcKey make_oc_key(const Instance& instance, const MarketState& state, const Request& request,
                  int bucket_width) {
  const int period = instance.mode == ContractMode::non_expiring ? 0 : request.period;
  return OcKey{make_state_key(instance, state, bucket_width), request.bundle, period};
}

OcTable::OcTable(TableScope scope, OcTableSettings settings, std::shared_ptr<const Strategy> base,
                 int iteration)
    : scope_(scope), settings_(settings), base_(std::move(base)), iteration_(iteration) {
  if (!base_) throw InvalidModel("an OC table needs a base strategy");
  if (settings_.n_samples < 1) throw InvalidModel("OC table needs n_samples >= 1");
  if (settings_.bucket_width < 1) throw InvalidModel("bucket width must be >= 1");
}

OcEstimate OcTable::lookup(const Instance& instance, const MarketState& state,
                           const Request& request) const {
  if (instance.horizon != scope_.horizon || instance.mode != scope_.mode ||
      instance.space.resolution() != scope_.resolution) {
    throw InvalidModel("OC table was built for a different horizon, mode or resolution");
  }
  const OcKey key = make_oc_key(instance, state, request, settings_.bucket_width);
  {
    std::lock_guard lock(mutex_);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  }
  // Computed without holding the lock: evaluation re-enters tables of
  // earlier strategies. The value depends on the key only, so a race just
  // duplicates work.
  const OcEstimate estimate = compute(instance, key);
  std::lock_guard lock(mutex_);
  return entries_.emplace(key, estimate).first->second;
}

OcEstimate OcTable::compute(const Instance& instance, const OcKey& key) const {
  const MarketState state = canonical_state(instance, key.state, settings_.bucket_width);
  const int period = key.period > 0 ? key.period : catalog_period_of(instance, key.bundle);
  const Request request{key.state.time, key.bundle, period};
  const RolloutPolicy policy = as_rollout_policy(*base_, instance);
  const OcSettings oc_settings{settings_.variant, settings_.leaf_budget};

  switch (settings_.method) {
    case OcMethod::monte_carlo:
      return oc_monte_carlo(instance, state, request, policy, settings_.n_samples,
                            RandomStream(settings_.seed, hash_key(key)), oc_settings);
    case OcMethod::closed_form_two_step:
      if (instance.mode != ContractMode::non_expiring || instance.horizon != 2) {
        throw InvalidModel("closed-form-2step needs a non-expiring market with t_max = 2");
      }
      if (key.state.time == 0) {
        return OcEstimate{oc_two_step(instance, state.idle_pool(), key.bundle), 0.0, 1,
                          OcMethod::closed_form_two_step};
      }
      [[fallthrough]];
    case OcMethod::enumeration:
      return OcEstimate{oc_exact_enumeration(instance, state, request, policy, oc_settings), 0.0,
                        1, OcMethod::enumeration};
  }
  throw InvalidModel("unknown OC method");
}

void OcTable::insert(const OcKey& key, const OcEstimate& estimate) {
  std::lock_guard lock(mutex_);
  entries_[key] = estimate;
}

std::vector<std::pair<OcKey, OcEstimate>> OcTable::entries() const {
  std::lock_guard lock(mutex_);
  return {entries_.begin(), entries_.end()};
}

std::size_t OcTable::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

std::string_view to_string(StrategyKind k) {
  switch (k) {
    case StrategyKind::always_accept: return "always-accept";
    case StrategyKind::never_accept: return "never-accept";
    case StrategyKind::price_threshold: return "price-threshold";
    case StrategyKind::oc_optimal: return "oc-optimal";
  }
  return "?";
}

Strategy Strategy::always_accept() { return Strategy(StrategyKind::always_accept, 0.0, nullptr); }
Strategy Strategy::never_accept() { return Strategy(StrategyKind::never_accept, 0.0, nullptr); }

Strategy Strategy::price_threshold(double min_payment) {
  return Strategy(StrategyKind::price_threshold, min_payment, nullptr);
}

Strategy Strategy::oc_optimal(std::shared_ptr<OcTable> table) {
  if (!table) throw InvalidModel("oc-optimal strategy needs an OC table");
  return Strategy(StrategyKind::oc_optimal, 0.0, std::move(table));
}

DecisionResult decide(const Strategy& strategy, const Instance& instance,
                      const MarketState& state, const Request& request) {
  if (request.arrival_time != state.time()) {
    throw InvalidModel("request arrival time differs from the state time");
  }
  DecisionResult result;
  result.admissibility = admissibility(instance, state, request);
  result.state = state;
  if (result.admissibility != Admissibility::admissible) return result;

  const auto terms = contract_terms(instance, request);
  bool accept = false;
  switch (strategy.kind()) {
    case StrategyKind::always_accept: accept = true; break;
    case StrategyKind::never_accept: accept = false; break;
    case StrategyKind::price_threshold: accept = terms.payment >= strategy.threshold(); break;
    case StrategyKind::oc_optimal: {
      const OcEstimate oc = strategy.table()->lookup(instance, state, request);
      const double gamma = payoff(instance, request, oc.value);
      result.oc = oc;
      result.payoff = gamma;
      accept = gamma >= 0.0;
      break;
    }
  }
  if (accept) {
    result.decision = Decision::accept;
    result.state.admit(ActiveContract{state.time(), terms.period, request.bundle, terms.payment});
  }
  return result;
}

RolloutPolicy as_rollout_policy(const Strategy& strategy, const Instance& instance) {
  switch (strategy.kind()) {
    case StrategyKind::always_accept:
      return [](const MarketState&, const Request&) { return true; };
    case StrategyKind::never_accept:
      return [](const MarketState&, const Request&) { return false; };
    default:
      return [&strategy, &instance](const MarketState& s, const Request& r) {
        return decide(strategy, instance, s, r).decision == Decision::accept;
      };
  }
}

Strategy make_oc_optimal(const Instance& instance, const OcTableSettings& settings,
                         const Strategy& base, int iteration) {
  TableScope scope{instance.horizon, instance.mode, instance.space.resolution()};
  return Strategy::oc_optimal(std::make_shared<OcTable>(
      scope, settings, std::make_shared<const Strategy>(base), iteration));
}

std::vector<Request> request_classes(const Instance& instance) {
  std::vector<Request> out;
  if (instance.mode == ContractMode::non_expiring) {
    for (std::size_t b = 1; b < instance.catalog.bundles().size(); ++b) {
      const auto& bundle = instance.catalog.bundles()[b];
      if (!bundle.fits_within(instance.initial_pool)) continue;
      out.push_back(Request{0, bundle, catalog_period_of(instance, bundle)});
    }
  } else {
    for (const auto& e : instance.catalog.entries()) {
      if (!e.bundle.fits_within(instance.initial_pool)) continue;
      out.push_back(Request{0, e.bundle, e.period});
    }
  }
  return out;
}

LearnResult learn_strategy(const Instance& instance, const LearnerSettings& settings,
                           const Strategy& initial) {
  if (settings.i_max < 1) throw InvalidModel("i_max must be >= 1");
  if (settings.gamma && !(*settings.gamma > 0.0)) throw InvalidModel("gamma must be > 0");

  const auto classes = request_classes(instance);
  const MarketState start = instance.initial_state();
  ConvergenceReport report;
  Strategy current = initial;
  std::vector<double> previous;

  for (int i = 0; i < settings.i_max; ++i) {
    Strategy updated = make_oc_optimal(instance, settings.table, current, i);
    IterationRecord record{i, {}, std::nullopt};
    for (const auto& r : classes) {
      record.oc_at_initial.push_back(updated.table()->lookup(instance, start, r).value);
    }

    if (i == 0) {
      double total = 0.0;
      for (double c : record.oc_at_initial) total += std::abs(c);
      report.gamma = settings.gamma.value_or(settings.gamma_relative * total);
    } else {
      double metric = 0.0;
      for (std::size_t k = 0; k < classes.size(); ++k) {
        metric += std::abs(record.oc_at_initial[k] - previous[k]);
      }
      record.metric = metric;
      if (metric < report.gamma) {
        report.converged = true;
        report.converged_at = i;
      }
    }
    previous = record.oc_at_initial;
    report.iterations.push_back(std::move(record));
    current = std::move(updated);
    if (report.converged) break;
  }
  return LearnResult{std::move(current), std::move(report)};
}

}  // namespace sliceadm
