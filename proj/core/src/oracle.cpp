#include "sliceadm/oracle.hpp"

#include <set>
#include <vector>

#include "sliceadm/economics.hpp"
#include "sliceadm/errors.hpp"

namespace sliceadm {

std::optional<bool> DpPolicy::accepts(const OcKey& key) const {
  if (auto it = decisions_.find(key); it != decisions_.end()) return it->second;
  return std::nullopt;
}

namespace {

MarketState after(const MarketState& s, const Instance& instance, const Request* accepted) {
  MarketState next = s;
  if (accepted) {
    const auto terms = contract_terms(instance, *accepted);
    next.admit(ActiveContract{s.time(), terms.period, accepted->bundle, terms.payment});
  }
  next.advance();
  next.release_expired();
  return next;
}

}  // namespace

DpPolicy dp_solve(const Instance& instance, const DpSettings& settings) {
  if (instance.mode == ContractMode::expiring && instance.horizon > settings.expiring_horizon_limit) {
    throw BudgetExceeded("exact expiring-mode DP is limited to t_max <= " +
                         std::to_string(settings.expiring_horizon_limit));
  }
  const int horizon = instance.horizon;
  std::vector<std::set<StateKey>> layers(static_cast<std::size_t>(horizon) + 1);
  layers[0].insert(make_state_key(instance, instance.initial_state()));
  std::uint64_t total = 1;

  for (int t = 0; t < horizon; ++t) {
    const auto outcomes = request_outcomes(instance, t);
    for (const auto& key : layers[t]) {
      const MarketState s = canonical_state(instance, key);
      auto add = [&](const MarketState& next) {
        if (layers[t + 1].insert(make_state_key(instance, next)).second && ++total > settings.state_budget) {
          throw BudgetExceeded("DP state space exceeds the budget of " +
                               std::to_string(settings.state_budget) + " (time, state) pairs");
        }
      };
      add(after(s, instance, nullptr));
      for (const auto& o : outcomes) {
        if (admissibility(instance, s, o.request) == Admissibility::admissible) {
          add(after(s, instance, &o.request));
        }
      }
    }
  }

  DpPolicy policy;
  for (const auto& key : layers[horizon]) policy.values_[key] = 0.0;
  const double beta = instance.econ.beta;
  for (int t = horizon - 1; t >= 0; --t) {
    const auto outcomes = request_outcomes(instance, t);
    for (const auto& key : layers[t]) {
      const MarketState s = canonical_state(instance, key);
      const double q_idle = own_revenue(s.idle_pool(), instance.econ, instance.space);
      const double decline =
          q_idle + beta * policy.values_.at(make_state_key(instance, after(s, instance, nullptr)));
      double v = 0.0;
      for (const auto& o : outcomes) {
        double best = decline;
        if (admissibility(instance, s, o.request) == Admissibility::admissible) {
          const auto terms = contract_terms(instance, o.request);
          const double contract = terms.payment * annuity_factor(beta, terms.period);
          const auto next = after(s, instance, &o.request);
          // own revenue on the pool left at t, before anything is released at t+1
          const double q_left = own_revenue(pool_subtract(s.idle_pool(), o.request.bundle),
                                            instance.econ, instance.space);
          const double accept =
              contract + q_left + beta * policy.values_.at(make_state_key(instance, next));
          const bool take = accept >= decline;
          policy.decisions_[make_oc_key(instance, s, o.request)] = take;
          if (take) best = accept;
        }
        v += o.probability * best;
      }
      policy.values_[key] = v;
    }
  }
  policy.v0_ = policy.values_.at(make_state_key(instance, instance.initial_state()));
  return policy;
}

RolloutPolicy as_rollout_policy(const DpPolicy& policy, const Instance& instance) {
  return [&policy, &instance](const MarketState& s, const Request& r) {
    return policy.accepts(make_oc_key(instance, s, r)).value_or(false);
  };
}

TwoStepComparison two_step_enumerate(const Instance& instance, const ResourceVector& bundle) {
  if (instance.horizon != 2 || instance.mode != ContractMode::non_expiring) {
    throw InvalidModel("two-step enumeration needs a non-expiring market with t_max = 2");
  }
  const ResourceVector& pool0 = instance.initial_pool;
  if (!bundle.fits_within(pool0)) {
    throw InfeasibleRequest("bundle " + format_units(bundle) + " does not fit the initial pool");
  }
  const double beta = instance.econ.beta;
  const auto q = [&](const ResourceVector& v) { return own_revenue(v, instance.econ, instance.space); };
  const auto& bundles = instance.catalog.bundles();
  const auto g = instance.demand.bundle_probabilities();

  // Expected profit over both periods given the t=0 decision and a t=1 rule.
  auto expected = [&](bool accept0, auto&& accept1) {
    const ResourceVector pool1 = accept0 ? pool_subtract(pool0, bundle) : pool0;
    const double payment0 = accept0 ? instance.catalog.horizon_price(bundle, 2) : 0.0;
    const double period0 = payment0 + q(pool1);
    double period1 = 0.0;
    for (std::size_t i = 0; i < bundles.size(); ++i) {
      const auto& w = bundles[i];
      double income = payment0 + q(pool1);
      if (!w.is_zero() && w.fits_within(pool1) && accept1(w)) {
        income = payment0 + instance.catalog.horizon_price(w, 1) + q(pool_subtract(pool1, w));
      }
      period1 += g[i] * income;
    }
    return period0 + beta * period1;
  };

  const auto paper_rule = [](const ResourceVector&) { return true; };
  const auto optimal_rule = [&](const ResourceVector& w) {
    return instance.catalog.horizon_price(w, 1) >= q(w);
  };

  TwoStepComparison out;
  if (bundle.is_zero()) {
    const double v = expected(false, paper_rule);
    const double vo = expected(false, optimal_rule);
    out.paper_policy = {v, v};
    out.optimal_policy = {vo, vo};
    return out;
  }
  out.paper_policy = {expected(true, paper_rule), expected(false, paper_rule)};
  out.optimal_policy = {expected(true, optimal_rule), expected(false, optimal_rule)};
  out.closed_form_payoff = payoff_two_step(instance, pool0, bundle);
  return out;
}

}  // namespace sliceadm
