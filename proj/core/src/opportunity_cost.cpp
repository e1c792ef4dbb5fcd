#include "sliceadm/opportunity_cost.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "sliceadm/economics.hpp"
#include "sliceadm/errors.hpp"

namespace sliceadm {

std::string_view to_string(OcMethod m) {
  switch (m) {
    case OcMethod::closed_form_two_step: return "closed-form-2step";
    case OcMethod::enumeration: return "enumeration";
    case OcMethod::monte_carlo: return "monte-carlo";
  }
  return "?";
}

std::string_view to_string(PaymentVariant v) {
  return v == PaymentVariant::literal ? "literal" : "remaining-horizon";
}

OcMethod parse_oc_method(std::string_view s) {
  if (s == "closed-form-2step") return OcMethod::closed_form_two_step;
  if (s == "enumeration") return OcMethod::enumeration;
  if (s == "monte-carlo") return OcMethod::monte_carlo;
  throw InvalidModel("unknown OC method '" + std::string(s) + "'");
}

PaymentVariant parse_payment_variant(std::string_view s) {
  if (s == "literal") return PaymentVariant::literal;
  if (s == "remaining-horizon") return PaymentVariant::remaining_horizon;
  throw InvalidModel("unknown payment variant '" + std::string(s) + "'");
}

double oc_two_step(const Instance& instance, const ResourceVector& pool,
                   const ResourceVector& bundle) {
  if (!bundle.fits_within(pool)) {
    throw InfeasibleRequest("bundle " + format_units(bundle) + " does not fit pool " +
                            format_units(pool));
  }
  instance.catalog.bundle_index(bundle);
  const double beta = instance.econ.beta;
  // The "before" set is G(pool), which is the whole menu for a full pool.
  const double blocked = blocking_term(instance, pool, bundle, 1);
  return (1.0 + beta) * own_revenue(bundle, instance.econ, instance.space) + beta * blocked;
}

double payoff_two_step(const Instance& instance, const ResourceVector& pool,
                       const ResourceVector& bundle) {
  const double oc = oc_two_step(instance, pool, bundle);
  return (1.0 + instance.econ.beta) * instance.catalog.horizon_price(bundle, 2) - oc;
}

double blocking_term(const Instance& instance, const ResourceVector& pool,
                     const ResourceVector& candidate, int payment_period) {
  const auto now = feasible_set(pool, instance.catalog);
  std::vector<ResourceVector> counterfactual;
  for (const auto& w : instance.catalog.bundles()) {
    if (fits_after_reserving(w, pool, candidate)) counterfactual.push_back(w);
  }
  double total = 0.0;
  for (const auto& w : now) {
    if (w.is_zero()) continue;  // p(null, .) = 0
    const double df = conditional_measure(w, now, instance.demand) -
                      conditional_measure(w, counterfactual, instance.demand);
    total += df * instance.catalog.horizon_price(w, payment_period);
  }
  return total;
}

namespace {

/// Shared pieces of the decline-branch evaluation for one (state, request).
class DeclineBranch {
 public:
  DeclineBranch(const Instance& instance, const MarketState& state, const Request& request,
                const RolloutPolicy& policy, const OcSettings& settings)
      : instance_(instance), request_(request), policy_(policy), settings_(settings) {
    if (request.arrival_time != state.time()) {
      throw InvalidModel("request arrival time differs from the state time");
    }
    if (!request.is_null() && !request.bundle.fits_within(state.idle_pool())) {
      throw InfeasibleRequest("request " + format_units(request.bundle) +
                              " does not fit idle pool " + format_units(state.idle_pool()));
    }
    if (!request.is_null()) {
      instance.catalog.bundle_index(request.bundle);
      terms_ = contract_terms(instance, request);
    }
  }

  int start() const { return request_.arrival_time; }
  int horizon() const { return instance_.horizon; }

  double foregone_own_revenue() const {
    return pv_own_revenue(request_.bundle, terms_.period, instance_.econ, instance_.space);
  }

  /// Discounted blocking contribution of period tau given the pre-decision
  /// state of that period.
  double blocking_at(int tau, const MarketState& s) const {
    if (tau >= start() + terms_.period) return 0.0;  // candidate already expired
    const int pay_period = settings_.variant == PaymentVariant::literal
                               ? terms_.period
                               : std::min(terms_.period, horizon() - tau);
    const double discount = std::pow(instance_.econ.beta, tau - start() + 1);
    return discount * blocking_term(instance_, s.idle_pool(), request_.bundle, pay_period);
  }

  /// Apply the rollout decision for `r` to `s` and move to the next period.
  void transition(MarketState& s, const Request* r) const {
    if (r && admissibility(instance_, s, *r) == Admissibility::admissible && policy_(s, *r)) {
      const auto terms = contract_terms(instance_, *r);
      s.admit(ActiveContract{s.time(), terms.period, r->bundle, terms.payment});
    }
    s.advance();
    s.release_expired();
  }

 private:
  const Instance& instance_;
  const Request& request_;
  const RolloutPolicy& policy_;
  const OcSettings& settings_;
  ContractTerms terms_;
};

double expand(const DeclineBranch& branch, const Instance& instance, const MarketState& s) {
  const int tau = s.time();
  double value = branch.blocking_at(tau, s);
  if (tau + 1 >= branch.horizon()) return value;
  if (tau == branch.start()) {
    MarketState next = s;
    branch.transition(next, nullptr);
    return value + expand(branch, instance, next);
  }
  double expected = 0.0;
  for (const auto& outcome : request_outcomes(instance, tau)) {
    MarketState next = s;
    branch.transition(next, outcome.request.is_null() ? nullptr : &outcome.request);
    expected += outcome.probability * expand(branch, instance, next);
  }
  return value + expected;
}

}  // namespace

double oc_exact_enumeration(const Instance& instance, const MarketState& state,
                            const Request& request, const RolloutPolicy& policy,
                            const OcSettings& settings) {
  DeclineBranch branch(instance, state, request, policy, settings);
  if (request.is_null()) return 0.0;

  const int depth = std::max(0, instance.horizon - state.time() - 2);
  const double fanout = static_cast<double>(request_outcomes(instance, 0).size());
  const double leaves = std::pow(std::max(1.0, fanout), depth);
  if (leaves > static_cast<double>(settings.leaf_budget)) {
    throw BudgetExceeded("enumeration needs " + std::to_string(leaves) + " leaves, budget is " +
                         std::to_string(settings.leaf_budget));
  }
  return branch.foregone_own_revenue() + expand(branch, instance, state);
}

OcEstimate oc_monte_carlo(const Instance& instance, const MarketState& state,
                          const Request& request, const RolloutPolicy& policy,
                          std::int64_t n_samples, const RandomStream& stream,
                          const OcSettings& settings) {
  if (n_samples < 1) throw InvalidModel("Monte Carlo OC needs at least one sample");
  DeclineBranch branch(instance, state, request, policy, settings);
  if (request.is_null()) return OcEstimate{0.0, 0.0, n_samples, OcMethod::monte_carlo};

  std::vector<double> samples(static_cast<std::size_t>(n_samples));
  for (std::int64_t k = 0; k < n_samples; ++k) {
    const RandomStream sub = stream.substream(static_cast<std::uint64_t>(k));
    MarketState s = state;
    double total = 0.0;
    for (int tau = state.time(); tau < instance.horizon; ++tau) {
      total += branch.blocking_at(tau, s);
      if (tau + 1 >= instance.horizon) break;
      if (tau == state.time()) {
        branch.transition(s, nullptr);
      } else {
        const Request r = sample_request(instance.demand, tau, sub);
        branch.transition(s, r.is_null() ? nullptr : &r);
      }
    }
    samples[static_cast<std::size_t>(k)] = total;
  }

  const double mean = pairwise_sum(samples) / static_cast<double>(n_samples);
  double std_error = 0.0;
  if (n_samples > 1) {
    std::vector<double> sq(samples.size());
    std::transform(samples.begin(), samples.end(), sq.begin(),
                   [mean](double x) { return (x - mean) * (x - mean); });
    const double var = pairwise_sum(sq) / static_cast<double>(n_samples - 1);
    std_error = std::sqrt(var / static_cast<double>(n_samples));
  }
  return OcEstimate{branch.foregone_own_revenue() + mean, std_error, n_samples,
                    OcMethod::monte_carlo};
}

double payoff(const Instance& instance, const Request& request, double oc) {
  if (request.is_null()) return 0.0;
  const auto terms = contract_terms(instance, request);
  return terms.payment * annuity_factor(instance.econ.beta, terms.period) - oc;
}

}  // namespace sliceadm
