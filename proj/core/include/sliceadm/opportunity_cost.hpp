#pragma once

#include <cstdint>
#include <functional>
#include <string_view>

#include "sliceadm/instance.hpp"

namespace sliceadm {

enum class OcMethod { closed_form_two_step, enumeration, monte_carlo };

/// Payment factor applied to blocked future requests.
///  - literal: p(w, t_max - t) (non-expiring) or p(w, T_t) (expiring), with t
///    the decision time.
///  - remaining_horizon: p(w, t_max - tau) (non-expiring) or
///    p(w, min(T_t, t_max - tau)) (expiring), with tau the blocked period.
enum class PaymentVariant { literal, remaining_horizon };

std::string_view to_string(OcMethod m);
std::string_view to_string(PaymentVariant v);
OcMethod parse_oc_method(std::string_view s);
PaymentVariant parse_payment_variant(std::string_view s);

struct OcEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t sample_count = 1;
  OcMethod method = OcMethod::enumeration;

  friend bool operator==(const OcEstimate&, const OcEstimate&) = default;
};

struct OcSettings {
  PaymentVariant variant = PaymentVariant::literal;
  std::uint64_t leaf_budget = 10'000'000;
};

/// Decision rule that drives the decline-branch trajectory: returns true to
/// accept `request` in `state` (state is post-expiry, pre-decision).
using RolloutPolicy = std::function<bool(const MarketState& state, const Request& request)>;

/// Two-step model, request at t=0 held for both periods:
/// C1 = (1+b) q(w0) + b * sum_{w in W0} [f(w, W0) - f(w, G(pool - w0))] p(w, 1).
/// Throws InfeasibleRequest when bundle does not fit pool.
double oc_two_step(const Instance& instance, const ResourceVector& pool,
                   const ResourceVector& bundle);

/// (1+b) p(w0, 2) - C1.
double payoff_two_step(const Instance& instance, const ResourceVector& pool,
                       const ResourceVector& bundle);

/// Expected payments lost in one period when `candidate` is additionally
/// reserved from `pool`:
/// sum_{w in G(pool)} [f(w, G(pool)) - f(w, G(pool - candidate))] p(w, period).
double blocking_term(const Instance& instance, const ResourceVector& pool,
                     const ResourceVector& candidate, int payment_period);

/// Opportunity cost of accepting `request` in `state`, averaged exactly over
/// every request sequence of the decline branch. Throws BudgetExceeded when
/// the outcome tree has more leaves than settings.leaf_budget.
double oc_exact_enumeration(const Instance& instance, const MarketState& state,
                            const Request& request, const RolloutPolicy& policy,
                            const OcSettings& settings = {});

/// Sample-mean estimate of the same quantity. Sample k draws its requests
/// from stream.substream(k); the result is deterministic for a fixed stream.
OcEstimate oc_monte_carlo(const Instance& instance, const MarketState& state,
                          const Request& request, const RolloutPolicy& policy,
                          std::int64_t n_samples, const RandomStream& stream,
                          const OcSettings& settings = {});

/// Present value of the request's payments minus `oc`; 0 for the null request.
double payoff(const Instance& instance, const Request& request, double oc);

}  // namespace sliceadm
