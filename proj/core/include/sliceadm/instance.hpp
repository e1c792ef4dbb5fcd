#pragma once

#include "sliceadm/catalog.hpp"
#include "sliceadm/market.hpp"
#include "sliceadm/resource.hpp"
#include "sliceadm/stochastic.hpp"

namespace sliceadm {

/// Everything that defines one market: resources, menu, demand, money and
/// the (artificial) finite horizon t_max.
struct Instance {
  ResourceSpace space{1, 100};
  ResourceVector initial_pool;
  Catalog catalog;
  RequestDistribution demand;
  EconomicParams econ;
  ContractMode mode = ContractMode::non_expiring;
  int horizon = 1;

  /// Throws InvalidModel on any inconsistency between the parts.
  void validate() const;

  MarketState initial_state() const { return MarketState(initial_pool, 0); }
};

struct ContractTerms {
  int period = 0;
  double payment = 0.0;
};

/// Period and periodic payment a request is contracted under. Non-expiring
/// contracts run to the horizon (period t_max - t); expiring contracts use
/// the requested catalog option.
ContractTerms contract_terms(const Instance& instance, const Request& request);

enum class Admissibility { admissible, null_request, infeasible, overhang };

/// Whether a request can be accepted in `state` at all. Expiring requests
/// whose period runs past the horizon are not admissible.
Admissibility admissibility(const Instance& instance, const MarketState& state,
                            const Request& request);

/// Bundles whose arrival is possible at all (null plus bundles with positive
/// probability) in a form suitable for enumeration. In non-expiring mode
/// requests are grouped by bundle, since the horizon fixes the period.
struct RequestOutcome {
  Request request;
  double probability = 0.0;
};
std::vector<RequestOutcome> request_outcomes(const Instance& instance, int t);

}  // namespace sliceadm
