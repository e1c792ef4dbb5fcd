#include "sliceadm/instance.hpp"

#include <algorithm>

#include "sliceadm/errors.hpp"

namespace sliceadm {

void Instance::validate() const {
  if (!space.contains(initial_pool)) throw InvalidModel("initial pool lies outside [0,1]^N");
  if (catalog.dimension() != space.dimension()) {
    throw InvalidModel("catalog dimension differs from the resource dimension");
  }
  for (const auto& e : catalog.entries()) {
    if (!space.contains(e.bundle)) throw InvalidModel("catalog bundle lies outside [0,1]^N");
  }
  if (demand.catalog().entries() != catalog.entries()) {
    throw InvalidModel("request distribution was built for a different catalog");
  }
  sliceadm::validate(econ, space.dimension());
  if (horizon < 1) throw InvalidModel("t_max must be >= 1");
}

ContractTerms contract_terms(const Instance& instance, const Request& request) {
  if (request.is_null()) return {0, 0.0};
  if (instance.mode == ContractMode::non_expiring) {
    const int period = instance.horizon - request.arrival_time;
    return {period, instance.catalog.horizon_price(request.bundle, period)};
  }
  return {request.period, instance.catalog.price(request.bundle, request.period)};
}

Admissibility admissibility(const Instance& instance, const MarketState& state,
                            const Request& request) {
  if (request.is_null()) return Admissibility::null_request;
  if (!request.bundle.fits_within(state.idle_pool())) return Admissibility::infeasible;
  if (instance.mode == ContractMode::expiring &&
      request.arrival_time + request.period > instance.horizon) {
    return Admissibility::overhang;
  }
  return Admissibility::admissible;
}

std::vector<RequestOutcome> request_outcomes(const Instance& instance, int t) {
  std::vector<RequestOutcome> out;
  const auto& dist = instance.demand;
  const std::size_t dim = instance.space.dimension();
  if (dist.null_probability() > 0.0) out.push_back({Request::null_at(t, dim), dist.null_probability()});
  const auto& entries = instance.catalog.entries();
  if (instance.mode == ContractMode::non_expiring) {
    const auto& bundles = instance.catalog.bundles();
    const auto g = dist.bundle_probabilities();
    for (std::size_t b = 1; b < bundles.size(); ++b) {
      if (g[b] <= 0.0) continue;
      const auto entry = std::find_if(entries.begin(), entries.end(),
                                      [&](const CatalogEntry& e) { return e.bundle == bundles[b]; });
      out.push_back({Request{t, bundles[b], entry->period}, g[b]});
    }
  } else {
    const auto p = dist.entry_probabilities();
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (p[i] <= 0.0) continue;
      out.push_back({Request{t, entries[i].bundle, entries[i].period}, p[i]});
    }
  }
  return out;
}

}  // namespace sliceadm
