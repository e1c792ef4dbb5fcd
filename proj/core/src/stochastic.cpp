#include "sliceadm/stochastic.hpp"

#include <algorithm>
#include <cmath>

#include "sliceadm/errors.hpp"

namespace sliceadm {

RequestDistribution::RequestDistribution(const Catalog& catalog, std::vector<double> entry_weights,
                                         double null_weight)
    : catalog_(catalog) {
  if (entry_weights.size() != catalog.size()) {
    throw InvalidModel("expected one request weight per catalog entry");
  }
  double total = null_weight;
  if (!std::isfinite(null_weight) || null_weight < 0.0) {
    throw InvalidModel("null request weight must be >= 0");
  }
  for (double w : entry_weights) {
    if (!std::isfinite(w) || w < 0.0) throw InvalidModel("request weights must be >= 0");
    total += w;
  }
  if (!(total > 0.0)) throw InvalidModel("request weights sum to zero");

  entry_probabilities_.resize(entry_weights.size());
  bundle_probabilities_.assign(catalog.bundles().size(), 0.0);
  double non_null = 0.0;
  for (std::size_t i = 0; i < entry_weights.size(); ++i) {
    entry_probabilities_[i] = entry_weights[i] / total;
    non_null += entry_probabilities_[i];
    bundle_probabilities_[catalog.bundle_index(catalog.entries()[i].bundle)] +=
        entry_probabilities_[i];
  }
  null_probability_ = std::max(0.0, 1.0 - non_null);
  bundle_probabilities_[0] = null_probability_;
}

RequestDistribution RequestDistribution::null_only(const Catalog& catalog) {
  return RequestDistribution(catalog, std::vector<double>(catalog.size(), 0.0), 1.0);
}

double RequestDistribution::bundle_probability(const ResourceVector& bundle) const {
  return bundle_probabilities_[catalog_.bundle_index(bundle)];
}

double conditional_measure(const ResourceVector& bundle, std::span<const ResourceVector> feasible,
                           const RequestDistribution& dist) {
  const auto& bundles = dist.catalog().bundles();
  const auto g = dist.bundle_probabilities();
  const std::size_t idx = dist.catalog().bundle_index(bundle);
  auto in_feasible = [&](const ResourceVector& b) {
    return std::find(feasible.begin(), feasible.end(), b) != feasible.end();
  };
  if (idx == 0) {
    double mass = g[0];
    for (std::size_t i = 1; i < bundles.size(); ++i) {
      if (!in_feasible(bundles[i])) mass += g[i];
    }
    return mass;
  }
  return in_feasible(bundle) ? g[idx] : 0.0;
}

std::uint64_t mix64(std::uint64_t x) {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value) {
  return mix64(seed ^ (mix64(value) + 0x632be59bd9b4e019ULL + (seed << 6) + (seed >> 2)));
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : key_(hash_combine(mix64(seed), stream_id)) {}

std::uint64_t RandomStream::bits(std::uint64_t counter) const {
  return mix64(key_ ^ mix64(counter ^ 0xd1b54a32d192ed03ULL));
}

double RandomStream::uniform(std::uint64_t counter) const {
  return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
}

RandomStream RandomStream::substream(std::uint64_t id) const {
  return RandomStream(hash_combine(key_, id));
}

Request sample_request(const RequestDistribution& dist, int t, const RandomStream& stream) {
  const auto& entries = dist.catalog().entries();
  const std::size_t dim = dist.catalog().dimension();
  const double u = stream.uniform(static_cast<std::uint64_t>(t));
  double acc = dist.null_probability();
  if (u < acc) return Request::null_at(t, dim);
  const auto probs = dist.entry_probabilities();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    acc += probs[i];
    if (u < acc) return Request{t, entries[i].bundle, entries[i].period};
  }
  // u landed in the rounding slack above the cumulative total
  for (std::size_t i = entries.size(); i-- > 0;) {
    if (probs[i] > 0.0) return Request{t, entries[i].bundle, entries[i].period};
  }
  return Request::null_at(t, dim);
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace sliceadm
