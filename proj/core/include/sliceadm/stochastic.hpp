#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sliceadm/catalog.hpp"
#include "sliceadm/market.hpp"

namespace sliceadm {

/// Per-period arrival probabilities: one weight per catalog entry plus the
/// null request. At most one request arrives per unit period.
class RequestDistribution {
 public:
  RequestDistribution() = default;

  /// Weights are normalized by their total, which must be positive.
  RequestDistribution(const Catalog& catalog, std::vector<double> entry_weights,
                      double null_weight);

  /// Degenerate distribution: the null request with probability 1.
  static RequestDistribution null_only(const Catalog& catalog);

  const Catalog& catalog() const { return catalog_; }
  double null_probability() const { return null_probability_; }
  std::span<const double> entry_probabilities() const { return entry_probabilities_; }

  /// Marginal g over catalog().bundles(); index 0 is the null bundle.
  std::span<const double> bundle_probabilities() const { return bundle_probabilities_; }
  double bundle_probability(const ResourceVector& bundle) const;

 private:
  Catalog catalog_;
  std::vector<double> entry_probabilities_;
  std::vector<double> bundle_probabilities_;
  double null_probability_ = 1.0;
};

/// f(bundle, feasible): arrival probability of `bundle` when requests that
/// do not fit (are not in `feasible`) count as null requests.
double conditional_measure(const ResourceVector& bundle, std::span<const ResourceVector> feasible,
                           const RequestDistribution& dist);

std::uint64_t mix64(std::uint64_t x);
std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value);

/// Counter-based random stream: the draw for a counter depends only on
/// (seed, stream id, counter), never on how many draws came before.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t bits(std::uint64_t counter) const;
  /// Uniform in [0, 1).
  double uniform(std::uint64_t counter) const;
  RandomStream substream(std::uint64_t id) const;

  std::uint64_t key() const { return key_; }

 private:
  explicit RandomStream(std::uint64_t key) : key_(key) {}
  std::uint64_t key_;
};

/// One categorical draw over {null} U entries for period t. The returned
/// request carries the catalog entry's own period.
Request sample_request(const RequestDistribution& dist, int t, const RandomStream& stream);

/// Deterministic pairwise summation.
double pairwise_sum(std::span<const double> values);

}  // namespace sliceadm
