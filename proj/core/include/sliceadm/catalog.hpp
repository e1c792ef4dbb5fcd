#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sliceadm/resource.hpp"

namespace sliceadm {

/// One contract option: a bundle rented for `period` unit periods at
/// `payment` per period.
struct CatalogEntry {
  ResourceVector bundle;
  int period = 1;
  double payment = 0.0;

  friend bool operator==(const CatalogEntry&, const CatalogEntry&) = default;
};

/// The operator's fixed menu of contracts. The null contract (zero bundle,
/// zero payment, any period) is implicit and never stored as an entry.
class Catalog {
 public:
  Catalog() = default;
  explicit Catalog(std::vector<CatalogEntry> entries);

  const std::vector<CatalogEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  std::size_t dimension() const { return dimension_; }

  /// Distinct bundles with the null bundle at index 0, the rest in order of
  /// first appearance among the entries.
  const std::vector<ResourceVector>& bundles() const { return bundles_; }

  /// Index into bundles(); throws UnknownBundle.
  std::size_t bundle_index(const ResourceVector& bundle) const;
  std::optional<std::size_t> find_bundle(const ResourceVector& bundle) const;
  std::optional<std::size_t> find_entry(const ResourceVector& bundle, int period) const;

  /// Periodic payment of an exact catalog option; 0 for the null bundle.
  /// Throws UnknownEntry when (bundle, period) is not offered.
  double price(const ResourceVector& bundle, int period) const;

  /// Payment charged for holding `bundle` for `period` periods when the
  /// period is dictated by the horizon rather than chosen from the menu.
  /// Uses the exact option when offered; otherwise the option of that
  /// bundle with the longest period not exceeding `period`, falling back to
  /// its shortest period. Throws UnknownBundle for bundles outside the menu.
  double horizon_price(const ResourceVector& bundle, int period) const;

  double max_payment() const;

 private:
  std::vector<CatalogEntry> entries_;
  std::vector<ResourceVector> bundles_;
  std::size_t dimension_ = 0;
};

/// Bundles of the menu (including null) that fit within `pool`.
std::vector<ResourceVector> feasible_set(const ResourceVector& pool, const Catalog& catalog);

}  // namespace sliceadm
