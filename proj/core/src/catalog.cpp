#include "sliceadm/catalog.hpp"

#include <algorithm>
#include <cmath>

#include "sliceadm/errors.hpp"

namespace sliceadm {

Catalog::Catalog(std::vector<CatalogEntry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw InvalidModel("catalog has no entries");
  dimension_ = entries_.front().bundle.dimension();
  bundles_.push_back(ResourceVector::zero(dimension_));

  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    const std::string where = "catalog entry " + std::to_string(i) + ": ";
    if (e.bundle.dimension() != dimension_) throw InvalidModel(where + "dimension mismatch");
    if (e.bundle.is_zero()) {
      throw InvalidModel(where + "zero bundle is the implicit null contract");
    }
    if (e.period < 1) throw InvalidModel(where + "period must be >= 1");
    if (!std::isfinite(e.payment) || e.payment <= 0.0) {
      throw InvalidModel(where + "payment must be positive for a non-null bundle");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (entries_[j].bundle == e.bundle && entries_[j].period == e.period) {
        throw InvalidModel(where + "duplicates (bundle, period) of entry " + std::to_string(j));
      }
    }
    if (std::find(bundles_.begin(), bundles_.end(), e.bundle) == bundles_.end()) {
      bundles_.push_back(e.bundle);
    }
  }
}

std::optional<std::size_t> Catalog::find_bundle(const ResourceVector& bundle) const {
  auto it = std::find(bundles_.begin(), bundles_.end(), bundle);
  if (it == bundles_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - bundles_.begin());
}

std::size_t Catalog::bundle_index(const ResourceVector& bundle) const {
  if (auto idx = find_bundle(bundle)) return *idx;
  throw UnknownBundle("bundle " + format_units(bundle) + " is not in the catalog");
}

std::optional<std::size_t> Catalog::find_entry(const ResourceVector& bundle, int period) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].bundle == bundle && entries_[i].period == period) return i;
  }
  return std::nullopt;
}

double Catalog::price(const ResourceVector& bundle, int period) const {
  if (bundle.is_zero()) return 0.0;
  if (auto idx = find_entry(bundle, period)) return entries_[*idx].payment;
  throw UnknownEntry("no catalog option (" + format_units(bundle) + ", " +
                     std::to_string(period) + ")");
}

double Catalog::horizon_price(const ResourceVector& bundle, int period) const {
  if (bundle.is_zero()) return 0.0;
  const CatalogEntry* below = nullptr;
  const CatalogEntry* shortest = nullptr;
  for (const auto& e : entries_) {
    if (e.bundle != bundle) continue;
    if (e.period == period) return e.payment;
    if (e.period < period && (!below || e.period > below->period)) below = &e;
    if (!shortest || e.period < shortest->period) shortest = &e;
  }
  if (below) return below->payment;
  if (shortest) return shortest->payment;
  throw UnknownBundle("bundle " + format_units(bundle) + " is not in the catalog");
}

double Catalog::max_payment() const {
  double m = 0.0;
  for (const auto& e : entries_) m = std::max(m, e.payment);
  return m;
}

std::vector<ResourceVector> feasible_set(const ResourceVector& pool, const Catalog& catalog) {
  std::vector<ResourceVector> out;
  for (const auto& b : catalog.bundles()) {
    if (b.is_zero() || b.fits_within(pool)) out.push_back(b);
  }
  return out;
}

}  // namespace sliceadm
