#include "sliceadm/resource.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sliceadm/errors.hpp"

namespace sliceadm {

ResourceVector::ResourceVector(std::vector<Unit> units) : units_(std::move(units)) {
  if (std::any_of(units_.begin(), units_.end(), [](Unit u) { return u < 0; })) {
    throw InvalidModel("resource vector has a negative component");
  }
}

ResourceVector ResourceVector::zero(std::size_t dimension) {
  return ResourceVector(std::vector<Unit>(dimension, 0));
}

bool ResourceVector::is_zero() const {
  return std::all_of(units_.begin(), units_.end(), [](Unit u) { return u == 0; });
}

bool ResourceVector::fits_within(const ResourceVector& pool) const {
  if (pool.dimension() != dimension()) return false;
  for (std::size_t i = 0; i < units_.size(); ++i) {
    if (units_[i] > pool.units_[i]) return false;
  }
  return true;
}

ResourceVector& ResourceVector::operator+=(const ResourceVector& other) {
  if (other.dimension() != dimension()) throw InvalidModel("resource dimension mismatch");
  for (std::size_t i = 0; i < units_.size(); ++i) units_[i] += other.units_[i];
  return *this;
}

ResourceVector pool_subtract(const ResourceVector& pool, const ResourceVector& bundle) {
  if (!bundle.fits_within(pool)) {
    throw InfeasibleSubtraction("cannot subtract " + format_units(bundle) + " from pool " +
                                format_units(pool));
  }
  std::vector<ResourceVector::Unit> out(pool.units().begin(), pool.units().end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= bundle[i];
  return ResourceVector(std::move(out));
}

bool fits_after_reserving(const ResourceVector& bundle, const ResourceVector& pool,
                          const ResourceVector& reserved) {
  if (bundle.dimension() != pool.dimension() || reserved.dimension() != pool.dimension()) {
    return false;
  }
  for (std::size_t i = 0; i < pool.dimension(); ++i) {
    if (bundle[i] + reserved[i] > pool[i]) return false;
  }
  return true;
}

std::string format_units(const ResourceVector& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.dimension(); ++i) {
    if (i) os << '/';
    os << v[i];
  }
  return os.str();
}

std::size_t ResourceVectorHash::operator()(const ResourceVector& v) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (auto u : v.units()) {
    h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(u));
    h *= 0x100000001b3ULL;
  }
  return h;
}

ResourceSpace::ResourceSpace(std::size_t dimension, int resolution)
    : dimension_(dimension), resolution_(resolution) {
  if (dimension == 0) throw InvalidModel("resource dimension must be at least 1");
  if (resolution < 1) throw InvalidModel("resolution must be a positive integer");
}

ResourceVector ResourceSpace::from_fractions(std::span<const double> fractions) const {
  if (fractions.size() != dimension_) {
    throw InvalidModel("expected " + std::to_string(dimension_) + " resource components, got " +
                       std::to_string(fractions.size()));
  }
  std::vector<ResourceVector::Unit> units;
  units.reserve(dimension_);
  for (double x : fractions) {
    if (!std::isfinite(x) || x < 0.0 || x > 1.0 + 1e-12) {
      throw InvalidModel("resource fraction outside [0,1]");
    }
    const double scaled = x * resolution_;
    const double rounded = std::round(scaled);
    if (std::abs(scaled - rounded) > 1e-9 * std::max(1.0, scaled)) {
      throw InvalidModel("resource fraction " + std::to_string(x) +
                         " is not representable at resolution " + std::to_string(resolution_));
    }
    units.push_back(static_cast<ResourceVector::Unit>(rounded));
  }
  return ResourceVector(std::move(units));
}

std::vector<double> ResourceSpace::to_fractions(const ResourceVector& v) const {
  std::vector<double> out;
  out.reserve(v.dimension());
  for (auto u : v.units()) out.push_back(static_cast<double>(u) / resolution_);
  return out;
}

bool ResourceSpace::contains(const ResourceVector& v) const {
  if (v.dimension() != dimension_) return false;
  return std::all_of(v.units().begin(), v.units().end(),
                     [this](auto u) { return u >= 0 && u <= resolution_; });
}

ResourceVector ResourceSpace::full() const {
  return ResourceVector(std::vector<ResourceVector::Unit>(dimension_, resolution_));
}

}  // namespace sliceadm
