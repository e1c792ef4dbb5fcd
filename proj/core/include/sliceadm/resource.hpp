#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace sliceadm {

/// Point of the normalized resource space [0,1]^N, stored as integer
/// multiples of 1/D so that pool arithmetic and state keys are exact.
/// The resolution D itself lives in ResourceSpace.
class ResourceVector {
 public:
  using Unit = std::int32_t;

  ResourceVector() = default;
  explicit ResourceVector(std::vector<Unit> units);

  static ResourceVector zero(std::size_t dimension);

  std::size_t dimension() const { return units_.size(); }
  std::span<const Unit> units() const { return units_; }
  Unit operator[](std::size_t i) const { return units_[i]; }

  bool is_zero() const;

  /// Componentwise partial order: true iff (*this)_i <= pool_i for every i.
  bool fits_within(const ResourceVector& pool) const;

  ResourceVector& operator+=(const ResourceVector& other);
  friend ResourceVector operator+(ResourceVector lhs, const ResourceVector& rhs) {
    lhs += rhs;
    return lhs;
  }

  friend bool operator==(const ResourceVector&, const ResourceVector&) = default;
  friend auto operator<=>(const ResourceVector&, const ResourceVector&) = default;

 private:
  std::vector<Unit> units_;
};

/// Exact componentwise difference. Throws InfeasibleSubtraction when
/// bundle does not fit within pool.
ResourceVector pool_subtract(const ResourceVector& pool, const ResourceVector& bundle);

/// True iff bundle <= pool - reserved, evaluated without forming a
/// possibly negative intermediate vector.
bool fits_after_reserving(const ResourceVector& bundle, const ResourceVector& pool,
                          const ResourceVector& reserved);

/// `/`-joined lattice units, e.g. "40/20".
std::string format_units(const ResourceVector& v);

struct ResourceVectorHash {
  std::size_t operator()(const ResourceVector& v) const noexcept;
};

/// Dimension N and resolution D shared by every vector of one model.
class ResourceSpace {
 public:
  ResourceSpace(std::size_t dimension, int resolution);

  std::size_t dimension() const { return dimension_; }
  int resolution() const { return resolution_; }

  /// Throws InvalidModel if a fraction lies outside [0,1] or is not a
  /// multiple of 1/D (within 1e-9).
  ResourceVector from_fractions(std::span<const double> fractions) const;
  std::vector<double> to_fractions(const ResourceVector& v) const;

  bool contains(const ResourceVector& v) const;
  ResourceVector full() const;
  ResourceVector zero() const { return ResourceVector::zero(dimension_); }

  friend bool operator==(const ResourceSpace&, const ResourceSpace&) = default;

 private:
  std::size_t dimension_;
  int resolution_;
};

}  // namespace sliceadm
