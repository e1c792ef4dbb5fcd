#pragma once

#include <stdexcept>
#include <string>

namespace sliceadm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A model object (catalog, distribution, parameters) violates its invariants.
class InvalidModel : public Error {
 public:
  using Error::Error;
};

/// Subtracting a bundle from a pool would leave a negative component.
class InfeasibleSubtraction : public Error {
 public:
  using Error::Error;
};

class UnknownBundle : public Error {
 public:
  using Error::Error;
};

/// (bundle, period) is not a catalog option.
class UnknownEntry : public Error {
 public:
  using Error::Error;
};

/// A request cannot be served by the pool it was evaluated against.
class InfeasibleRequest : public Error {
 public:
  using Error::Error;
};

/// An exact method would exceed its configured work budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class SchemaVersionError : public Error {
 public:
  using Error::Error;
};

class MalformedDocument : public Error {
 public:
  using Error::Error;
};

}  // namespace sliceadm
