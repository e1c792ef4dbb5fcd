#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "sliceadm/instance.hpp"

namespace sliceadm::testing {

struct Toy1Options {
  double own_rate = 4.0;
  double null_weight = 0.5;
  double weight_a = 0.3;
  double weight_b = 0.2;
  int horizon = 2;
  ContractMode mode = ContractMode::non_expiring;
  double beta = 0.9;
};

/// One resource at D=100, bundles A=0.4 (pays 2.0) and B=0.6 (pays 3.0),
/// each offered for 1, 2 and 3 periods with the bundle weight split evenly.
Instance toy1(const Toy1Options& o = {});

inline ResourceVector units(std::initializer_list<int> u) { return ResourceVector(std::vector<int>(u)); }

struct RandomInstanceOptions {
  int max_dimension = 2;
  int max_bundles = 4;
  int resolution = 10;
  int max_period = 3;
  int horizon = 2;
  ContractMode mode = ContractMode::non_expiring;
  bool allow_null_weight_zero = true;
};

/// Small random market; the same seed always gives the same instance.
Instance random_instance(std::mt19937_64& rng, const RandomInstanceOptions& o = {});

/// Random reachable-looking state: a few contracts admitted at t=0.
MarketState random_state(const Instance& instance, std::mt19937_64& rng, int time);

}  // namespace sliceadm::testing
