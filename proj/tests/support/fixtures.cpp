#include "fixtures.hpp"

#include <algorithm>

namespace sliceadm::testing {

Instance toy1(const Toy1Options& o) {
  Instance in;
  in.space = ResourceSpace(1, 100);
  in.initial_pool = units({100});
  std::vector<CatalogEntry> entries;
  std::vector<double> weights;
  for (int T = 1; T <= 3; ++T) {
    entries.push_back({units({40}), T, 2.0});
    weights.push_back(o.weight_a / 3.0);
  }
  for (int T = 1; T <= 3; ++T) {
    entries.push_back({units({60}), T, 3.0});
    weights.push_back(o.weight_b / 3.0);
  }
  in.catalog = Catalog(entries);
  in.demand = RequestDistribution(in.catalog, weights, o.null_weight);
  in.econ = EconomicParams{o.beta, {o.own_rate}};
  in.mode = o.mode;
  in.horizon = o.horizon;
  in.validate();
  return in;
}

Instance random_instance(std::mt19937_64& rng, const RandomInstanceOptions& o) {
  auto uni = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
  auto pick = [&](int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); };

  const int dim = pick(1, o.max_dimension);
  const int D = o.resolution;
  Instance in;
  in.space = ResourceSpace(dim, D);

  std::vector<int> full(dim, D);
  // Sometimes start below the full pool.
  for (auto& u : full) u = pick(D / 2, D);
  in.initial_pool = ResourceVector(full);

  const int n_bundles = pick(1, o.max_bundles);
  std::vector<ResourceVector> bundles;
  while (static_cast<int>(bundles.size()) < n_bundles) {
    std::vector<int> u(dim);
    for (auto& x : u) x = pick(0, D * 7 / 10);
    ResourceVector b(u);
    if (b.is_zero() || std::find(bundles.begin(), bundles.end(), b) != bundles.end()) continue;
    bundles.push_back(b);
  }

  std::vector<CatalogEntry> entries;
  std::vector<double> weights;
  for (const auto& b : bundles) {
    const double base = uni(0.5, 5.0);
    for (int T = 1; T <= o.max_period; ++T) {
      if (T > 1 && pick(0, 2) == 0) continue;
      entries.push_back({b, T, base * uni(0.8, 1.2)});
      weights.push_back(uni(0.05, 1.0));
    }
  }
  in.catalog = Catalog(entries);
  const double null_w = o.allow_null_weight_zero && pick(0, 4) == 0 ? 0.0 : uni(0.1, 2.0);
  in.demand = RequestDistribution(in.catalog, weights, null_w);
  std::vector<double> rates(dim);
  for (auto& r : rates) r = uni(0.0, 5.0);
  in.econ = EconomicParams{uni(0.5, 0.99), rates};
  in.mode = o.mode;
  in.horizon = o.horizon;
  in.validate();
  return in;
}

MarketState random_state(const Instance& instance, std::mt19937_64& rng, int time) {
  MarketState s(instance.initial_pool, time);
  const auto& bundles = instance.catalog.bundles();
  std::uniform_int_distribution<std::size_t> which(1, bundles.size() - 1);
  for (int k = 0; k < 3; ++k) {
    const auto& b = bundles[which(rng)];
    if (!b.fits_within(s.idle_pool())) continue;
    if (instance.mode == ContractMode::non_expiring) {
      const int start = std::uniform_int_distribution<int>(0, time)(rng);
      s.admit(ActiveContract{start, instance.horizon - start, b, 1.0});
    } else {
      const int remaining = std::uniform_int_distribution<int>(1, 3)(rng);
      s.admit(ActiveContract{time, remaining, b, 1.0});
    }
  }
  return s;
}

}  // namespace sliceadm::testing
