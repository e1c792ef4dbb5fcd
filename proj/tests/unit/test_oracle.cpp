#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "sliceadm/economics.hpp"
#include "sliceadm/errors.hpp"
#include "sliceadm/oracle.hpp"
#include "sliceadm/simulator.hpp"

using namespace sliceadm;
using sliceadm::testing::units;
namespace ref = sliceadm::testing::ref;

TEST_SUITE("oracle") {

TEST_CASE("no arrivals: the value is the pool's own revenue annuity") {
  auto in = testing::toy1({.horizon = 5});
  in.demand = RequestDistribution::null_only(in.catalog);
  const auto p = dp_solve(in);
  CHECK(p.v0() == doctest::Approx(4.0 * annuity_factor(0.9, 5)).epsilon(1e-12));
}

TEST_CASE("a lucrative bundle is accepted whenever it fits") {
  Instance in;
  in.space = ResourceSpace(1, 100);
  in.initial_pool = units({100});
  in.catalog = Catalog({{units({40}), 1, 100.0}});
  in.demand = RequestDistribution(in.catalog, {0.7}, 0.3);
  in.econ = EconomicParams{0.9, {0.0}};
  in.horizon = 5;
  in.validate();
  const auto p = dp_solve(in);
  for (const auto& [key, take] : p.decisions()) {
    CHECK(key.bundle.fits_within(key.state.idle_pool));
    CHECK(take);
  }
}

TEST_CASE("toy value at two periods") {
  const auto in = testing::toy1();
  const auto p = dp_solve(in);
  // 0.5 (4 + 0.9*4.24) + 0.3 (3.8 + 2.4 + 0.9*2.64) + 0.2 (5.7 + 1.6 + 0.9*1.72)
  CHECK(p.v0() == doctest::Approx(8.2504).epsilon(1e-12));
  CHECK(p.v0() == doctest::Approx(ref::dp_value(ref::from_instance(in))).epsilon(1e-12));
  const auto oc = make_oc_optimal(in, {.method = OcMethod::closed_form_two_step});
  const auto e = evaluate(in, {{"oc", oc}}, 2000, 5);
  CHECK(e.strategies[0].mean <= p.v0() + 4.0 * sample_stats(e.strategies[0].profits).std_error);
}

TEST_CASE("the DP agrees with an independent recursion") {
  std::mt19937_64 rng(808);
  for (const auto mode : {ContractMode::non_expiring, ContractMode::expiring}) {
    for (int k = 0; k < 30; ++k) {
      const int horizon = std::uniform_int_distribution<int>(1, 5)(rng);
      const auto in = testing::random_instance(rng, {.horizon = horizon, .mode = mode});
      const auto p = dp_solve(in);
      CHECK(p.v0() == doctest::Approx(ref::dp_value(ref::from_instance(in))).epsilon(1e-12));
    }
  }
}

TEST_CASE("Bellman consistency at stored states") {
  std::mt19937_64 rng(909);
  const auto in = testing::random_instance(rng, {.horizon = 5, .mode = ContractMode::expiring});
  const auto p = dp_solve(in);
  int checked = 0;
  for (const auto& [key, v] : p.values()) {
    if (checked >= 100) break;
    if (key.time >= in.horizon) {
      CHECK(v == 0.0);
      continue;
    }
    const auto s = canonical_state(in, key);
    const double q_idle = own_revenue(s.idle_pool(), in.econ, in.space);
    auto next_value = [&](MarketState n) {
      n.advance();
      n.release_expired();
      if (n.time() >= in.horizon) return 0.0;
      return p.value(make_state_key(in, n));
    };
    const double decline = q_idle + in.econ.beta * next_value(s);
    double expect = 0.0;
    for (const auto& o : request_outcomes(in, key.time)) {
      double best = decline;
      if (admissibility(in, s, o.request) == Admissibility::admissible) {
        const auto terms = contract_terms(in, o.request);
        MarketState a = s;
        a.admit(ActiveContract{s.time(), terms.period, o.request.bundle, terms.payment});
        const double accept = terms.payment * annuity_factor(in.econ.beta, terms.period) +
                              own_revenue(a.idle_pool(), in.econ, in.space) +
                              in.econ.beta * next_value(a);
        best = std::max(best, accept);
        CHECK(*p.accepts(make_oc_key(in, s, o.request)) == (accept >= decline));
      }
      expect += o.probability * best;
    }
    CHECK(v == doctest::Approx(expect).epsilon(1e-9));
    ++checked;
  }
  CHECK(checked > 10);
}

TEST_CASE("budgets") {
  const auto ex = testing::toy1({.horizon = 7, .mode = ContractMode::expiring});
  CHECK_THROWS_AS(dp_solve(ex), BudgetExceeded);
  const auto in = testing::toy1({.horizon = 8});
  CHECK_THROWS_AS(dp_solve(in, {.state_budget = 5}), BudgetExceeded);
}

TEST_CASE("two-step enumeration on the toy market") {
  const auto in = testing::toy1();
  const auto b = two_step_enumerate(in, units({60}));
  CHECK(b.closed_form_payoff == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(b.paper_policy.accept == doctest::Approx(8.848).epsilon(1e-12));
  CHECK(b.paper_policy.decline == doctest::Approx(7.816).epsilon(1e-12));
  CHECK(b.paper_policy.difference() == doctest::Approx(1.032).epsilon(1e-12));
  // Prices exceed own revenue for every bundle, so at t=1 accepting all that
  // fits is also optimal here.
  CHECK(b.optimal_policy.difference() == doctest::Approx(1.032).epsilon(1e-12));
  const auto a = two_step_enumerate(in, units({40}));
  CHECK(a.paper_policy.difference() == doctest::Approx(0.76).epsilon(1e-12));
  const auto n = two_step_enumerate(in, units({0}));
  CHECK(n.paper_policy.accept == n.paper_policy.decline);
  CHECK(n.optimal_policy.accept == n.optimal_policy.decline);
}

TEST_CASE("two-step enumeration without arrivals") {
  auto in = testing::toy1();
  in.demand = RequestDistribution::null_only(in.catalog);
  const auto b = two_step_enumerate(in, units({60}));
  CHECK(b.paper_policy.difference() == doctest::Approx(1.9 * (3.0 - 2.4)).epsilon(1e-12));
  CHECK(b.optimal_policy.difference() == doctest::Approx(1.9 * (3.0 - 2.4)).epsilon(1e-12));
  const auto three = testing::toy1({.horizon = 3});
  CHECK_THROWS_AS(two_step_enumerate(three, units({60})), InvalidModel);
  CHECK_THROWS_AS(two_step_enumerate(in, units({70})), UnknownBundle);
}

TEST_CASE("when own revenue beats a price the paper's t=1 rule loses value") {
  // Cheap A at one period: the optimal policy declines it at t=1.
  Instance in;
  in.space = ResourceSpace(1, 100);
  in.initial_pool = units({100});
  in.catalog = Catalog({{units({40}), 1, 1.0}, {units({40}), 2, 2.0}, {units({60}), 2, 3.0}});
  in.demand = RequestDistribution(in.catalog, {0.3, 0.0, 0.2}, 0.5);
  in.econ = EconomicParams{0.9, {4.0}};
  in.horizon = 2;
  in.validate();
  const auto b = two_step_enumerate(in, units({60}));
  CHECK(b.optimal_policy.accept >= b.paper_policy.accept);
  CHECK(b.optimal_policy.decline > b.paper_policy.decline);
}

}
