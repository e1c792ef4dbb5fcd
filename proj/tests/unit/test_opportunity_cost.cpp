#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "sliceadm/economics.hpp"
#include "sliceadm/errors.hpp"
#include "sliceadm/opportunity_cost.hpp"

using namespace sliceadm;
using sliceadm::testing::units;
namespace ref = sliceadm::testing::ref;

namespace {

bool always(const MarketState&, const Request&) { return true; }

ref::Units raw(const ResourceVector& v) { return {v.units().begin(), v.units().end()}; }

ref::Ledger raw_ledger(const MarketState& s) {
  ref::Ledger out;
  for (const auto& c : s.ledger()) out.emplace_back(c.end(), raw(c.bundle));
  return out;
}

// Accepts when the contracted payment reaches `x` and the first resource
// still has at least `k` idle units. The same rule in both vocabularies.
RolloutPolicy lib_rule(const Instance& in, double x, int k) {
  return [&in, x, k](const MarketState& s, const Request& r) {
    return contract_terms(in, r).payment >= x && s.idle_pool()[0] >= k;
  };
}
ref::Policy ref_rule(const ref::Model& m, double x, int k) {
  return [&m, x, k](int, const ref::Units& pool, const ref::Units& b, int period) {
    return ref::horizon_price(m, b, period) >= x && pool[0] >= k;
  };
}

double rel(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace

TEST_SUITE("opportunity-cost") {

TEST_CASE("two-step toy values") {
  const auto in = testing::toy1();
  CHECK(oc_two_step(in, units({100}), units({60})) == doctest::Approx(5.1).epsilon(1e-12));
  CHECK(oc_two_step(in, units({100}), units({40})) == doctest::Approx(3.04).epsilon(1e-12));
  CHECK(oc_two_step(in, units({100}), units({0})) == 0.0);
  CHECK(payoff_two_step(in, units({100}), units({60})) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(payoff_two_step(in, units({100}), units({40})) == doctest::Approx(0.76).epsilon(1e-12));
  const auto rich = testing::toy1({.own_rate = 10.0});
  CHECK(payoff_two_step(rich, units({100}), units({60})) == doctest::Approx(-6.24).epsilon(1e-12));
  CHECK_THROWS_AS(oc_two_step(in, units({50}), units({60})), InfeasibleRequest);
}

TEST_CASE("two-step closed form agrees with the reference on random instances") {
  std::mt19937_64 rng(101);
  for (int k = 0; k < 100; ++k) {
    const auto in = testing::random_instance(rng);
    const auto m = ref::from_instance(in);
    const auto pool = testing::random_state(in, rng, 0).idle_pool();
    for (const auto& b : feasible_set(pool, in.catalog)) {
      CHECK(rel(oc_two_step(in, pool, b), ref::oc_two_step(m, raw(pool), raw(b))) <= 1e-12);
      CHECK(rel(payoff_two_step(in, pool, b), ref::payoff_two_step(m, raw(pool), raw(b))) <= 1e-12);
    }
  }
}

TEST_CASE("enumeration at t_max=2 follows the general formula, not the closed form") {
  // The general formula charges blocking in both remaining periods at the
  // two-period price; the closed form charges one period at p(w,1).
  const auto in = testing::toy1();
  const Request r{0, units({60}), 2};
  const double general = oc_exact_enumeration(in, in.initial_state(), r, always);
  CHECK(general == doctest::Approx(4.56 + 0.9 * 0.6 + 0.81 * 0.6).epsilon(1e-12));
  CHECK(general == doctest::Approx(5.586).epsilon(1e-12));
  const auto m = ref::from_instance(in);
  CHECK(rel(general, ref::oc_enumerate(m, 0, {100}, {}, {60}, 2, ref::accept_all,
                                       PaymentVariant::literal)) <= 1e-12);
  CHECK(oc_two_step(in, units({100}), units({60})) == doctest::Approx(5.1).epsilon(1e-12));
}

TEST_CASE("without arrivals the opportunity cost is the own-revenue present value") {
  auto in = testing::toy1({.horizon = 3});
  in.demand = RequestDistribution::null_only(in.catalog);
  const Request a{0, units({40}), 3};
  CHECK(oc_exact_enumeration(in, in.initial_state(), a, always) ==
        doctest::Approx(4.336).epsilon(1e-12));
  auto ex = testing::toy1({.horizon = 3, .mode = ContractMode::expiring});
  ex.demand = RequestDistribution::null_only(ex.catalog);
  const Request b{0, units({60}), 2};
  CHECK(oc_exact_enumeration(ex, ex.initial_state(), b, always) ==
        doctest::Approx(pv_own_revenue(units({60}), 2, ex.econ, ex.space)).epsilon(1e-12));
  const auto mc = oc_monte_carlo(ex, ex.initial_state(), b, always, 50, RandomStream(1, 1));
  CHECK(mc.value == doctest::Approx(4.56).epsilon(1e-12));
  CHECK(mc.std_error == 0.0);
}

TEST_CASE("enumeration agrees with the brute-force reference") {
  std::mt19937_64 rng(202);
  for (const auto mode : {ContractMode::non_expiring, ContractMode::expiring}) {
    for (int k = 0; k < 40; ++k) {
      const int horizon = std::uniform_int_distribution<int>(2, 4)(rng);
      const auto in = testing::random_instance(
          rng, {.max_bundles = 3, .horizon = horizon, .mode = mode});
      const auto m = ref::from_instance(in);
      const int t = std::uniform_int_distribution<int>(0, horizon - 1)(rng);
      const auto state = testing::random_state(in, rng, t);
      const double x = std::uniform_real_distribution<double>(0.0, 4.0)(rng);
      const int kmin = std::uniform_int_distribution<int>(0, 6)(rng);
      const auto lib_policy = lib_rule(in, x, kmin);
      const auto ref_policy = ref_rule(m, x, kmin);
      for (const auto& e : in.catalog.entries()) {
        if (!e.bundle.fits_within(state.idle_pool())) continue;
        if (mode == ContractMode::expiring && t + e.period > horizon) continue;
        const Request r{t, e.bundle, e.period};
        for (const auto v : {PaymentVariant::literal, PaymentVariant::remaining_horizon}) {
          const double lib = oc_exact_enumeration(in, state, r, lib_policy, {v});
          const double want = ref::oc_enumerate(m, t, raw(state.idle_pool()), raw_ledger(state),
                                                raw(e.bundle), e.period, ref_policy, v);
          CHECK(rel(lib, want) <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("payment variants coincide when only one period is blocked") {
  const auto in = testing::toy1();
  MarketState s(units({100}), 1);
  const Request r{1, units({40}), 1};
  CHECK(oc_exact_enumeration(in, s, r, always, {PaymentVariant::literal}) ==
        oc_exact_enumeration(in, s, r, always, {PaymentVariant::remaining_horizon}));
}

TEST_CASE("enumeration refuses outcome trees over budget") {
  const auto in = testing::toy1({.horizon = 12});
  const Request r{0, units({40}), 1};
  CHECK_THROWS_AS(oc_exact_enumeration(in, in.initial_state(), r, always, {.leaf_budget = 1000}),
                  BudgetExceeded);
}

TEST_CASE("infeasible and mistimed requests are rejected") {
  const auto in = testing::toy1({.horizon = 3});
  MarketState s(units({100}));
  s.admit(ActiveContract{0, 3, units({60}), 3.0});
  CHECK_THROWS_AS(oc_exact_enumeration(in, s, Request{0, units({60}), 3}, always), InfeasibleRequest);
  CHECK_THROWS_AS(oc_monte_carlo(in, s, Request{0, units({60}), 3}, always, 10, RandomStream(1, 2)),
                  InfeasibleRequest);
  CHECK_THROWS_AS(oc_exact_enumeration(in, s, Request{1, units({40}), 3}, always), InvalidModel);
}

TEST_CASE("Monte Carlo matches enumeration on the toy market") {
  const auto in = testing::toy1();
  const Request r{0, units({60}), 2};
  const double exact = oc_exact_enumeration(in, in.initial_state(), r, always);
  const auto mc = oc_monte_carlo(in, in.initial_state(), r, always, 100000, RandomStream(42, 0));
  CHECK(mc.sample_count == 100000);
  CHECK(mc.method == OcMethod::monte_carlo);
  CHECK(std::abs(mc.value - exact) <= 4.0 * mc.std_error + 1e-9 * std::abs(exact));

  const auto longer = testing::toy1({.horizon = 4});
  const double exact4 = oc_exact_enumeration(longer, longer.initial_state(), Request{0, units({40}), 4}, always);
  const auto mc4 = oc_monte_carlo(longer, longer.initial_state(), Request{0, units({40}), 4}, always,
                                  100000, RandomStream(42, 1));
  CHECK(mc4.std_error > 0.0);
  CHECK(std::abs(mc4.value - exact4) <= 4.0 * mc4.std_error);
}

TEST_CASE("Monte Carlo is deterministic for a fixed stream") {
  const auto in = testing::toy1({.horizon = 5});
  const Request r{0, units({40}), 5};
  for (const std::int64_t n : {1, 1000}) {
    const auto a = oc_monte_carlo(in, in.initial_state(), r, always, n, RandomStream(8, 8));
    const auto b = oc_monte_carlo(in, in.initial_state(), r, always, n, RandomStream(8, 8));
    CHECK(a == b);
    CHECK(a.sample_count == n);
  }
  CHECK_THROWS_AS(oc_monte_carlo(in, in.initial_state(), r, always, 0, RandomStream(8, 8)), InvalidModel);
}

TEST_CASE("the null request costs nothing") {
  const auto in = testing::toy1({.horizon = 4});
  const auto null = Request::null_at(0, 1);
  CHECK(oc_exact_enumeration(in, in.initial_state(), null, always) == 0.0);
  const auto mc = oc_monte_carlo(in, in.initial_state(), null, always, 100, RandomStream(1, 1));
  CHECK(mc.value == 0.0);
  CHECK(mc.std_error == 0.0);
  CHECK(payoff(in, null, 0.0) == 0.0);
}

TEST_CASE("payoff against a given opportunity cost") {
  const auto in = testing::toy1();
  CHECK(payoff(in, Request{0, units({60}), 2}, 5.1) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(payoff(in, Request{0, units({60}), 2}, 10.0) < 0.0);
  const auto ex = testing::toy1({.horizon = 4, .mode = ContractMode::expiring});
  CHECK(payoff(ex, Request{1, units({40}), 3}, 0.0) == doctest::Approx(5.42).epsilon(1e-12));
}

TEST_CASE("blocking never shrinks when the candidate grows") {
  std::mt19937_64 rng(303);
  for (int k = 0; k < 300; ++k) {
    const auto in = testing::random_instance(rng);
    const auto pool = testing::random_state(in, rng, 0).idle_pool();
    const auto fits = feasible_set(pool, in.catalog);
    for (const auto& small : fits)
      for (const auto& big : fits)
        if (small.fits_within(big))
          for (int period : {1, 2})
            CHECK(blocking_term(in, pool, big, period) >= blocking_term(in, pool, small, period) - 1e-12);
  }
}

TEST_CASE("opportunity cost stays below the crude bound") {
  std::mt19937_64 rng(404);
  for (int k = 0; k < 60; ++k) {
    const auto in = testing::random_instance(rng, {.horizon = 4});
    const auto s = in.initial_state();
    for (const auto& r : request_outcomes(in, 0)) {
      if (r.request.is_null() || !r.request.bundle.fits_within(s.idle_pool())) continue;
      const double oc = oc_exact_enumeration(in, s, r.request, always);
      double bound = pv_own_revenue(r.request.bundle, in.horizon, in.econ, in.space);
      for (int tau = 0; tau < in.horizon; ++tau) bound += std::pow(in.econ.beta, tau + 1) * in.catalog.max_payment();
      CHECK(oc <= bound + 1e-12);
    }
  }
}

TEST_CASE("method and variant names") {
  CHECK(to_string(OcMethod::closed_form_two_step) == "closed-form-2step");
  CHECK(parse_oc_method("monte-carlo") == OcMethod::monte_carlo);
  CHECK(parse_payment_variant("remaining-horizon") == PaymentVariant::remaining_horizon);
  CHECK_THROWS_AS(parse_oc_method("guess"), InvalidModel);
}

}
