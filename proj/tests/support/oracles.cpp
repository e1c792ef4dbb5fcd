#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

namespace sliceadm::testing::ref {

namespace {

bool fits(const Units& b, const Units& pool) {
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i] > pool[i]) return false;
  return true;
}

Units minus(Units a, const Units& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

Units plus(Units a, const Units& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

std::vector<Units> distinct_bundles(const Model& m) {
  std::vector<Units> out;
  for (const auto& o : m.offers)
    if (std::find(out.begin(), out.end(), o.bundle) == out.end()) out.push_back(o.bundle);
  return out;
}

double g(const Model& m, const Units& b) {
  double p = 0.0;
  for (const auto& o : m.offers)
    if (o.bundle == b) p += o.probability;
  return p;
}

bool is_null(const Units& b) {
  return std::all_of(b.begin(), b.end(), [](int x) { return x == 0; });
}

// Feasible non-null bundles; the null bundle is handled inside f.
std::vector<Units> feasible(const Model& m, const Units& pool) {
  std::vector<Units> out;
  for (const auto& b : distinct_bundles(m))
    if (fits(b, pool)) out.push_back(b);
  return out;
}

double blocking(const Model& m, const Units& pool, const Units& cand, int pay_period) {
  const auto now = feasible(m, pool);
  std::vector<Units> cf;
  for (const auto& b : distinct_bundles(m))
    if (fits(plus(b, cand), pool)) cf.push_back(b);
  double total = 0.0;
  for (const auto& b : now) total += (f(m, b, now) - f(m, b, cf)) * horizon_price(m, b, pay_period);
  return total;
}

void release(Ledger& ledger, Units& pool, int t) {
  for (auto it = ledger.begin(); it != ledger.end();) {
    if (it->first <= t) {
      pool = plus(pool, it->second);
      it = ledger.erase(it);
    } else {
      ++it;
    }
  }
}

struct Walker {
  const Model& m;
  int t;
  Units cand;
  int t_eff;
  const Policy& policy;
  PaymentVariant variant;

  double walk(int tau, Units pool, Ledger ledger) const {
    release(ledger, pool, tau);
    double here = 0.0;
    if (tau < t + t_eff) {
      int pay = t_eff;
      if (variant == PaymentVariant::remaining_horizon) pay = std::min(t_eff, m.horizon - tau);
      here = std::pow(m.beta, tau - t + 1) * blocking(m, pool, cand, pay);
    }
    if (tau == m.horizon - 1) return here;
    if (tau == t) return here + walk(tau + 1, pool, ledger);

    double future = m.p_null * walk(tau + 1, pool, ledger);
    for (const auto& o : m.offers) {
      if (o.probability == 0.0) continue;
      const int period = m.expiring ? o.period : m.horizon - tau;
      const bool admissible = fits(o.bundle, pool) && (!m.expiring || tau + period <= m.horizon);
      if (admissible && policy(tau, pool, o.bundle, period)) {
        Ledger next = ledger;
        next.emplace_back(tau + period, o.bundle);
        future += o.probability * walk(tau + 1, minus(pool, o.bundle), next);
      } else {
        future += o.probability * walk(tau + 1, pool, ledger);
      }
    }
    return here + future;
  }
};

}  // namespace

Model from_instance(const Instance& in) {
  Model m;
  m.resolution = in.space.resolution();
  m.pool0.assign(in.initial_pool.units().begin(), in.initial_pool.units().end());
  const auto probs = in.demand.entry_probabilities();
  for (std::size_t i = 0; i < in.catalog.entries().size(); ++i) {
    const auto& e = in.catalog.entries()[i];
    m.offers.push_back({Units(e.bundle.units().begin(), e.bundle.units().end()), e.period, e.payment,
                        probs[i]});
  }
  m.p_null = in.demand.null_probability();
  m.beta = in.econ.beta;
  m.rates = in.econ.own_revenue_rates;
  m.expiring = in.mode == ContractMode::expiring;
  m.horizon = in.horizon;
  return m;
}

double own(const Model& m, const Units& b) {
  double q = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) q += m.rates[i] * b[i] / m.resolution;
  return q;
}

double annuity(const Model& m, int periods) {
  return (1.0 - std::pow(m.beta, periods)) / (1.0 - m.beta);
}

double horizon_price(const Model& m, const Units& b, int period) {
  if (is_null(b)) return 0.0;
  const Offer* exact = nullptr;
  const Offer* below = nullptr;
  const Offer* shortest = nullptr;
  for (const auto& o : m.offers) {
    if (o.bundle != b) continue;
    if (o.period == period) exact = &o;
    if (o.period <= period && (!below || o.period > below->period)) below = &o;
    if (!shortest || o.period < shortest->period) shortest = &o;
  }
  if (exact) return exact->payment;
  if (below) return below->payment;
  return shortest->payment;
}

double f(const Model& m, const Units& b, const std::vector<Units>& feasible_bundles) {
  const bool in = std::find(feasible_bundles.begin(), feasible_bundles.end(), b) != feasible_bundles.end();
  if (!is_null(b)) return in ? g(m, b) : 0.0;
  double mass = m.p_null;
  for (const auto& w : distinct_bundles(m))
    if (std::find(feasible_bundles.begin(), feasible_bundles.end(), w) == feasible_bundles.end())
      mass += g(m, w);
  return mass;
}

double oc_two_step(const Model& m, const Units& pool, const Units& b) {
  const auto all = feasible(m, pool);
  const auto after = feasible(m, minus(pool, b));
  double sum = 0.0;
  for (const auto& w : all) sum += (f(m, w, all) - f(m, w, after)) * horizon_price(m, w, 1);
  return (1.0 + m.beta) * own(m, b) + m.beta * sum;
}

double payoff_two_step(const Model& m, const Units& pool, const Units& b) {
  return (1.0 + m.beta) * horizon_price(m, b, 2) - oc_two_step(m, pool, b);
}

bool accept_all(int, const Units&, const Units&, int) { return true; }

double oc_enumerate(const Model& m, int t, const Units& pool, const Ledger& ledger, const Units& b,
                    int period, const Policy& policy, PaymentVariant variant) {
  if (is_null(b)) return 0.0;
  const int t_eff = m.expiring ? period : m.horizon - t;
  const Walker w{m, t, b, t_eff, policy, variant};
  return own(m, b) * annuity(m, t_eff) + w.walk(t, pool, ledger);
}

double dp_value(const Model& m) {
  using Key = std::tuple<int, Units, Ledger>;
  std::map<Key, double> memo;
  std::function<double(int, Units, Ledger)> V = [&](int t, Units pool, Ledger ledger) -> double {
    if (t >= m.horizon) return 0.0;
    release(ledger, pool, t);
    std::sort(ledger.begin(), ledger.end());
    const Key key{t, pool, ledger};
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const double decline = own(m, pool) + m.beta * V(t + 1, pool, ledger);
    double value = m.p_null * decline;
    for (const auto& o : m.offers) {
      if (o.probability == 0.0) continue;
      const int period = m.expiring ? o.period : m.horizon - t;
      double best = decline;
      if (fits(o.bundle, pool) && (!m.expiring || t + period <= m.horizon)) {
        const double pay = m.expiring ? o.payment : horizon_price(m, o.bundle, period);
        Ledger next = ledger;
        next.emplace_back(t + period, o.bundle);
        const Units left = minus(pool, o.bundle);
        best = std::max(best, pay * annuity(m, period) + own(m, left) + m.beta * V(t + 1, left, next));
      }
      value += o.probability * best;
    }
    memo.emplace(key, value);
    return value;
  };
  return V(0, m.pool0, {});
}

}  // namespace sliceadm::testing::ref
