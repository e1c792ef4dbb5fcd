#include "sliceadm/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>

#include "sliceadm/economics.hpp"
#include "sliceadm/errors.hpp"

namespace sliceadm {

std::string_view to_string(EventKind k) {
  switch (k) {
    case EventKind::request_arrival: return "request-arrival";
    case EventKind::accept: return "accept";
    case EventKind::decline: return "decline";
    case EventKind::expiry: return "expiry";
    case EventKind::period_income: return "period-income";
  }
  return "?";
}

namespace {

void push_expiries(std::vector<TraceEvent>& events, const MarketState& s,
                   const std::vector<ActiveContract>& released) {
  for (const auto& c : released) {
    events.push_back(TraceEvent{s.time(), EventKind::expiry, c.bundle, c.period, c.payment,
                                s.idle_pool(), s.reserved()});
  }
}

}  // namespace

StepResult step(const Instance& instance, const MarketState& state, const Request& request,
                const Strategy& strategy) {
  StepResult out;
  MarketState s = state;
  push_expiries(out.events, s, s.release_expired());

  const int t = s.time();
  out.events.push_back(TraceEvent{t, EventKind::request_arrival, request.bundle, request.period,
                                  0.0, s.idle_pool(), s.reserved()});

  DecisionResult d = decide(strategy, instance, s, request);
  out.decision = d.decision;
  s = std::move(d.state);
  if (d.decision == Decision::accept) {
    const auto& c = s.ledger().back();
    out.events.push_back(TraceEvent{t, EventKind::accept, c.bundle, c.period, c.payment,
                                    s.idle_pool(), s.reserved()});
  } else {
    out.events.push_back(TraceEvent{t, EventKind::decline, request.bundle, request.period, 0.0,
                                    s.idle_pool(), s.reserved(), d.admissibility});
  }

  out.tenant_income = s.active_payments();
  out.own_income = own_revenue(s.idle_pool(), instance.econ, instance.space);
  out.events.push_back(TraceEvent{t, EventKind::period_income, ResourceVector::zero(s.idle_pool().dimension()),
                                  0, out.tenant_income, s.idle_pool(), s.reserved()});

  s.advance();
  // Contracts that run to the horizon close with the market; non-expiring
  // contracts therefore never show an expiry.
  if (s.time() < instance.horizon) push_expiries(out.events, s, s.release_expired());
  out.state = std::move(s);
  return out;
}

namespace {

RunOutcome run_with(const Instance& instance, const Strategy& strategy,
                    const std::function<Request(int)>& request_at, bool keep_trace) {
  if (instance.horizon < 1) throw InvalidModel("t_max must be >= 1");
  RunOutcome out;
  RunResult& r = out.result;
  MarketState s = instance.initial_state();
  double discount = 1.0;
  for (int t = 0; t < instance.horizon; ++t) {
    const Request request = request_at(t);
    StepResult st = step(instance, s, request, strategy);
    r.payments_pv += discount * st.tenant_income;
    r.own_revenue_pv += discount * st.own_income;
    if (!request.is_null()) {
      ++r.requests;
      if (st.decision == Decision::accept) {
        ++r.accepted;
      } else {
        ++r.declined;
        const auto reason = admissibility(instance, s, request);
        if (reason == Admissibility::infeasible) ++r.declined_infeasible;
        if (reason == Admissibility::overhang) ++r.declined_overhang;
      }
    }
    if (keep_trace) {
      out.trace.insert(out.trace.end(), st.events.begin(), st.events.end());
    }
    s = std::move(st.state);
    discount *= instance.econ.beta;
  }
  r.profit = r.payments_pv + r.own_revenue_pv;
  r.final_state = std::move(s);
  return out;
}

}  // namespace

RunOutcome run(const Instance& instance, const Strategy& strategy, const RandomStream& stream,
               bool keep_trace) {
  return run_with(
      instance, strategy, [&](int t) { return sample_request(instance.demand, t, stream); },
      keep_trace);
}

RunOutcome run_scripted(const Instance& instance, const Strategy& strategy,
                        std::span<const Request> requests, bool keep_trace) {
  const std::size_t dim = instance.space.dimension();
  return run_with(
      instance, strategy,
      [&](int t) {
        for (const auto& r : requests) {
          if (r.arrival_time == t) return r;
        }
        return Request::null_at(t, dim);
      },
      keep_trace);
}

double profit_from_trace(const Instance& instance, std::span<const TraceEvent> trace) {
  double total = 0.0;
  for (const auto& e : trace) {
    if (e.kind != EventKind::period_income) continue;
    const double q = own_revenue(e.idle_pool, instance.econ, instance.space);
    total += std::pow(instance.econ.beta, e.time) * (e.payment + q);
  }
  return total;
}

SampleStats sample_stats(std::span<const double> values) {
  constexpr double kZ95 = 1.959963984540054;
  SampleStats s;
  const auto n = static_cast<double>(values.size());
  if (values.empty()) return s;
  s.mean = pairwise_sum(values) / n;
  if (values.size() > 1) {
    std::vector<double> sq(values.size());
    std::transform(values.begin(), values.end(), sq.begin(),
                   [m = s.mean](double x) { return (x - m) * (x - m); });
    s.stddev = std::sqrt(pairwise_sum(sq) / (n - 1.0));
    s.std_error = s.stddev / std::sqrt(n);
    s.half_width = kZ95 * s.std_error;
  }
  return s;
}

EvaluationReport evaluate(const Instance& instance, const std::vector<NamedStrategy>& strategies,
                          std::int64_t n_runs, std::uint64_t seed, unsigned threads) {
  if (n_runs < 2) throw InvalidModel("evaluation needs n_runs >= 2");
  if (strategies.empty()) throw InvalidModel("evaluation needs at least one strategy");

  const auto runs = static_cast<std::size_t>(n_runs);
  std::vector<std::vector<double>> profits(strategies.size(), std::vector<double>(runs));

  auto worker = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t r = begin; r < runs; r += stride) {
      const RandomStream stream(seed, r);
      for (std::size_t k = 0; k < strategies.size(); ++k) {
        profits[k][r] = run(instance, strategies[k].strategy, stream, false).result.profit;
      }
    }
  };
  const unsigned n_threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(runs)));
  if (n_threads == 1) {
    worker(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker, i, n_threads);
  }

  EvaluationReport report;
  report.n_runs = n_runs;
  report.seed = seed;
  for (std::size_t k = 0; k < strategies.size(); ++k) {
    const auto st = sample_stats(profits[k]);
    report.strategies.push_back(StrategySummary{strategies[k].name, profits[k], st.mean, st.stddev,
                                                st.mean - st.half_width, st.mean + st.half_width});
  }
  for (std::size_t a = 0; a < strategies.size(); ++a) {
    for (std::size_t b = a + 1; b < strategies.size(); ++b) {
      PairwiseDifference d{a, b, 0.0, 0.0, std::vector<double>(runs)};
      for (std::size_t r = 0; r < runs; ++r) d.per_run[r] = profits[a][r] - profits[b][r];
      const auto st = sample_stats(d.per_run);
      d.mean = st.mean;
      d.std_error = st.std_error;
      report.pairwise.push_back(std::move(d));
    }
  }
  return report;
}

}  // namespace sliceadm
