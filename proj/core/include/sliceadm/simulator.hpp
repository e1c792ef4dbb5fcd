#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sliceadm/instance.hpp"
#include "sliceadm/strategy.hpp"

namespace sliceadm {

enum class EventKind { request_arrival, accept, decline, expiry, period_income };

std::string_view to_string(EventKind k);

/// One trace row. Within a period events appear as: expiries, arrival,
/// decision, period income. For period-income rows `payment` is the tenant
/// income of the period; own-slice revenue follows from `idle_pool`.
struct TraceEvent {
  int time = 0;
  EventKind kind = EventKind::request_arrival;
  ResourceVector bundle;
  int period = 0;
  double payment = 0.0;
  ResourceVector idle_pool;
  ResourceVector reserved;
  Admissibility reason = Admissibility::admissible;  // why a decline happened
};

struct StepResult {
  MarketState state;
  std::vector<TraceEvent> events;
  Decision decision = Decision::decline;
  double tenant_income = 0.0;  // undiscounted, this period
  double own_income = 0.0;     // q(idle pool after the decision)
};

/// Release contracts that ended, decide on `request`, book the period's
/// income and advance to the next period (releasing what ends there).
StepResult step(const Instance& instance, const MarketState& state, const Request& request,
                const Strategy& strategy);

struct RunResult {
  double profit = 0.0;
  double payments_pv = 0.0;
  double own_revenue_pv = 0.0;
  int requests = 0;  // non-null arrivals
  int accepted = 0;
  int declined = 0;  // non-null declines, any reason
  int declined_infeasible = 0;
  int declined_overhang = 0;
  MarketState final_state;
};

struct RunOutcome {
  RunResult result;
  std::vector<TraceEvent> trace;
};

/// Simulates periods 0..t_max-1 with requests drawn from the instance demand.
RunOutcome run(const Instance& instance, const Strategy& strategy, const RandomStream& stream,
               bool keep_trace = true);

/// Same with a scripted request list; periods without a scripted request
/// see the null request.
RunOutcome run_scripted(const Instance& instance, const Strategy& strategy,
                        std::span<const Request> requests, bool keep_trace = true);

/// Profit rebuilt from the period-income rows of a trace.
double profit_from_trace(const Instance& instance, std::span<const TraceEvent> trace);

struct NamedStrategy {
  std::string name;
  Strategy strategy;
};

struct StrategySummary {
  std::string name;
  std::vector<double> profits;  // by run index
  double mean = 0.0;
  double stddev = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

struct PairwiseDifference {
  std::size_t first = 0;
  std::size_t second = 0;
  double mean = 0.0;        // mean of first - second
  double std_error = 0.0;   // paired
  std::vector<double> per_run;
};

struct EvaluationReport {
  std::int64_t n_runs = 0;
  std::uint64_t seed = 0;
  std::vector<StrategySummary> strategies;
  std::vector<PairwiseDifference> pairwise;
};

/// Runs every strategy on the same n_runs request streams (stream r is
/// RandomStream(seed, r)). Results do not depend on `threads`.
EvaluationReport evaluate(const Instance& instance, const std::vector<NamedStrategy>& strategies,
                          std::int64_t n_runs, std::uint64_t seed, unsigned threads = 1);

/// Sample mean, standard deviation and normal 95% interval half-width.
struct SampleStats {
  double mean = 0.0;
  double stddev = 0.0;
  double std_error = 0.0;
  double half_width = 0.0;
};
SampleStats sample_stats(std::span<const double> values);

}  // namespace sliceadm
