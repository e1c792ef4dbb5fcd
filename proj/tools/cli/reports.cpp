#include "cli/reports.hpp"

#include <cstdio>
#include <map>

namespace sliceadm::cli {

using nlohmann::json;

namespace {

std::string number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json units(const ResourceVector& v) { return std::vector<int>(v.units().begin(), v.units().end()); }

}  // namespace

json to_json(const Provenance& p) {
  return {{"config_hash", p.config_hash}, {"seed", p.seed}, {"version", p.version}};
}

void write_trace_csv(std::ostream& os, std::span<const TraceEvent> trace, const Provenance& p) {
  os << "# sliceadm " << p.version << " config_hash=" << p.config_hash << " seed=" << p.seed
     << '\n';
  os << kTraceHeader << '\n';
  for (const auto& e : trace) {
    os << e.time << ',' << to_string(e.kind) << ',' << format_units(e.bundle) << ',' << e.period
       << ',' << number(e.payment) << ',' << format_units(e.idle_pool) << ','
       << format_units(e.reserved) << '\n';
  }
}

json to_json(const RunResult& r, const Instance& instance) {
  json ledger = json::array();
  for (const auto& c : r.final_state.ledger()) {
    ledger.push_back({{"start", c.start},
                      {"period", c.period},
                      {"bundle", units(c.bundle)},
                      {"payment", c.payment}});
  }
  return {{"profit", r.profit},
          {"payments_pv", r.payments_pv},
          {"own_revenue_pv", r.own_revenue_pv},
          {"requests", r.requests},
          {"accepted", r.accepted},
          {"declined", r.declined},
          {"declined_infeasible", r.declined_infeasible},
          {"declined_overhang", r.declined_overhang},
          {"resolution", instance.space.resolution()},
          {"final_state",
           {{"time", r.final_state.time()},
            {"idle_pool", units(r.final_state.idle_pool())},
            {"reserved", units(r.final_state.reserved())},
            {"ledger", std::move(ledger)}}}};
}

json to_json(const EvaluationReport& report) {
  json strategies = json::array();
  for (const auto& s : report.strategies) {
    strategies.push_back({{"name", s.name},
                          {"mean", s.mean},
                          {"stddev", s.stddev},
                          {"ci95", {s.ci_low, s.ci_high}},
                          {"profits", s.profits}});
  }
  json pairwise = json::array();
  for (const auto& d : report.pairwise) {
    pairwise.push_back({{"first", report.strategies[d.first].name},
                        {"second", report.strategies[d.second].name},
                        {"mean_difference", d.mean},
                        {"paired_std_error", d.std_error}});
  }
  return {{"n_runs", report.n_runs},
          {"seed", report.seed},
          {"strategies", std::move(strategies)},
          {"pairwise", std::move(pairwise)}};
}

json oracle_report(const Instance& instance, const DpPolicy& policy,
                   const std::vector<OracleGap>& gaps) {
  std::map<int, std::pair<int, int>> per_time;  // t -> (accepts, declines)
  int accepts = 0;
  int declines = 0;
  for (const auto& [key, take] : policy.decisions()) {
    auto& slot = per_time[key.state.time];
    (take ? slot.first : slot.second)++;
    (take ? accepts : declines)++;
  }
  json by_time = json::array();
  for (const auto& [t, counts] : per_time) {
    by_time.push_back({{"t", t}, {"accept", counts.first}, {"decline", counts.second}});
  }

  const MarketState start = instance.initial_state();
  json initial = json::array();
  for (const auto& r : request_classes(instance)) {
    const auto decision = policy.accepts(make_oc_key(instance, start, r));
    initial.push_back({{"bundle", units(r.bundle)},
                       {"period", instance.mode == ContractMode::non_expiring ? instance.horizon : r.period},
                       {"accept", decision ? json(*decision) : json(nullptr)}});
  }

  json gap_rows = json::array();
  for (const auto& g : gaps) {
    gap_rows.push_back({{"strategy", g.strategy},
                        {"mean_profit", g.mean},
                        {"mean_ci95", {g.ci_low, g.ci_high}},
                        {"gap", policy.v0() - g.mean},
                        {"gap_ci95", {policy.v0() - g.ci_high, policy.v0() - g.ci_low}}});
  }
  return {{"V0", policy.v0()},
          {"state_count", policy.state_count()},
          {"policy_summary",
           {{"accept_decisions", accepts}, {"decline_decisions", declines}, {"by_time", std::move(by_time)}}},
          {"initial_accept_set", std::move(initial)},
          {"gaps", std::move(gap_rows)}};
}

}  // namespace sliceadm::cli
