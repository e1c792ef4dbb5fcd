#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sliceadm/oracle.hpp"
#include "sliceadm/simulator.hpp"

namespace sliceadm::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Stamped into every output file.
struct Provenance {
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string version = kVersion;
};

nlohmann::json to_json(const Provenance& p);

inline constexpr const char* kTraceHeader = "t,event,bundle,period,payment,idle_pool,reserved";

/// A `#` provenance line, the header, then one row per event. Vector
/// fields are `/`-joined lattice units.
void write_trace_csv(std::ostream& os, std::span<const TraceEvent> trace, const Provenance& p);

nlohmann::json to_json(const RunResult& result, const Instance& instance);
nlohmann::json to_json(const EvaluationReport& report);

struct OracleGap {
  std::string strategy;
  double mean = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

nlohmann::json oracle_report(const Instance& instance, const DpPolicy& policy,
                             const std::vector<OracleGap>& gaps);

}  // namespace sliceadm::cli
