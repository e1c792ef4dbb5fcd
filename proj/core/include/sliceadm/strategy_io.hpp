#pragma once

#include <optional>

#include <nlohmann/json.hpp>

#include "sliceadm/strategy.hpp"

namespace sliceadm {

inline constexpr const char* kStrategySchemaVersion = "1";

struct StrategyDocument {
  Strategy strategy;
  std::optional<ConvergenceReport> history;
};

/// Versioned JSON document. An oc-optimal strategy carries its table and,
/// nested under "base_strategy", the strategy the table was evaluated
/// under, so entries missing from the file can still be computed.
nlohmann::json serialize_strategy(const Strategy& strategy,
                                  const ConvergenceReport* history = nullptr);

/// Throws MalformedDocument or SchemaVersionError.
StrategyDocument deserialize_strategy(const nlohmann::json& document);

nlohmann::json to_json(const ConvergenceReport& report);
ConvergenceReport convergence_from_json(const nlohmann::json& j);

/// Deep structural equality, following table and base-strategy links.
bool equivalent(const Strategy& a, const Strategy& b);

}  // namespace sliceadm
